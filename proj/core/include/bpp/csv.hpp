#pragma once

// Minimal comma-separated reader for the numeric fixture formats used by the toolkit.

#include <cstddef>
#include <string>
#include <vector>

namespace bpp {

struct CsvRow {
  std::size_t line = 0;  ///< 1-based line number in the source
  std::vector<std::string> fields;
};

/// Splits every non-blank line on commas, trimming whitespace. Lines starting with '#' are skipped.
/// Throws RuntimeError if the file cannot be opened.
std::vector<CsvRow> read_csv(const std::string& path);

/// True if the first field does not parse as a number, i.e. the row looks like a header.
bool looks_like_header(const CsvRow& row);

/// Parse helpers; failures throw ValidationError mentioning `where` (e.g. "file.csv:3").
long long parse_integer(const std::string& field, const std::string& where);
double parse_real(const std::string& field, const std::string& where);

std::string location(const std::string& path, std::size_t line);

}  // namespace bpp
