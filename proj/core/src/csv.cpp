#include "bpp/csv.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bpp/errors.hpp"

namespace bpp {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::vector<CsvRow> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RuntimeError("cannot open " + path);
  std::vector<CsvRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    CsvRow row;
    row.line = line_no;
    std::stringstream ss(t);
    std::string field;
    while (std::getline(ss, field, ',')) row.fields.push_back(trim(field));
    if (t.back() == ',') row.fields.emplace_back();
    rows.push_back(std::move(row));
  }
  if (in.bad()) throw RuntimeError("read error on " + path);
  return rows;
}

bool looks_like_header(const CsvRow& row) {
  if (row.fields.empty()) return false;
  const std::string& f = row.fields.front();
  char* end = nullptr;
  std::strtod(f.c_str(), &end);
  return f.empty() || end == f.c_str() || *end != '\0';
}

long long parse_integer(const std::string& field, const std::string& where) {
  char* end = nullptr;
  errno = 0;
  const long long v = std::strtoll(field.c_str(), &end, 10);
  if (field.empty() || *end != '\0' || errno == ERANGE) throw ValidationError(where + ": not an integer: '" + field + "'");
  return v;
}

double parse_real(const std::string& field, const std::string& where) {
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(field.c_str(), &end);
  if (field.empty() || *end != '\0' || errno == ERANGE) throw ValidationError(where + ": not a number: '" + field + "'");
  return v;
}

std::string location(const std::string& path, std::size_t line) { return path + ":" + std::to_string(line); }

}  // namespace bpp
