#pragma once

#include <stdexcept>
#include <string>

namespace bpp {

/// Bad input: a violated precondition, malformed file, or out-of-range parameter.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// An operation was well-formed but could not be carried out (e.g. no peer exists).
class RuntimeError : public std::runtime_error {
 public:
  explicit RuntimeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bpp
