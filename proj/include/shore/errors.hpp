#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shore {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Operand dimensions do not conform.
class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& msg) : Error(msg) {}
};

// A scalar argument is outside its documented domain.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// A factorization hit a non-positive pivot; carries the pivot index.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& msg, std::size_t pivot)
      : Error(msg), pivot_index(pivot) {}
  std::size_t pivot_index;
};

// A text input failed to parse; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line)
      : Error(msg + " (line " + std::to_string(line) + ")"), line_number(line) {}
  std::size_t line_number;
};

// A file is structurally inconsistent (e.g. header disagrees with records).
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& msg) : Error(msg) {}
};

// A configuration file contains an unknown or invalid key.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace shore
