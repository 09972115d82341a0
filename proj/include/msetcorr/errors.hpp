#pragma once

#include <stdexcept>
#include <string>

namespace msetcorr {

// Inputs that must share a grid (x0, dx, length) do not.
class AlignmentError : public std::invalid_argument {
 public:
  explicit AlignmentError(const std::string& what) : std::invalid_argument(what) {}
};

// Argument outside the domain of an operation (negative multiplicity, bad alpha, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

class AnalysisError : public std::runtime_error {
 public:
  explicit AnalysisError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace msetcorr
