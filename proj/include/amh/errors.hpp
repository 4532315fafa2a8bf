#pragma once

#include <stdexcept>
#include <string>

namespace amh {

// Root of the library's exception hierarchy.  Every error the library throws
// deliberately derives from this type so callers can catch one class.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text (dataset files, pair files).  Carries a 1-based line
// number when the failure is attributable to a specific line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  explicit ParseError(const std::string& what) : Error(what), line_(0) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A caller-supplied argument is outside its documented domain.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Structured data violates an invariant (duplicate ids, index out of range,
// non-binary value without coercion, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// An operation that requires a non-empty set received an empty one.
class EmptyInputError : public Error {
 public:
  using Error::Error;
};

// A data-side set has more elements than the padding budget allows.
class CardinalityExceedsBudgetError : public Error {
 public:
  using Error::Error;
};

// A data-side weighted vector has a larger total weight than the budget.
class SumExceedsBudgetError : public Error {
 public:
  using Error::Error;
};

// A closed-form expression was evaluated outside the region where it is
// defined (e.g. a required strict inequality between inputs fails).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A parameter search found no grid point satisfying its constraints.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// Filesystem-level failure or corrupt/unsupported binary payload.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace amh
