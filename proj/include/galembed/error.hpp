#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace galembed {

// Raised for malformed input data: unknown ids, invalid presentations,
// out-of-range parameters, violated preconditions of an operation.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Expression or relation text that does not conform to the grammar.
class ParseError : public DataError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : DataError(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// An enumeration or closure would exceed the configured element bound.
class BoundExceeded : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace galembed
