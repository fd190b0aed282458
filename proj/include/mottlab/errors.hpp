#pragma once

#include <stdexcept>
#include <string>

namespace mottlab {

// Malformed or inconsistent input data (CSV rows, empty series, ...).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical procedure left its domain of validity.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mottlab
