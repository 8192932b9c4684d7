#pragma once

#include <stdexcept>
#include <string>

namespace boxkernel {

/// Thrown when an argument lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The spectral truncation could not reach the requested tail bound before
/// hitting its term cap. Usually means lambda is too small for the eigenfunction sum.
class PolicyUnresolvable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed comparison CSV.
class CsvFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace boxkernel
