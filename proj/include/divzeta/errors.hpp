#pragma once

#include <stdexcept>
#include <string>

namespace divzeta {

/// Argument outside the mathematical domain of an operation (k = 0, h <= 0, ...).
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Requested table exceeds the configured memory budget.
class CapacityError : public std::length_error {
public:
  using std::length_error::length_error;
};

/// Query past the end of a table or an otherwise inconsistent range.
class RangeError : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

/// Malformed, truncated or corrupted table file.
class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Two evaluation routes that must agree did not.
class ConsistencyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A main-term coefficient provider was asked for coefficients it does not define.
class ProviderDomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Numerical method failed to reach the requested accuracy.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace divzeta
