#pragma once

#include <stdexcept>
#include <string>

namespace certilatt {

// Raised by iv_inv when the operand interval contains zero.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// No integer is within eta of every point of an interval: the working
// precision is too low for the requested rounding.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A Gram oracle could not (or refused to) answer a query.
class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file or inconsistent dimensions.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact reference code met a non-positive squared GSO norm.
class NotPositiveDefinite : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An ideal generator has non-integral coordinates in the given basis.
class NotIntegralCoordinates : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace certilatt
