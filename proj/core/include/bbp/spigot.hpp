#pragma once

#include <string>

#include "bbp/formula.hpp"

namespace bbp {

/// Digit extraction request for a formula with an exact integer base B >= 2,
/// integer coefficient vector and rational leading scalar. Positions are
/// 1-indexed fractional digits after the radix point in base B; the integer
/// part is never emitted (values are taken mod 1).
struct DigitRequest {
  BBPFormula formula;
  Integer position{1};
  unsigned count = 1;
  unsigned guard_digits = 12;  // escalates 12 -> 24 -> 48 before giving up
};

/// Thrown when the carry ambiguity persists after guard escalation.
struct CarryAmbiguity : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Base-B digits at positions [position, position + count), computed by
/// modular exponentiation for the head terms and an exact fixed-point tail.
/// For B <= 36 digits are 0-9A-Z; larger bases render ':'-separated decimal
/// digit values.
std::string extract_digits(const DigitRequest& req);

}  // namespace bbp
