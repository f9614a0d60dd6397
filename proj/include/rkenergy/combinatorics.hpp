#pragma once

#include "rkenergy/rational.hpp"

namespace rkenergy {

/// n! exactly. Throws ContractViolation for n < 0.
Rational factorial(long n);

/// C(n, k), zero when k < 0 or k > n. Throws ContractViolation for n < 0.
Rational binomial(long n, long k);

/// Rising factorial (x)_n = x (x+1) ... (x+n-1), with (x)_0 = 1.
Rational rising_factorial(const Rational& x, long n);

}  // namespace rkenergy
