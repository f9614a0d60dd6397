#include "rkenergy/combinatorics.hpp"

#include <string>

namespace rkenergy {

Rational factorial(long n) {
    if (n < 0) throw ContractViolation("factorial of negative integer " + std::to_string(n));
    BigInt out;
    mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(out);
}

Rational binomial(long n, long k) {
    if (n < 0) throw ContractViolation("binomial with negative n = " + std::to_string(n));
    if (k < 0 || k > n) return 0;
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(out);
}

Rational rising_factorial(const Rational& x, long n) {
    if (n < 0) throw ContractViolation("rising factorial with negative length");
    Rational out = 1;
    Rational term = x;
    for (long k = 0; k < n; ++k) {
        out *= term;
        if (out.is_zero()) return out;
        term += 1;
    }
    return out;
}

}  // namespace rkenergy
