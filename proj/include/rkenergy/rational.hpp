#pragma once

// Exact rational scalars backed by GMP.
//
// A Rational is always stored in canonical form: numerator and denominator
// coprime, denominator strictly positive, zero as 0/1. Equality and hashing
// operate on that canonical form.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rkenergy {

using BigInt = mpz_class;

/// Thrown when an argument lies outside the domain of an exact operation
/// (division by zero, vanishing Pochhammer denominators, 2x in Z, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Thrown when a caller breaks a documented precondition (non-symmetric
/// input to a symmetric factorization, mismatched shapes, ...).
class ContractViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class Rational {
public:
    Rational() = default;
    Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(int value) : value_(static_cast<long>(value)) {}  // NOLINT
    Rational(const BigInt& value) : value_(value) {}  // NOLINT
    Rational(long numerator, long denominator);
    Rational(const BigInt& numerator, const BigInt& denominator);

    /// Parses "p", "p/q" or a finite decimal such as "-0.25" or "1e-3".
    static Rational parse(std::string_view text);

    [[nodiscard]] BigInt numerator() const { return value_.get_num(); }
    [[nodiscard]] BigInt denominator() const { return value_.get_den(); }

    [[nodiscard]] int sign() const { return sgn(value_); }
    [[nodiscard]] bool is_zero() const { return sign() == 0; }
    [[nodiscard]] bool is_integer() const { return value_.get_den() == 1; }

    [[nodiscard]] Rational abs() const;
    [[nodiscard]] Rational inverse() const;
    [[nodiscard]] Rational pow(int exponent) const;

    /// Nearest double (GMP truncation, at most one ulp off).
    [[nodiscard]] double to_double() const { return value_.get_d(); }

    /// "p/q", or "p" when the denominator is 1.
    [[nodiscard]] std::string to_string() const;

    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
    friend Rational operator-(const Rational& x);

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    friend std::ostream& operator<<(std::ostream& os, const Rational& x);

    [[nodiscard]] const mpq_class& raw() const { return value_; }

private:
    explicit Rational(mpq_class value);

    mpq_class value_{0};
};

}  // namespace rkenergy

template <>
struct std::hash<rkenergy::Rational> {
    std::size_t operator()(const rkenergy::Rational& x) const noexcept;
};
