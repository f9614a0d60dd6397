#include "rkenergy/rational.hpp"

#include <cctype>
#include <ostream>
#include <string>
#include <utility>

namespace rkenergy {

namespace {

bool is_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

BigInt parse_integer(std::string_view text, std::string_view whole) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    if (!is_digits(body)) {
        throw std::invalid_argument("not a rational number: '" + std::string(whole) + "'");
    }
    BigInt value(std::string(body), 10);
    return negative ? BigInt(-value) : value;
}

Rational parse_decimal(std::string_view text) {
    std::string_view mantissa = text;
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = text.substr(0, e);
        exponent = parse_integer(text.substr(e + 1), text).get_si();
    }
    bool negative = false;
    if (!mantissa.empty() && (mantissa.front() == '+' || mantissa.front() == '-')) {
        negative = mantissa.front() == '-';
        mantissa.remove_prefix(1);
    }
    std::string digits;
    long fraction_digits = 0;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
        digits = std::string(mantissa.substr(0, dot)) + std::string(mantissa.substr(dot + 1));
        fraction_digits = static_cast<long>(mantissa.size() - dot - 1);
    } else {
        digits = std::string(mantissa);
    }
    if (!is_digits(digits)) {
        throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
    }
    BigInt n(digits, 10);
    if (negative) n = -n;
    exponent -= fraction_digits;
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    return exponent < 0 ? Rational(n, scale) : Rational(BigInt(n * scale));
}

}  // namespace

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational::Rational(long numerator, long denominator)
    : Rational(BigInt(numerator), BigInt(denominator)) {}

Rational::Rational(const BigInt& numerator, const BigInt& denominator) {
    if (denominator == 0) throw DomainError("rational with zero denominator");
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        return Rational(parse_integer(text.substr(0, slash), text),
                        parse_integer(text.substr(slash + 1), text));
    }
    if (text.find_first_of(".eE") != std::string_view::npos) return parse_decimal(text);
    return Rational(parse_integer(text, text));
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(value_))); }

Rational Rational::inverse() const {
    if (is_zero()) throw DomainError("inverse of zero");
    return Rational(mpq_class(1 / value_));
}

Rational Rational::pow(int exponent) const {
    if (exponent < 0) return inverse().pow(-exponent);
    BigInt num;
    BigInt den;
    mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
    return Rational(num, den);
}

std::string Rational::to_string() const {
    if (is_integer()) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator+=(const Rational& rhs) {
    value_ += rhs.value_;
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
    value_ -= rhs.value_;
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
    value_ *= rhs.value_;
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) throw DomainError("division by zero");
    value_ /= rhs.value_;
    return *this;
}

Rational operator-(const Rational& x) { return Rational(mpq_class(-x.value_)); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.to_string(); }

}  // namespace rkenergy

std::size_t std::hash<rkenergy::Rational>::operator()(const rkenergy::Rational& x) const noexcept {
    const auto& q = x.raw();
    const std::size_t hn = mpz_get_ui(q.get_num_mpz_t()) ^ (static_cast<std::size_t>(mpz_sgn(q.get_num_mpz_t())) << 63);
    const std::size_t hd = mpz_get_ui(q.get_den_mpz_t());
    return hn * 0x9e3779b97f4a7c15ULL ^ (hd + 0x7f4a7c159e3779b9ULL + (hn << 6) + (hn >> 2));
}
