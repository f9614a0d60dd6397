#include "rkenergy/pade.hpp"

#include "rkenergy/combinatorics.hpp"
#include "rkenergy/methods.hpp"

#include <algorithm>
#include <sstream>

namespace rkenergy {

namespace {

bool odd(long n) { return n % 2 != 0; }

Rational sign_power(long n) { return odd(n) ? Rational(-1) : Rational(1); }

Rational checked_divide(const Rational& num, const Rational& den, const char* what) {
    if (den.is_zero()) throw DomainError(std::string("vanishing denominator in ") + what);
    return num / den;
}

std::string tuple(std::initializer_list<std::pair<const char*, std::string>> fields) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, value] : fields) {
        os << (first ? "" : ", ") << key << '=' << value;
        first = false;
    }
    return os.str();
}

std::string str(long v) { return std::to_string(v); }

// Cofactor of nu_{i,j} at any x where the rising factorials below do not vanish.
// With m = j - i, a = (i + j)/2 and c = (j - i)/2 the factorial definition
// collapses to
//   2 (x-j+1)_j / ((2x-m+1)_m (x-a+1)_i) * a! / ((i+j)! c!).
RadicalRational nu_rising(const Rational& x, long i, long j) {
    if (i < 1 || j < 1) throw ContractViolation("nu requires i, j >= 1");
    RadicalRational r{Rational(0), 2 * i - 1};
    if (i > j || odd(i + j)) return r;
    const long m = j - i;
    const long a = (i + j) / 2;
    const long c = m / 2;
    const Rational den = rising_factorial(2 * x - m + 1, m) * rising_factorial(x - a + 1, i);
    r.cofactor = checked_divide(2 * rising_factorial(x - j + 1, j), den, "nu") * factorial(a) /
                 (factorial(i + j) * factorial(c));
    return r;
}

// Coefficient lists of polynomials multiply and compare exactly.
std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    std::vector<Rational> out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

}  // namespace

Rational pade_theta(long s, long i) {
    if (s < 1 || i < 0 || i > s) throw ContractViolation("pade_theta requires s >= 1 and 0 <= i <= s");
    return factorial(s) * factorial(2 * s - i) / (factorial(2 * s) * factorial(i) * factorial(s - i));
}

Rational pade_mu(long s, long i, long j) {
    if (s < 1 || i < 0 || j < 0 || i >= s || j >= s) throw ContractViolation("pade_mu index out of range");
    if (i > j || odd(i + j)) return 0;
    const long half_sum = (i + j) / 2;
    const long half_diff = (j - i) / 2;
    return factorial(s) / factorial(2 * s) * factorial(2 * i + 1) / (factorial(i) * factorial(i + j + 1)) *
           factorial(2 * s + i - j) / factorial(s - 1 - j) * factorial(s - 1 - half_sum) * factorial(half_sum) /
           (factorial(s - half_diff) * factorial(half_diff));
}

Rational pade_gamma_direct(long s, long i, long j) {
    if (s < 1 || i < 0 || j < 0 || i >= s || j >= s) throw ContractViolation("pade_gamma_direct index out of range");
    if (odd(i + j)) return 0;
    const Rational scale = factorial(s) / factorial(2 * s);
    Rational sum = 0;
    for (long l = std::max(0L, i + j + 1 - s); l <= std::min(i, j); ++l) {
        const Rational term = factorial(2 * s - l) / (factorial(l) * factorial(s - l)) *
                              factorial(2 * s - i - j - 1 + l) /
                              (factorial(i + j + 1 - l) * factorial(s - i - j - 1 + l));
        if (odd(l + 1)) sum -= term; else sum += term;
    }
    return 2 * sign_power(i) * scale * scale * sum;
}

PadeClosedForms pade_closed_forms(long s) {
    if (s < 1) throw ContractViolation("pade_closed_forms requires s >= 1");
    PadeClosedForms f{s, {}, RationalMatrix(s, s), {}};
    for (long i = 0; i <= s; ++i) f.theta.push_back(pade_theta(s, i));
    for (long i = 0; i < s; ++i) {
        f.d_hat.push_back(d_hat(i));
        for (long j = i; j < s; ++j) f.mu(i, j) = pade_mu(s, i, j);
    }
    return f;
}

RationalMatrix verify_pade_cholesky(long s) {
    const auto f = pade_closed_forms(s);
    RationalMatrix upsilon(s, s);
    for (long i = 0; i < s; ++i)
        for (long j = 0; j < s; ++j) upsilon(i, j) = pade_gamma_direct(s, i, j);
    return upsilon + f.mu.transpose() * RationalMatrix::diagonal(f.d_hat) * f.mu;
}

void IdentityCheck::record(bool ok, const std::string& where) {
    ++cases;
    if (!ok && passed) {
        passed = false;
        counterexample = where;
    }
}

Rational binomial_sum(long s, long i, long j) {
    Rational sum = 0;
    for (long l = 0; l <= j - i; ++l) {
        const Rational term = binomial(2 * s - l, j - i - l) * binomial(i + j + 1, l) / binomial(s - l, j - l);
        if (odd(l)) sum -= term; else sum += term;
    }
    return sum;
}

Rational binomial_sum_closed_form(long s, long i, long j) {
    if (i > j || odd(i + j)) return 0;
    const long half_sum = (i + j) / 2;
    const long half_diff = (j - i) / 2;
    return factorial(s - 1 - half_sum) * factorial(half_sum) / (factorial(s - half_diff) * factorial(half_diff)) *
           Rational(s - j);
}

IdentityCheck verify_binomial_sum_identity(long s) {
    IdentityCheck check{"binomial-sum", true, 0, std::nullopt};
    for (long j = 0; j < s; ++j)
        for (long i = 0; i <= j; ++i)
            check.record(binomial_sum(s, i, j) == binomial_sum_closed_form(s, i, j),
                         tuple({{"s", str(s)}, {"i", str(i)}, {"j", str(j)}}));
    return check;
}

ExtendedParameter::ExtendedParameter(Rational x) : x_(std::move(x)) {
    if ((2 * x_).is_integer()) throw DomainError("extended parameter " + x_.to_string() + " has 2x in Z");
}

Rational theta_extended(const Rational& x, long i) {
    if (i < 0) throw ContractViolation("theta_extended requires i >= 0");
    Rational num = 1;
    Rational den = factorial(i);
    for (long k = 0; k < i; ++k) {
        num *= x - k;
        den *= 2 * x - k;
    }
    return checked_divide(num, den, "theta_extended");
}

Rational gamma_extended(const Rational& x, long p, long q) {
    if (odd(p + q)) return 0;
    Rational sum = 0;
    for (long i = 0; i <= std::min(p, q); ++i) {
        const Rational term = theta_extended(x, i) * theta_extended(x, p + q + 1 - i);
        if (odd(i + 1)) sum -= term; else sum += term;
    }
    return 2 * sign_power(p) * sum;
}

Rational paired_product(const RadicalRational& a, const RadicalRational& b) {
    if (a.cofactor.is_zero() || b.cofactor.is_zero()) return 0;
    if (a.radicand != b.radicand) throw ContractViolation("radicands do not pair");
    return Rational(a.radicand) * a.cofactor * b.cofactor;
}

RadicalRational nu(const ExtendedParameter& x, long i, long j) { return nu_rising(x.value(), i, j); }

RadicalRational nu_at_integer(long s, long i, long j) {
    if (s < 1 || j > s) throw ContractViolation("nu_at_integer requires 1 <= j <= s");
    return nu_rising(Rational(s), i, j);
}

RadicalRational nu_from_theta(const ExtendedParameter& x, long i, long j) {
    if (i < 1 || j < 1) throw ContractViolation("nu requires i, j >= 1");
    const Rational& s = x.value();
    const Rational half(1, 2);
    RadicalRational r{Rational(0), 2 * i - 1};
    if (odd(i) != odd(j)) return r;
    if (!odd(i)) {
        const long a = i / 2;
        const long b = j / 2;
        const Rational num = rising_factorial(s + half - b, a) * rising_factorial(Rational(-b), a);
        const Rational den = rising_factorial(b - s, a) * rising_factorial(half + b, a);
        r.cofactor = 2 * checked_divide(num, den, "nu_from_theta") * theta_extended(s, j);
    } else {
        const long a = (i + 1) / 2;
        const long b = (j + 1) / 2;
        const Rational num = rising_factorial(s + 3 * half - b, a - 1) * rising_factorial(Rational(1 - b), a - 1);
        const Rational den = rising_factorial(b - s, a - 1) * rising_factorial(half + b, a - 1);
        r.cofactor = 2 * checked_divide(num, den, "nu_from_theta") * theta_extended(s, j);
    }
    return r;
}

Rational varphi_n(const ExtendedParameter& x, long n, long p, long q) {
    const Rational& s = x.value();
    const Rational half(1, 2);
    const Rational num = rising_factorial(s + 3 * half - p, n) * rising_factorial(Rational(1 - p), n) *
                         rising_factorial(s + half - q, n) * rising_factorial(Rational(-q), n);
    const Rational den = rising_factorial(p - s + 1, n) * rising_factorial(p + 3 * half, n) *
                         rising_factorial(q - s + 1, n) * rising_factorial(q + 3 * half, n);
    return checked_divide(num, den, "varphi_n");
}

namespace {

Rational phi_denominator(const Rational& s, long p, long q) {
    return (s - p) * Rational(1 + 2 * p) * (s - q) * Rational(1 + 2 * q);
}

}  // namespace

Rational phi_n(const ExtendedParameter& x, long n, long p, long q) {
    const Rational& s = x.value();
    const Rational c1 = Rational(4 * n + 3) * (1 + s - 2 * p) * Rational(q - n) * (1 + 2 * s + 2 * n - 2 * q);
    const Rational c2 = Rational(4 * n + 1) * (s - 2 * q) * Rational(1 + 2 * p + 2 * n) * (s - p - n);
    return varphi_n(x, n, p, q) * checked_divide(c1 + c2, phi_denominator(s, p, q), "phi_n");
}

Rational Phi_n(const ExtendedParameter& x, long n, long p, long q) {
    const Rational& s = x.value();
    const Rational c3 = (n + p - s) * Rational(1 + 2 * p + 2 * n) * (n + q - s) * Rational(1 + 2 * q + 2 * n);
    return varphi_n(x, n, p, q) * checked_divide(c3, phi_denominator(s, p, q), "Phi_n");
}

Rational extended_residual(const ExtendedParameter& x, long p, long q) {
    Rational f = gamma_extended(x.value(), p - 1, q - 1);
    for (long i = 1; i <= std::min(p, q); ++i) f += paired_product(nu(x, i, p), nu(x, i, q));
    return f;
}

IdentityCheck verify_extended_residual(const ExtendedParameter& x, long p_max) {
    IdentityCheck check{"extended-residual", true, 0, std::nullopt};
    for (long p = 1; p <= p_max; ++p)
        for (long q = 1; q <= p_max; ++q)
            check.record(extended_residual(x, p, q).is_zero(),
                         tuple({{"x", x.to_string()}, {"p", str(p)}, {"q", str(q)}}));
    return check;
}

IdentityCheck verify_nu_theta_relations(const ExtendedParameter& x, long i_max, long j_max) {
    IdentityCheck check{"nu-theta", true, 0, std::nullopt};
    for (long i = 1; i <= i_max; ++i) {
        for (long j = 1; j <= j_max; ++j) {
            const auto direct = nu(x, i, j);
            const auto via_theta = nu_from_theta(x, i, j);
            check.record(direct.radicand == via_theta.radicand && direct.cofactor == via_theta.cofactor,
                         tuple({{"x", x.to_string()}, {"i", str(i)}, {"j", str(j)}}));
        }
    }
    return check;
}

IdentityCheck verify_phi_sum_and_pairing(const ExtendedParameter& x, long p_max, long q_max, long n_max) {
    IdentityCheck check{"phi-sum-pairing", true, 0, std::nullopt};
    const Rational& s = x.value();
    for (long p = 1; p <= p_max; ++p) {
        for (long q = 1; q <= q_max; ++q) {
            auto at = [&](const char* what, long n) {
                return tuple({{"identity", what}, {"x", x.to_string()}, {"p", str(p)}, {"q", str(q)}, {"n", str(n)}});
            };
            check.record(Phi_n(x, 0, p, q) == 1, at("Phi_0", 0));
            Rational phi_sum = 0;
            for (long n = 0; n <= std::max(n_max, p); ++n) {
                const Rational phi = phi_n(x, n, p, q);
                if (n < p) phi_sum += phi;
                if (n <= n_max) {
                    if (n >= p) check.record(Phi_n(x, n, p, q).is_zero() && phi.is_zero(), at("vanishing", n));
                    check.record(Phi_n(x, n + 1, p, q) - Phi_n(x, n, p, q) == -phi, at("telescoping", n));
                }
            }
            check.record(phi_sum == 1, at("phi-sum", p - 1));

            for (long i = 1; i <= std::max(p, q) + 1; ++i) {
                const Rational lhs = paired_product(nu(x, 2 * i - 1, 2 * p - 1), nu(x, 2 * i - 1, 2 * q + 1)) +
                                     paired_product(nu(x, 2 * i, 2 * p), nu(x, 2 * i, 2 * q));
                const Rational rhs = 2 * theta_extended(s, 2 * p - 1) * theta_extended(s, 2 * q) * phi_n(x, i - 1, p, q);
                check.record(lhs == rhs, at("nu-pairing", i));
            }

            if (odd(p) != odd(q + 1)) continue;
            Rational lhs = 0;
            for (long i = 1; i <= std::max(p, q) + 1; ++i) {
                lhs += paired_product(nu(x, i, p), nu(x, i, q + 1));
                lhs += paired_product(nu(x, i, p + 1), nu(x, i, q));
            }
            check.record(lhs == 2 * theta_extended(s, p) * theta_extended(s, q), at("nu-theta-sum", 0));
        }
    }
    return check;
}

IdentityCheck verify_pochhammer_identities(const std::vector<Rational>& rational_samples,
                                           const std::vector<long>& integer_samples, long n_max) {
    IdentityCheck check{"pochhammer", true, 0, std::nullopt};
    std::vector<Rational> all = rational_samples;
    for (long v : integer_samples) all.emplace_back(v);

    for (const Rational& x : all) {
        for (long n = 0; n <= n_max; ++n) {
            const Rational rhs = Rational(2).pow(static_cast<int>(n)) * rising_factorial(x / 2, (n + 1) / 2) *
                                 rising_factorial((x + 1) / 2, n / 2);
            check.record(rising_factorial(x, n) == rhs,
                         tuple({{"identity", "ID-2"}, {"x", x.to_string()}, {"n", str(n)}}));
        }
        // Ratio form of the factorial quotient, valid away from the integers
        // j-1, j-2, ...: (x+i)!/(x-j)! = (x-j+1)_{i+j}.
        for (long i = 0; i <= n_max; ++i) {
            for (long j = 0; j <= n_max; ++j) {
                if (x.is_integer() && x < Rational(j)) continue;
                check.record(rising_factorial(x - j + 1, i + j) ==
                                 sign_power(j) * rising_factorial(-x, j) * rising_factorial(x + 1, i),
                             tuple({{"identity", "ID-3"}, {"x", x.to_string()}, {"i", str(i)}, {"j", str(j)}}));
            }
        }
    }
    for (long x : integer_samples) {
        if (x < n_max) throw ContractViolation("integer samples must be at least n_max");
        for (long n = 0; n <= n_max; ++n) {
            check.record(factorial(x + n) == factorial(x) * rising_factorial(Rational(x + 1), n),
                         tuple({{"identity", "ID-1"}, {"x", str(x)}, {"n", str(n)}}));
        }
        for (long i = 0; i <= n_max; ++i) {
            for (long j = 0; j <= n_max; ++j) {
                check.record(factorial(x + i) / factorial(x - j) ==
                                 sign_power(j) * rising_factorial(Rational(-x), j) * rising_factorial(Rational(x + 1), i),
                             tuple({{"identity", "ID-3"}, {"x", str(x)}, {"i", str(i)}, {"j", str(j)}}));
            }
        }
    }
    return check;
}

IdentityCheck verify_mu_from_continuum(long s) {
    IdentityCheck check{"mu-from-continuum", true, 0, std::nullopt};
    const auto sf = make_pade(static_cast<std::size_t>(s), static_cast<std::size_t>(s));
    const auto& vartheta = sf.vartheta;
    for (long k = 0; k < s; ++k) {
        for (long j = k; j < s; ++j) {
            Rational bar = 0;
            for (long l = k; l <= j; ++l) bar += mu_hat(k, l) * vartheta[j - l];
            check.record(bar == pade_mu(s, k, j), tuple({{"s", str(s)}, {"k", str(k)}, {"j", str(j)}}));
        }
        // Polynomial form: both sides have degree at most s-1-k in z.
        std::vector<Rational> lhs(s - k);
        std::vector<Rational> rhs(s - k);
        for (long j = k; j < s; ++j) {
            lhs[j - k] += pade_mu(s, k, j);
            std::vector<Rational> shifted(j - k + 1);
            shifted[j - k] = mu_hat(k, j);
            const std::vector<Rational> truncated(vartheta.begin(), vartheta.begin() + (s - j));
            const auto product = poly_mul(shifted, truncated);
            for (std::size_t m = 0; m < product.size(); ++m) rhs[m] += product[m];
        }
        check.record(lhs == rhs, tuple({{"s", str(s)}, {"k", str(k)}, {"form", "polynomial"}}));
    }
    return check;
}

std::vector<ExtendedParameter> default_extended_samples() {
    return {ExtendedParameter(Rational(1, 3)), ExtendedParameter(Rational(7, 5)), ExtendedParameter(Rational(-5, 3)),
            ExtendedParameter(Rational(22, 7)), ExtendedParameter(Rational(101, 6))};
}

}  // namespace rkenergy
