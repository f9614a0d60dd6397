#include "rkenergy/combinatorics.hpp"
#include "rkenergy/energy.hpp"
#include "rkenergy/pade.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace rkenergy;
using testing_support::R;

namespace {

// Binomial coefficients from Pascal's triangle, independent of GMP's mpz_bin.
Rational pascal(long n, long k) {
    if (k < 0 || k > n) return 0;
    std::vector<BigInt> row{1};
    for (long r = 1; r <= n; ++r) {
        std::vector<BigInt> next(r + 1);
        next[0] = next[r] = 1;
        for (long c = 1; c < r; ++c) next[c] = row[c - 1] + row[c];
        row = std::move(next);
    }
    return Rational(row[k]);
}

// The factorial definition of nu at a positive integer s (j <= s).
Rational nu_factorial_cofactor(long s, long i, long j) {
    if (i > j || (i + j) % 2) return 0;
    const long a = (i + j) / 2;
    const long c = (j - i) / 2;
    return factorial(s) / factorial(2 * s) * Rational(2) / factorial(i + j) * factorial(2 * s + i - j) *
           factorial(s - a) * factorial(a) / (factorial(s - j) * factorial(s - c) * factorial(c));
}

}  // namespace

TEST(Pade, ThetaClosedForm) {
    EXPECT_EQ(pade_theta(2, 1), R(1, 2));
    EXPECT_EQ(pade_theta(2, 2), R(1, 12));
    EXPECT_EQ(pade_theta(1, 1), R(1, 2));
    for (long s = 1; s <= 20; ++s) {
        const auto sf = make_pade(s, s);
        for (long i = 0; i <= s; ++i) EXPECT_EQ(pade_theta(s, i), sf.theta[i]);
    }
    EXPECT_THROW(pade_theta(2, 3), ContractViolation);
}

TEST(Pade, MuClosedForm) {
    for (long s = 1; s <= 10; ++s)
        for (long k = 0; k < s; ++k) EXPECT_EQ(pade_mu(s, k, k), R(1));
    EXPECT_EQ(pade_mu(3, 0, 2), R(1, 60));
    EXPECT_EQ(pade_mu(5, 0, 1), R(0));
    EXPECT_EQ(pade_mu(5, 2, 0), R(0));
}

// The factors must be the ones an unpivoted exact factorization of the
// coefficient-route Upsilon produces.
TEST(Pade, ClosedFormsMatchExactFactorization) {
    for (long s = 1; s <= 12; ++s) {
        const auto gamma = beta_gamma(make_pade(s, s)).gamma;
        const auto f = utdu_factorize(gamma, false);
        ASSERT_TRUE(f.success) << s;
        const auto closed = pade_closed_forms(s);
        EXPECT_EQ(f.U, closed.mu) << s;
        EXPECT_EQ(f.d, closed.d_hat) << s;
    }
}

TEST(Pade, GammaDirect) {
    EXPECT_EQ(pade_gamma_direct(2, 0, 0), R(-1));
    EXPECT_EQ(pade_gamma_direct(2, 0, 1), R(0));
    EXPECT_EQ(pade_gamma_direct(2, 1, 1), R(-1, 12));
    for (long s = 1; s <= 12; ++s) {
        const auto gamma = beta_gamma(make_pade(s, s)).gamma;
        for (long i = 0; i < s; ++i)
            for (long j = 0; j < s; ++j) EXPECT_EQ(pade_gamma_direct(s, i, j), gamma(i, j)) << s << i << j;
    }
}

TEST(Pade, CholeskyResidualVanishes) {
    EXPECT_EQ(verify_pade_cholesky(1), RationalMatrix(1, 1));
    for (long s = 1; s <= 20; ++s) EXPECT_TRUE(verify_pade_cholesky(s).is_zero()) << s;
    for (long k = 0; k < 20; ++k) EXPECT_GT(d_hat(k).sign(), 0);
}

TEST(Pade, BinomialSumIdentity) {
    for (long s = 1; s <= 15; ++s) {
        for (long j = 0; j < s; ++j) {
            for (long i = 0; i <= j; ++i) {
                Rational oracle = 0;
                for (long l = 0; l <= j - i; ++l) {
                    const Rational t = pascal(2 * s - l, j - i - l) * pascal(i + j + 1, l) / pascal(s - l, j - l);
                    oracle += l % 2 ? -t : t;
                }
                EXPECT_EQ(binomial_sum(s, i, j), oracle);
            }
        }
        const auto check = verify_binomial_sum_identity(s);
        EXPECT_TRUE(check.passed) << check.counterexample.value_or("");
        EXPECT_EQ(check.cases, static_cast<std::size_t>(s * (s + 1) / 2));
    }
    EXPECT_EQ(binomial_sum(5, 1, 2), R(0));
    EXPECT_EQ(binomial_sum(5, 0, 2), binomial_sum_closed_form(5, 0, 2));
    EXPECT_NE(binomial_sum(5, 0, 2), R(0));
}

TEST(Pade, ExtendedParameterDomain) {
    EXPECT_THROW(ExtendedParameter(R(1, 2)), DomainError);
    EXPECT_THROW(ExtendedParameter(R(3)), DomainError);
    EXPECT_THROW(ExtendedParameter(R(-7, 2)), DomainError);
    EXPECT_NO_THROW(ExtendedParameter(R(1, 3)));
    EXPECT_THROW(theta_extended(R(1, 2), 2), DomainError);
}

TEST(Pade, ThetaExtendedAtIntegers) {
    for (long s = 1; s <= 8; ++s) {
        for (long i = 0; i <= s; ++i) EXPECT_EQ(theta_extended(R(s), i), pade_theta(s, i));
        for (long i = s + 1; i < 2 * s; ++i) EXPECT_EQ(theta_extended(R(s), i), R(0));
    }
    EXPECT_EQ(theta_extended(R(2), 3), R(0));
    for (long s = 1; s <= 8; ++s)
        for (long p = 0; p < s; ++p)
            for (long q = 0; q < s; ++q) EXPECT_EQ(gamma_extended(R(s), p, q), pade_gamma_direct(s, p, q));
}

TEST(Pade, NuAtIntegersMatchesFactorialDefinition) {
    for (long s = 1; s <= 10; ++s) {
        for (long i = 1; i <= s; ++i) {
            for (long j = 1; j <= s; ++j) {
                const auto v = nu_at_integer(s, i, j);
                EXPECT_EQ(v.radicand, 2 * i - 1);
                EXPECT_EQ(v.cofactor, nu_factorial_cofactor(s, i, j)) << s << " " << i << " " << j;
                // nu = sqrt(d_{i-1}) mu_{i-1,j-1}, compared after squaring.
                EXPECT_EQ(paired_product(v, v), d_hat(i - 1) * pade_mu(s, i - 1, j - 1) * pade_mu(s, i - 1, j - 1));
            }
        }
    }
}

TEST(Pade, NuBranches) {
    const ExtendedParameter x(R(1, 3));
    EXPECT_TRUE(nu(x, 2, 1).cofactor.is_zero());
    EXPECT_TRUE(nu(x, 1, 2).cofactor.is_zero());
    EXPECT_FALSE(nu(x, 1, 1).cofactor.is_zero());
    EXPECT_FALSE(nu(x, 2, 4).cofactor.is_zero());
    EXPECT_THROW(paired_product(nu(x, 1, 1), nu(x, 2, 2)), ContractViolation);
    EXPECT_EQ(paired_product(nu(x, 1, 1), nu(x, 2, 3)), R(0));
}

TEST(Pade, NuThetaRelations) {
    const ExtendedParameter x(R(7, 5));
    for (auto [i, j] : {std::pair{3L, 1L}, std::pair{1L, 1L}, std::pair{2L, 6L}}) {
        const auto a = nu(x, i, j);
        const auto b = nu_from_theta(x, i, j);
        EXPECT_EQ(a.cofactor, b.cofactor) << i << " " << j;
    }
    for (const auto& sample : default_extended_samples()) {
        const auto check = verify_nu_theta_relations(sample, 10, 10);
        EXPECT_TRUE(check.passed) << check.counterexample.value_or("");
        EXPECT_EQ(check.cases, 100u);
    }
}

TEST(Pade, ExtendedResidual) {
    EXPECT_TRUE(extended_residual(ExtendedParameter(R(1, 3)), 1, 1).is_zero());
    EXPECT_TRUE(extended_residual(ExtendedParameter(R(7, 5)), 2, 3).is_zero());
    EXPECT_TRUE(extended_residual(ExtendedParameter(R(22, 7)), 4, 4).is_zero());
    // The two pieces are individually nonzero, so the cancellation is real.
    const ExtendedParameter x(R(22, 7));
    EXPECT_FALSE(gamma_extended(x.value(), 3, 3).is_zero());
    for (const auto& sample : default_extended_samples()) {
        const auto check = verify_extended_residual(sample, 10);
        EXPECT_TRUE(check.passed) << check.counterexample.value_or("");
    }
}

TEST(Pade, PhiSequences) {
    const ExtendedParameter x(R(1, 3));
    EXPECT_EQ(Phi_n(x, 0, 3, 2), R(1));
    EXPECT_EQ(varphi_n(x, 0, 3, 2), R(1));
    EXPECT_EQ(phi_n(x, 1, 1, 1), R(0));
    EXPECT_EQ(phi_n(x, 0, 1, 1), R(1));
    EXPECT_EQ(phi_n(x, 5, 3, 7), R(0));
    EXPECT_EQ(Phi_n(x, 3, 3, 7), R(0));
    EXPECT_NE(phi_n(x, 1, 3, 7), R(0));
    for (long n = 0; n < 6; ++n) EXPECT_EQ(Phi_n(x, n + 1, 4, 3) - Phi_n(x, n, 4, 3), -phi_n(x, n, 4, 3));
}

TEST(Pade, PhiSumAndPairing) {
    for (const auto& sample : default_extended_samples()) {
        const auto check = verify_phi_sum_and_pairing(sample, 10, 10, 12);
        EXPECT_TRUE(check.passed) << check.counterexample.value_or("");
    }
    // (x=7/5, p=3, q=2) and (x=-5/3, p=2, q=5) on their own.
    EXPECT_TRUE(verify_phi_sum_and_pairing(ExtendedParameter(R(7, 5)), 3, 2).passed);
    EXPECT_TRUE(verify_phi_sum_and_pairing(ExtendedParameter(R(-5, 3)), 2, 5).passed);
}

TEST(Pade, PochhammerIdentities) {
    EXPECT_EQ(rising_factorial(R(1, 3), 4),
              R(16) * rising_factorial(R(1, 6), 2) * rising_factorial(R(2, 3), 2));
    EXPECT_EQ(factorial(8), factorial(5) * rising_factorial(R(6), 3));
    EXPECT_EQ(factorial(8) / factorial(3), R(-1) * rising_factorial(R(-6), 3) * rising_factorial(R(7), 2));
    const auto check = verify_pochhammer_identities({R(1, 3), R(7, 5), R(-5, 3), R(22, 7), R(101, 6)}, {12, 13, 17, 25}, 10);
    EXPECT_TRUE(check.passed) << check.counterexample.value_or("");
    EXPECT_GT(check.cases, 1000u);
    EXPECT_THROW(verify_pochhammer_identities({}, {5}, 10), ContractViolation);
}

TEST(Pade, MuFromContinuum) {
    EXPECT_TRUE(verify_mu_from_continuum(1).passed);
    const auto four = verify_mu_from_continuum(4);
    EXPECT_TRUE(four.passed);
    EXPECT_EQ(four.cases, 10u + 4u);
    for (long s = 1; s <= 12; ++s) EXPECT_TRUE(verify_mu_from_continuum(s).passed) << s;
}

TEST(Pade, IdentityCheckKeepsFirstCounterexample) {
    IdentityCheck c{"demo", true, 0, std::nullopt};
    c.record(true, "a");
    c.record(false, "b");
    c.record(false, "c");
    EXPECT_FALSE(c.passed);
    EXPECT_EQ(c.cases, 3u);
    EXPECT_EQ(c.counterexample, "b");
}
