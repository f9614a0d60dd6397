#include "rkenergy/combinatorics.hpp"
#include "rkenergy/rational.hpp"
#include "rkenergy/rational_matrix.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>
#include <unordered_set>

using namespace rkenergy;

namespace {

Rational R(long p, long q = 1) { return {p, q}; }

// -U^T diag(d) U + diag(delta), the reconstruction the factorization promises.
RationalMatrix reconstruct(const UtduFactorization& f) {
    RationalMatrix out = -1 * (f.U.transpose() * RationalMatrix::diagonal(f.d) * f.U);
    for (std::size_t k = 0; k < f.delta.size(); ++k) out(k, k) += f.delta[k];
    return out;
}

RationalMatrix random_symmetric(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<long> num(-6, 6);
    std::uniform_int_distribution<long> den(1, 5);
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = R(num(rng), den(rng));
    return m;
}

}  // namespace

TEST(Rational, CanonicalForm) {
    EXPECT_EQ(R(2, 4), R(1, 2));
    EXPECT_EQ(R(3, -6), R(-1, 2));
    EXPECT_EQ(R(0, 7).denominator(), 1);
    EXPECT_EQ(R(-3, 9).to_string(), "-1/3");
    EXPECT_EQ(R(6, 3).to_string(), "2");
    EXPECT_THROW(R(1, 0), DomainError);
}

TEST(Rational, Parse) {
    EXPECT_EQ(Rational::parse("-5/3"), R(-5, 3));
    EXPECT_EQ(Rational::parse("7"), R(7));
    EXPECT_EQ(Rational::parse("-0.25"), R(-1, 4));
    EXPECT_EQ(Rational::parse("1e-3"), R(1, 1000));
    EXPECT_EQ(Rational::parse("2.5E2"), R(250));
    EXPECT_THROW(Rational::parse("1/0"), DomainError);
    EXPECT_ANY_THROW(Rational::parse("abc"));
    EXPECT_ANY_THROW(Rational::parse(""));
}

TEST(Rational, ArithmeticAndOrdering) {
    EXPECT_EQ(R(1, 2) + R(1, 3), R(5, 6));
    EXPECT_EQ(R(1, 2) - R(1, 3), R(1, 6));
    EXPECT_EQ(R(2, 3) * R(9, 4), R(3, 2));
    EXPECT_EQ(R(2, 3) / R(4, 9), R(3, 2));
    EXPECT_THROW(R(1) / R(0), DomainError);
    EXPECT_THROW(R(0).inverse(), DomainError);
    EXPECT_EQ(R(-2, 3).pow(3), R(-8, 27));
    EXPECT_EQ(R(2, 3).pow(-2), R(9, 4));
    EXPECT_LT(R(1, 3), R(1, 2));
    EXPECT_GT(R(-1, 3), R(-1, 2));
    EXPECT_DOUBLE_EQ(R(1, 4).to_double(), 0.25);
    std::ostringstream os;
    os << R(22, 7);
    EXPECT_EQ(os.str(), "22/7");
}

TEST(Rational, HashAgreesWithEquality) {
    std::unordered_set<Rational> set{R(1, 2), R(2, 4), R(-1, 2)};
    EXPECT_EQ(set.size(), 2u);
}

TEST(Rational, FieldAxiomsOnRandomSamples) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-50, 50);
    std::uniform_int_distribution<long> den(1, 40);
    for (int trial = 0; trial < 500; ++trial) {
        const Rational a(num(rng), den(rng));
        const Rational b(num(rng), den(rng));
        const Rational c(num(rng), den(rng));
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a - a, R(0));
        if (!b.is_zero()) EXPECT_EQ(a / b * b, a);
    }
}

TEST(Combinatorics, FactorialBinomialRising) {
    EXPECT_EQ(factorial(0), R(1));
    EXPECT_EQ(factorial(10), R(3628800));
    EXPECT_EQ(binomial(10, 3), R(120));
    EXPECT_EQ(binomial(4, 5), R(0));
    EXPECT_EQ(binomial(4, -1), R(0));
    EXPECT_EQ(rising_factorial(R(1, 2), 3), R(15, 8));
    EXPECT_EQ(rising_factorial(R(-3), 5), R(0));
    EXPECT_EQ(rising_factorial(R(5), 0), R(1));
    // Pascal's rule as an independent oracle.
    for (long n = 1; n <= 30; ++n)
        for (long k = 1; k <= n; ++k) EXPECT_EQ(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
}

TEST(RationalMatrix, BasicOperations) {
    const RationalMatrix a{{R(1), R(2)}, {R(3), R(4)}};
    const RationalMatrix b{{R(0), R(1)}, {R(1, 2), R(0)}};
    EXPECT_EQ(a * b, (RationalMatrix{{R(1), R(1)}, {R(2), R(3)}}));
    EXPECT_EQ(a.transpose(), (RationalMatrix{{R(1), R(3)}, {R(2), R(4)}}));
    EXPECT_EQ(a.leading_block(1), (RationalMatrix{{R(1)}}));
    EXPECT_FALSE(a.is_symmetric());
    EXPECT_TRUE(RationalMatrix::identity(3).is_unit_upper_triangular());
    EXPECT_EQ((RationalMatrix{{R(1, 2), R(-1)}}.to_string()), "((1/2, -1))");
}

TEST(RationalMatrix, Determinant) {
    EXPECT_EQ(determinant(RationalMatrix{{R(0), R(1)}, {R(1), R(0)}}), R(-1));
    EXPECT_EQ(determinant(RationalMatrix{{R(2), R(1), R(0)}, {R(1), R(2), R(1)}, {R(0), R(1), R(2)}}), R(4));
    EXPECT_EQ(determinant(RationalMatrix{{R(1), R(2)}, {R(2), R(4)}}), R(0));
}

TEST(Utdu, FactorsNegativeDefiniteMatrixWithoutShift) {
    // -[[2,1],[1,2]] = -U^T D U with U = [[1,1/2],[0,1]], D = diag(2, 3/2).
    const RationalMatrix s{{R(-2), R(-1)}, {R(-1), R(-2)}};
    const auto f = utdu_factorize(s, false);
    ASSERT_TRUE(f.success);
    EXPECT_EQ(f.U, (RationalMatrix{{R(1), R(1, 2)}, {R(0), R(1)}}));
    EXPECT_EQ(f.d, (std::vector<Rational>{R(2), R(3, 2)}));
    EXPECT_EQ(f.delta, (std::vector<Rational>{R(0), R(0)}));
    EXPECT_TRUE(is_negative_semidefinite(s));
}

TEST(Utdu, FailsWithoutRepairAndRepairsGreedily) {
    const RationalMatrix s{{R(1), R(0)}, {R(0), R(-1)}};
    EXPECT_FALSE(utdu_factorize(s, false).success);
    const auto f = utdu_factorize(s, true);
    ASSERT_TRUE(f.success);
    // The row beyond the failing pivot is zero, so the pivot is lifted to 0.
    EXPECT_EQ(f.delta, (std::vector<Rational>{R(1), R(0)}));
    EXPECT_EQ(f.d, (std::vector<Rational>{R(0), R(1)}));
    EXPECT_EQ(reconstruct(f), s);

    const RationalMatrix t{{R(0), R(1)}, {R(1), R(0)}};
    const auto g = utdu_factorize(t, true);
    EXPECT_EQ(g.delta[0], R(1));
    EXPECT_EQ(g.d[0], R(1));
    EXPECT_EQ(reconstruct(g), t);
    EXPECT_FALSE(is_negative_semidefinite(t));
}

TEST(Utdu, ZeroPivotWithZeroRowIsSkipped) {
    const RationalMatrix s{{R(0), R(0)}, {R(0), R(-3)}};
    const auto f = utdu_factorize(s, false);
    ASSERT_TRUE(f.success);
    EXPECT_EQ(f.d, (std::vector<Rational>{R(0), R(3)}));
    EXPECT_TRUE(is_negative_semidefinite(s));
}

TEST(Utdu, RejectsNonSymmetricInput) {
    EXPECT_THROW(utdu_factorize(RationalMatrix{{R(1), R(2)}, {R(0), R(1)}}, true), ContractViolation);
    EXPECT_THROW(utdu_factorize(RationalMatrix(2, 3), true), ContractViolation);
}

TEST(Utdu, RandomSymmetricReconstructionProperty) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const auto s = random_symmetric(rng, 1 + trial % 6);
        const auto f = utdu_factorize(s, true);
        ASSERT_TRUE(f.success);
        EXPECT_TRUE(f.U.is_unit_upper_triangular());
        for (const auto& d : f.d) EXPECT_GE(d.sign(), 0);
        for (const auto& d : f.delta) EXPECT_GE(d.sign(), 0);
        EXPECT_EQ(reconstruct(f), s);
        // No shift iff negative semidefinite.
        const bool shifted = std::any_of(f.delta.begin(), f.delta.end(), [](const Rational& x) { return !x.is_zero(); });
        EXPECT_EQ(shifted, !is_negative_semidefinite(s));
    }
}

TEST(Utdu, NsdDecisionMatchesGramConstruction) {
    // -B^T B is always NSD. Rows of B are built orthogonal to x = (1, r),
    // so adding a positive multiple of e1 e1^T yields x^T S x > 0.
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> num(-4, 4);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 4;
        std::vector<Rational> x(n, R(1));
        for (std::size_t j = 1; j < n; ++j) x[j] = R(num(rng), 3);
        RationalMatrix b(n - 1, n);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            Rational first = 0;
            for (std::size_t j = 1; j < n; ++j) {
                b(i, j) = R(num(rng));
                first -= b(i, j) * x[j];
            }
            b(i, 0) = first;
        }
        RationalMatrix s = -1 * (b.transpose() * b);
        EXPECT_TRUE(is_negative_semidefinite(s));
        EXPECT_EQ(largest_nsd_leading_block(s), n);
        s(0, 0) += R(1, 100);
        EXPECT_FALSE(is_negative_semidefinite(s));
    }
}

TEST(Utdu, LargestNsdLeadingBlock) {
    const RationalMatrix s{{R(-1), R(0), R(0)}, {R(0), R(-1), R(2)}, {R(0), R(2), R(-1)}};
    EXPECT_EQ(largest_nsd_leading_block(s), 2u);
    EXPECT_EQ(largest_nsd_leading_block(RationalMatrix{{R(1)}}), 0u);
}
