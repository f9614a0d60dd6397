#include "rkenergy/combinatorics.hpp"
#include "rkenergy/methods.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace rkenergy;
using testing_support::R;
using testing_support::Rs;

TEST(Methods, PadeCoefficients) {
    const auto cn = make_pade(1, 1);
    EXPECT_EQ(cn.theta, Rs({R(1), R(1, 2)}));
    EXPECT_EQ(cn.vartheta, Rs({R(1), R(-1, 2)}));

    const auto p03 = make_pade(0, 3);
    EXPECT_EQ(p03.vartheta, Rs({R(1), R(-1), R(1, 2), R(-1, 6)}));
    EXPECT_EQ(p03.theta, Rs({R(1), R(0), R(0), R(0)}));
    EXPECT_EQ(p03.s, 3u);
    EXPECT_EQ(p03.s_p, 0u);

    const auto p41 = make_pade(4, 1);
    EXPECT_EQ(p41.theta, Rs({R(1), R(4, 5), R(3, 10), R(1, 15), R(1, 120)}));
    EXPECT_EQ(p41.vartheta, Rs({R(1), R(-1, 5), R(0), R(0), R(0)}));
    EXPECT_THROW(make_pade(0, 0), ContractViolation);
}

TEST(Methods, DiagonalPadeSymmetry) {
    for (std::size_t s = 1; s <= 20; ++s) {
        const auto sf = make_pade(s, s);
        for (std::size_t i = 0; i <= s; ++i) EXPECT_EQ(sf.theta[i], (i % 2 ? R(-1) : R(1)) * sf.vartheta[i]);
    }
}

TEST(Methods, Taylor) {
    EXPECT_EQ(make_taylor(1).theta, Rs({R(1), R(1)}));
    EXPECT_EQ(make_taylor(4).theta, Rs({R(1), R(1), R(1, 2), R(1, 6), R(1, 24)}));
    EXPECT_TRUE(make_taylor(3).is_explicit());
    EXPECT_EQ(make_taylor(3).vartheta, Rs({R(1), R(0), R(0), R(0)}));
    EXPECT_THROW(make_taylor(0), ContractViolation);
}

TEST(Methods, ButcherTableaus) {
    const auto qz = from_butcher(qin_zhang_tableau());
    EXPECT_EQ(qz.theta, Rs({R(1), R(1, 2), R(1, 16)}));
    EXPECT_EQ(qz.vartheta, Rs({R(1), R(-1, 2), R(1, 16)}));

    const auto ks = from_butcher(kraaijevanger_spijker_tableau());
    EXPECT_EQ(ks.theta, Rs({R(1), R(-3, 2), R(1, 2)}));
    EXPECT_EQ(ks.vartheta, Rs({R(1), R(-5, 2), R(1)}));

    const auto euler = from_butcher({RationalMatrix{{R(0)}}, {R(1)}});
    EXPECT_EQ(euler.theta, Rs({R(1), R(1)}));
    EXPECT_EQ(euler.vartheta, Rs({R(1), R(0)}));
}

TEST(Methods, ButcherOfClassicalRk4MatchesTaylor) {
    const ButcherTableau rk4{RationalMatrix{{R(0), R(0), R(0), R(0)},
                                            {R(1, 2), R(0), R(0), R(0)},
                                            {R(0), R(1, 2), R(0), R(0)},
                                            {R(0), R(0), R(1), R(0)}},
                             {R(1, 6), R(1, 3), R(1, 3), R(1, 6)}};
    const auto sf = from_butcher(rk4);
    EXPECT_EQ(sf.theta, make_taylor(4).theta);
    EXPECT_TRUE(sf.is_explicit());
}

TEST(Methods, ParseButcherFile) {
    std::istringstream in("# Qin-Zhang\n2\n1/4 0\n1/2 1/4   # second row\n\n1/2 1/2\n");
    const auto t = parse_butcher(in);
    EXPECT_EQ(t.A, qin_zhang_tableau().A);
    EXPECT_EQ(t.b, qin_zhang_tableau().b);

    std::istringstream bad("2\n1 0\n1/2\n");
    EXPECT_THROW(parse_butcher(bad), ContractViolation);
    std::istringstream empty("# nothing\n");
    EXPECT_THROW(parse_butcher(empty), ContractViolation);
}

TEST(Methods, Registry) {
    EXPECT_EQ(builtin("euler-backward").theta, Rs({R(1), R(0)}));
    EXPECT_EQ(builtin("euler-backward").vartheta, Rs({R(1), R(-1)}));
    EXPECT_EQ(builtin("crank-nicolson").theta, make_pade(1, 1).theta);
    EXPECT_EQ(builtin("crank-nicolson").name, "crank-nicolson");
    EXPECT_EQ(builtin("pade:3,3").theta, make_pade(3, 3).theta);
    EXPECT_EQ(builtin("taylor:3").theta, Rs({R(1), R(1), R(1, 2), R(1, 6)}));
    EXPECT_EQ(builtin("qin-zhang").theta, Rs({R(1), R(1, 2), R(1, 16)}));
    for (const char* bad : {"rk4", "pade:3", "pade:a,b", "pade:0,0", "taylor:0", "taylor:-1", "pade:1,2x", ""}) {
        EXPECT_THROW(builtin(bad), UnknownMethod) << bad;
    }
    try {
        builtin("nope");
    } catch (const UnknownMethod& e) {
        EXPECT_NE(std::string(e.what()).find("pade:M,N"), std::string::npos);
    }
}

TEST(Methods, FromCoefficientsNormalizes) {
    const auto sf = StabilityFunction::from_coefficients({R(1), R(2), R(0), R(0)}, {R(1)}, "x");
    EXPECT_EQ(sf.s, 1u);
    EXPECT_EQ(sf.vartheta, Rs({R(1), R(0)}));
    EXPECT_THROW(StabilityFunction::from_coefficients({R(2)}, {R(1)}, "x"), ContractViolation);
}

TEST(Methods, ApproximationOrder) {
    for (std::size_t s = 1; s <= 5; ++s) EXPECT_EQ(approximation_order(make_pade(s, s)), 2 * s);
    for (std::size_t p = 1; p <= 5; ++p) EXPECT_EQ(approximation_order(make_taylor(p)), p);
    EXPECT_EQ(approximation_order(builtin("euler-backward")), 1u);
    for (std::size_t m = 0; m <= 10; ++m)
        for (std::size_t n = 0; m + n <= 10; ++n)
            if (m + n > 0) EXPECT_EQ(approximation_order(make_pade(m, n)), m + n) << m << "," << n;
}

// Independent oracle: the (m, n) approximant is characterised by
// Q(z) e^z - P(z) = O(z^{m+n+1}), which pins down every coefficient.
TEST(Methods, PadeMatchesDefiningConditions) {
    for (std::size_t m = 0; m <= 6; ++m) {
        for (std::size_t n = 0; n <= 6; ++n) {
            if (m + n == 0) continue;
            const auto sf = make_pade(m, n);
            for (std::size_t k = 0; k <= m + n; ++k) {
                Rational coeff = 0;
                for (std::size_t l = 0; l <= std::min(k, n); ++l) coeff += sf.vartheta[l] / factorial(static_cast<long>(k - l));
                const Rational p = k <= m ? sf.theta[k] : Rational(0);
                EXPECT_EQ(coeff, p) << m << "," << n << " k=" << k;
            }
        }
    }
}
