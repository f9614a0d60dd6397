#pragma once

// Stability functions R(z) = Q(z)^{-1} P(z) with exact rational coefficients.

#include "rkenergy/rational.hpp"
#include "rkenergy/rational_matrix.hpp"

#include <cstddef>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rkenergy {

/// Thrown by builtin() for an unrecognized method name.
class UnknownMethod : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Numerator P(z) = sum theta_i z^i and denominator Q(z) = sum vartheta_i z^i,
/// both normalized to a constant term of 1 and padded to length s + 1.
struct StabilityFunction {
    std::vector<Rational> theta;
    std::vector<Rational> vartheta;
    std::size_t s_p = 0;
    std::size_t s_q = 0;
    std::size_t s = 0;
    std::string name;

    /// Builds from raw coefficient lists. Trailing zeros are trimmed, both
    /// lists are padded to max degree + 1, and the constant terms must be 1
    /// (ContractViolation otherwise).
    static StabilityFunction from_coefficients(std::vector<Rational> numerator,
                                               std::vector<Rational> denominator,
                                               std::string name);

    [[nodiscard]] bool is_explicit() const { return s_q == 0; }
};

struct ButcherTableau {
    RationalMatrix A;
    std::vector<Rational> b;

    [[nodiscard]] std::size_t stages() const { return b.size(); }
};

/// Reads the plain-text tableau format: first line the stage count, then one
/// row of A per line, then b. Blank lines and text after '#' are ignored.
ButcherTableau parse_butcher(std::istream& in);

/// (m, n) Pade approximant of e^z: numerator degree m, denominator degree n.
StabilityFunction make_pade(std::size_t m, std::size_t n);

/// Degree-p truncated Taylor polynomial of e^z.
StabilityFunction make_taylor(std::size_t p);

/// P(z) = det(I - zA + z 1 b^T), Q(z) = det(I - zA).
StabilityFunction from_butcher(const ButcherTableau& tableau, std::string name = "butcher");

/// Looks up euler-backward, crank-nicolson, qin-zhang, kraaijevanger-spijker,
/// pade:M,N or taylor:P. Throws UnknownMethod listing the grammar otherwise.
StabilityFunction builtin(std::string_view name);

/// Tableaus of the two two-stage implicit schemes in the registry.
ButcherTableau qin_zhang_tableau();
ButcherTableau kraaijevanger_spijker_tableau();

/// Largest p with Q(z) e^z - P(z) = O(z^{p+1}), capped at 2s + 2.
std::size_t approximation_order(const StabilityFunction& sf);

/// Human-readable list of accepted method names.
std::string builtin_method_grammar();

}  // namespace rkenergy
