#pragma once

// Discrete energy law of a stability function applied to du/dt = Lu.
//
// With w = Q(tau L)^{-1} u^n the step changes the energy by
//
//   |u^{n+1}|^2 - |u^n|^2 = sum_k beta_k tau^{2k} |L^k w|^2
//                         + sum_{i,j} gamma_{i,j} tau^{i+j+1} [L^i w, L^j w],
//
// where [v, w] = -<Lv, w> - <v, Lw> is the semi-inner product induced by L.
// decompose() rewrites the gamma block as a sum of weighted squared
// semi-norms after lifting its diagonal by delta when necessary.

#include "rkenergy/methods.hpp"
#include "rkenergy/rational.hpp"
#include "rkenergy/rational_matrix.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace rkenergy {

struct EnergyCoefficients {
    RationalMatrix alpha;        ///< (s+1) x (s+1), theta_i theta_j - vartheta_i vartheta_j
    std::vector<Rational> beta;  ///< length s+1
    RationalMatrix gamma;        ///< s x s
};

struct EnergyDecomposition {
    std::vector<Rational> delta;    ///< length s
    std::vector<Rational> d_tilde;  ///< length s
    RationalMatrix U_tilde;         ///< s x s, unit upper triangular
    std::vector<Rational> beta;
};

enum class StabilityClass { UnconditionallyStrong, ConditionallyStrong, WeakOnly, NotStronglyStable };

struct StabilityReport {
    std::optional<std::size_t> zeta;  ///< first k with beta_k != 0; empty means infinity
    int beta_zeta_sign = 0;
    std::size_t rho = 0;              ///< largest NSD leading block size of gamma
    std::size_t kappa = 0;            ///< min(2 zeta, 2 rho + 1)
    StabilityClass classification = StabilityClass::WeakOnly;
};

std::string to_string(StabilityClass c);
/// "UnconditionallyStrong", "ConditionallyStrong", "WeakOnly(k)", "NotStronglyStable(k)".
std::string describe(const StabilityReport& report);

RationalMatrix alpha_matrix(const StabilityFunction& sf);
EnergyCoefficients beta_gamma(const StabilityFunction& sf);
EnergyDecomposition decompose(const EnergyCoefficients& ec);
StabilityReport classify(const EnergyCoefficients& ec, const EnergyDecomposition& dec);

/// One term of the rewritten energy identity.
///
/// Norm terms read  sign * coefficient * tau^tau_power * |L^k w|^2.
/// Seminorm terms read  sign * coefficient * tau^tau_power * |L^k p(tau L) w|_*^2
/// with p(x) = sum_m polynomial[m] x^m.
struct EnergyTerm {
    enum class Kind { Norm, Seminorm };
    Kind kind = Kind::Norm;
    int sign = 1;
    Rational coefficient;  ///< magnitude, always positive
    std::size_t tau_power = 0;
    std::size_t operator_power = 0;
    std::vector<Rational> polynomial;
};

/// Ordered as: beta norm terms, d_tilde seminorm terms, delta seminorm terms.
std::vector<EnergyTerm> energy_law_terms(const StabilityFunction& sf, const EnergyCoefficients& ec,
                                         const EnergyDecomposition& dec);

/// Plain-text rendering, e.g. "-τ|w|²* - (1/16)τ³|Lw|²*". "0" for no terms.
std::string render_energy_law(const std::vector<EnergyTerm>& terms);

/// Everything the analyze report needs, computed in one pass.
struct EnergyAnalysis {
    StabilityFunction method;
    EnergyCoefficients coefficients;
    EnergyDecomposition decomposition;
    StabilityReport report;
    std::vector<EnergyTerm> terms;
};

EnergyAnalysis analyze(const StabilityFunction& sf);

}  // namespace rkenergy
