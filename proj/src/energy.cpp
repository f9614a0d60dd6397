#include "rkenergy/energy.hpp"

#include <algorithm>
#include <sstream>

namespace rkenergy {

namespace {

std::string superscript(std::size_t n) {
    static const char* const digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
    std::string out;
    for (char c : std::to_string(n)) out += digits[c - '0'];
    return out;
}

// "τ", "τ³", "" for power 0
std::string tau_power(std::size_t p) {
    if (p == 0) return "";
    return p == 1 ? "τ" : "τ" + superscript(p);
}

std::string operator_power(std::size_t k) {
    if (k == 0) return "";
    return k == 1 ? "L" : "L" + superscript(k);
}

std::string coefficient_prefix(const Rational& c) {
    if (c == 1) return "";
    if (c.is_integer()) return c.to_string();
    return "(" + c.to_string() + ")";
}

std::string render_polynomial(const std::vector<Rational>& poly) {
    std::size_t nonzero = 0;
    for (const auto& c : poly) nonzero += c.is_zero() ? 0 : 1;
    if (nonzero == 1 && poly.size() >= 1 && poly[0] == 1) return "";
    std::ostringstream os;
    os << '(';
    bool first = true;
    for (std::size_t m = 0; m < poly.size(); ++m) {
        if (poly[m].is_zero()) continue;
        const Rational mag = poly[m].abs();
        if (first) {
            if (poly[m].sign() < 0) os << "−";
        } else {
            os << (poly[m].sign() < 0 ? " − " : " + ");
        }
        first = false;
        if (m == 0) {
            os << (mag == 1 ? std::string("I") : coefficient_prefix(mag) + "I");
        } else {
            os << coefficient_prefix(mag) << tau_power(m) << operator_power(m);
        }
    }
    os << ')';
    return os.str();
}

}  // namespace

std::string to_string(StabilityClass c) {
    switch (c) {
        case StabilityClass::UnconditionallyStrong: return "UnconditionallyStrong";
        case StabilityClass::ConditionallyStrong: return "ConditionallyStrong";
        case StabilityClass::WeakOnly: return "WeakOnly";
        case StabilityClass::NotStronglyStable: return "NotStronglyStable";
    }
    return "?";
}

std::string describe(const StabilityReport& report) {
    switch (report.classification) {
        case StabilityClass::WeakOnly:
        case StabilityClass::NotStronglyStable:
            return to_string(report.classification) + "(" + std::to_string(report.kappa) + ")";
        default:
            return to_string(report.classification);
    }
}

RationalMatrix alpha_matrix(const StabilityFunction& sf) {
    const std::size_t n = sf.s + 1;
    RationalMatrix alpha(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            alpha(i, j) = sf.theta[i] * sf.theta[j] - sf.vartheta[i] * sf.vartheta[j];
    return alpha;
}

EnergyCoefficients beta_gamma(const StabilityFunction& sf) {
    const long s = static_cast<long>(sf.s);
    EnergyCoefficients ec{alpha_matrix(sf), std::vector<Rational>(sf.s + 1), RationalMatrix(sf.s, sf.s)};
    const auto& alpha = ec.alpha;

    for (long k = 0; k <= s; ++k) {
        Rational sum = 0;
        for (long l = std::max(0L, 2 * k - s); l <= std::min(2 * k, s); ++l) {
            const Rational& a = alpha(l, 2 * k - l);
            if ((k - l) % 2 == 0) sum += a; else sum -= a;
        }
        ec.beta[k] = sum;
    }
    for (long i = 0; i < s; ++i) {
        for (long j = 0; j < s; ++j) {
            Rational sum = 0;
            const long lo = std::min(i, j);
            for (long l = std::max(0L, i + j + 1 - s); l <= lo; ++l) {
                const Rational& a = alpha(l, i + j + 1 - l);
                if ((lo + 1 - l) % 2 == 0) sum += a; else sum -= a;
            }
            ec.gamma(i, j) = sum;
        }
    }
    return ec;
}

EnergyDecomposition decompose(const EnergyCoefficients& ec) {
    auto f = utdu_factorize(ec.gamma, true);
    return {std::move(f.delta), std::move(f.d), std::move(f.U), ec.beta};
}

StabilityReport classify(const EnergyCoefficients& ec, const EnergyDecomposition& dec) {
    StabilityReport r;
    for (std::size_t k = 0; k < ec.beta.size(); ++k) {
        if (!ec.beta[k].is_zero()) {
            r.zeta = k;
            r.beta_zeta_sign = ec.beta[k].sign();
            break;
        }
    }
    r.rho = largest_nsd_leading_block(ec.gamma);
    r.kappa = r.zeta ? std::min(2 * *r.zeta, 2 * r.rho + 1) : 2 * r.rho + 1;

    const bool gamma_nsd = r.rho == ec.gamma.rows();
    const bool beta_nonpositive = std::all_of(ec.beta.begin(), ec.beta.end(), [](const Rational& b) { return b.sign() <= 0; });
    // A repaired decomposition never coexists with an NSD gamma.
    const bool shifted = std::any_of(dec.delta.begin(), dec.delta.end(), [](const Rational& d) { return !d.is_zero(); });
    if (gamma_nsd == shifted) throw ContractViolation("decomposition does not belong to these coefficients");

    if (beta_nonpositive && gamma_nsd) {
        r.classification = StabilityClass::UnconditionallyStrong;
    } else if (r.zeta && *r.zeta <= r.rho && r.beta_zeta_sign < 0) {
        r.classification = StabilityClass::ConditionallyStrong;
    } else if (r.beta_zeta_sign > 0) {
        r.classification = StabilityClass::NotStronglyStable;
    } else {
        r.classification = StabilityClass::WeakOnly;
    }
    return r;
}

std::vector<EnergyTerm> energy_law_terms(const StabilityFunction& sf, const EnergyCoefficients& ec,
                                         const EnergyDecomposition& dec) {
    (void)sf;
    std::vector<EnergyTerm> terms;
    for (std::size_t k = 0; k < ec.beta.size(); ++k) {
        if (ec.beta[k].is_zero()) continue;
        terms.push_back({EnergyTerm::Kind::Norm, ec.beta[k].sign(), ec.beta[k].abs(), 2 * k, k, {Rational(1)}});
    }
    const std::size_t s = dec.d_tilde.size();
    for (std::size_t k = 0; k < s; ++k) {
        if (dec.d_tilde[k].is_zero()) continue;
        std::vector<Rational> poly;
        for (std::size_t j = k; j < s; ++j) poly.push_back(dec.U_tilde(k, j));
        while (poly.size() > 1 && poly.back().is_zero()) poly.pop_back();
        terms.push_back({EnergyTerm::Kind::Seminorm, -1, dec.d_tilde[k], 2 * k + 1, k, std::move(poly)});
    }
    for (std::size_t k = 0; k < dec.delta.size(); ++k) {
        if (dec.delta[k].is_zero()) continue;
        terms.push_back({EnergyTerm::Kind::Seminorm, 1, dec.delta[k], 2 * k + 1, k, {Rational(1)}});
    }
    return terms;
}

std::string render_energy_law(const std::vector<EnergyTerm>& terms) {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms) {
        if (first) {
            if (t.sign < 0) os << "−";
        } else {
            os << (t.sign < 0 ? " − " : " + ");
        }
        first = false;
        os << coefficient_prefix(t.coefficient) << tau_power(t.tau_power);
        const std::string inner = operator_power(t.operator_power) + render_polynomial(t.polynomial) + "w";
        if (t.kind == EnergyTerm::Kind::Norm) {
            os << "‖" << inner << "‖²";
        } else {
            os << "|" << inner << "|²*";
        }
    }
    return os.str();
}

EnergyAnalysis analyze(const StabilityFunction& sf) {
    EnergyAnalysis a{sf, beta_gamma(sf), {}, {}, {}};
    a.decomposition = decompose(a.coefficients);
    a.report = classify(a.coefficients, a.decomposition);
    a.terms = energy_law_terms(sf, a.coefficients, a.decomposition);
    return a;
}

}  // namespace rkenergy
