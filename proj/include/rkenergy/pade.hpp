#pragma once

// Closed forms for the diagonal (s, s) Pade approximant and exact checks of
// the identities behind its explicit energy decomposition
//
//   Upsilon = -U^T diag(d_hat) U,   U = (mu_{i,j}),
//
// including the continuation of every quantity to a rational parameter x
// with 2x not an integer.

#include "rkenergy/continuum.hpp"
#include "rkenergy/rational.hpp"
#include "rkenergy/rational_matrix.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace rkenergy {

/// s!/(2s)! (2s-i)!/(i!(s-i)!), the numerator coefficients of the (s, s)
/// approximant. Denominator coefficients are (-1)^i times these.
Rational pade_theta(long s, long i);

/// Entry (i, j) of the unit upper triangular factor; zero unless i <= j and
/// i, j have the same parity.
Rational pade_mu(long s, long i, long j);

/// Entry (i, j) of Upsilon by direct double-factorial summation, without
/// going through the stability function coefficients.
Rational pade_gamma_direct(long s, long i, long j);

struct PadeClosedForms {
    long s = 0;
    std::vector<Rational> theta;  ///< length s+1
    RationalMatrix mu;            ///< s x s
    std::vector<Rational> d_hat;  ///< length s
};

PadeClosedForms pade_closed_forms(long s);

/// Upsilon + U^T diag(d_hat) U built from closed forms only.
RationalMatrix verify_pade_cholesky(long s);

/// Outcome of one identity sweep. `counterexample` names the first failing
/// parameter tuple.
struct IdentityCheck {
    std::string name;
    bool passed = true;
    std::size_t cases = 0;
    std::optional<std::string> counterexample;

    void record(bool ok, const std::string& where);
};

/// Brute-force sum over l of C(s-l, j-l)^{-1} C(2s-l, j-i-l) C(i+j+1, l) (-1)^l
/// against its closed form, for all 0 <= i <= j <= s-1.
IdentityCheck verify_binomial_sum_identity(long s);
Rational binomial_sum(long s, long i, long j);
Rational binomial_sum_closed_form(long s, long i, long j);

/// Rational x with 2x not an integer. Construction throws DomainError.
class ExtendedParameter {
public:
    explicit ExtendedParameter(Rational x);
    [[nodiscard]] const Rational& value() const { return x_; }
    [[nodiscard]] std::string to_string() const { return x_.to_string(); }

private:
    Rational x_;
};

/// (1/i!) x(x-1)...(x-i+1) / (2x(2x-1)...(2x-i+1)); defined for every x
/// where the denominator does not vanish (DomainError otherwise).
Rational theta_extended(const Rational& x, long i);

/// [(-1)^p + (-1)^q] sum_{i <= min(p,q)} (-1)^{i+1} theta_i theta_{p+q+1-i}.
Rational gamma_extended(const Rational& x, long p, long q);

/// A number cofactor * sqrt(radicand). The square root is never formed.
struct RadicalRational {
    Rational cofactor;
    long radicand = 1;
};

/// a * b for equal radicands, radicand * a.cofactor * b.cofactor.
/// ContractViolation if the radicands differ and neither factor is zero.
Rational paired_product(const RadicalRational& a, const RadicalRational& b);

/// nu_{i,j}(x) for i, j >= 1 with radicand 2i-1, evaluated through rising
/// factorials so that non-integer x is admissible.
RadicalRational nu(const ExtendedParameter& x, long i, long j);

/// The same rising-factorial evaluation at a positive integer s, where it can
/// be compared with sqrt(d_hat_{i-1}) mu_{i-1,j-1}.
RadicalRational nu_at_integer(long s, long i, long j);

/// nu written through theta_j(x): the cofactor of
///   2 sqrt(4i-1) (x+1/2-j)_i (-j)_i / ((j-x)_i (1/2+j)_i) theta_{2j}   at (2i, 2j),
///   2 sqrt(4i-3) (x+3/2-j)_{i-1} (1-j)_{i-1} / ((j-x)_{i-1} (1/2+j)_{i-1}) theta_{2j-1}
///                                                                    at (2i-1, 2j-1),
/// and zero for mixed parity.
RadicalRational nu_from_theta(const ExtendedParameter& x, long i, long j);

Rational varphi_n(const ExtendedParameter& x, long n, long p, long q);
Rational phi_n(const ExtendedParameter& x, long n, long p, long q);
Rational Phi_n(const ExtendedParameter& x, long n, long p, long q);

/// gamma_{p-1,q-1}(x) + sum_{i <= min(p,q)} nu_{i,p} nu_{i,q}.
Rational extended_residual(const ExtendedParameter& x, long p, long q);

/// extended_residual(x, p, q) == 0 for 1 <= p, q <= p_max.
IdentityCheck verify_extended_residual(const ExtendedParameter& x, long p_max);

/// nu == nu_from_theta for 1 <= i <= i_max, 1 <= j <= j_max.
IdentityCheck verify_nu_theta_relations(const ExtendedParameter& x, long i_max, long j_max);

/// For 1 <= p, q <= p_max (q <= q_max) and 0 <= n <= n_max:
///   Phi_0 = 1, Phi_n = 0 for n >= p, Phi_{n+1} - Phi_n = -phi_n,
///   sum_{n<p} phi_n = 1,
///   nu_{2i-1,2p-1} nu_{2i-1,2q+1} + nu_{2i,2p} nu_{2i,2q} = 2 theta_{2p-1} theta_{2q} phi_{i-1},
///   sum_i nu_{i,p} nu_{i,q+1} + sum_i nu_{i,p+1} nu_{i,q} = 2 theta_p theta_q  (p, q+1 same parity).
IdentityCheck verify_phi_sum_and_pairing(const ExtendedParameter& x, long p_max, long q_max, long n_max = 12);

/// (x+n)! = x! (x+1)_n,  (x)_n = 2^n (x/2)_{ceil(n/2)} ((x+1)/2)_{floor(n/2)},
/// (x+i)!/(x-j)! = (-1)^j (-x)_j (x+1)_i.
/// Factorial forms are checked at the integers in `integer_samples`; the
/// Pochhammer forms at every sample.
IdentityCheck verify_pochhammer_identities(const std::vector<Rational>& rational_samples,
                                           const std::vector<long>& integer_samples, long n_max);

/// sum_{l=k}^{j} mu_hat_{k,l} vartheta_{j-l} == mu_{k,j} for 0 <= k <= j <= s-1,
/// and the equivalent polynomial form
///   sum_j mu_{k,j} z^{j-k} == sum_j mu_hat_{k,j} z^{j-k} Q_j(z),
/// Q_j the degree s-1-j truncation of the denominator.
IdentityCheck verify_mu_from_continuum(long s);

/// The sample set used for the extended-parameter sweeps.
std::vector<ExtendedParameter> default_extended_samples();

}  // namespace rkenergy
