#pragma once

// Series expansion of the exact energy change over one step of du/dt = Lu:
//
//   |e^{tau L} u|^2 - |u|^2 = - sum_k d_hat_k tau^{2k+1} |L^k u_hat^{(k)}|_*^2,
//   u_hat^{(k)} = sum_{j >= k} mu_hat_{k,j} (tau L)^{j-k} u.
//
// The coefficients come from the exact factorization of the scaled Hilbert
// matrix (-1 / (i! j! (i+j+1))).

#include "rkenergy/rational.hpp"
#include "rkenergy/rational_matrix.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace rkenergy {

/// (k!)^2 / ((2k)! (2k+1)!)
Rational d_hat(long k);

/// (2k+1)! j! / (k! (j-k)! (k+j+1)!) for j >= k, zero for j < k.
Rational mu_hat(long k, long j);

struct ContinuumCoefficients {
    std::size_t order = 0;  ///< truncation order N
    std::vector<Rational> d_hat;
    RationalMatrix mu_hat;  ///< (N+1) x (N+1), unit upper triangular
};

ContinuumCoefficients continuum_coefficients(std::size_t order);

/// The (N+1) x (N+1) matrix with entries -1 / (i! j! (i+j+1)).
RationalMatrix hilbert_upsilon(std::size_t order);

/// hilbert_upsilon(N) + U_hat^T diag(d_hat) U_hat; exactly zero when the
/// closed-form factorization holds.
RationalMatrix verify_hilbert_cholesky(std::size_t order);

/// -sum_{k<=N} d_hat_k tau^{2k+1} |L^k u_hat_N^{(k)}|_*^2 where the inner
/// sums run over k <= j <= inner_order. The single-order overload uses
/// inner_order = N, which is exactly -int_0^tau |u_N(t)|_*^2 dt for the
/// degree-N Taylor truncation u_N; it differs from the exact energy change
/// by O(tau^{N+2}). Taking inner_order >= 2N+1 truncates only the outer sum
/// and leaves an O(tau^{2N+3}) defect.
///
/// Throws DomainError when L is not seminegative, ContractViolation when
/// tau <= 0 or the shapes disagree.
double truncated_energy_series(const Eigen::MatrixXd& L, const Eigen::VectorXd& u, double tau, std::size_t order);
double truncated_energy_series(const Eigen::MatrixXd& L, const Eigen::VectorXd& u, double tau, std::size_t order,
                               std::size_t inner_order);

}  // namespace rkenergy
