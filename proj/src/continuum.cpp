#include "rkenergy/continuum.hpp"

#include "rkenergy/combinatorics.hpp"
#include "rkenergy/linalg.hpp"

#include <cmath>

namespace rkenergy {

Rational d_hat(long k) {
    if (k < 0) throw ContractViolation("d_hat requires k >= 0");
    const Rational f = factorial(k);
    return f * f / (factorial(2 * k) * factorial(2 * k + 1));
}

Rational mu_hat(long k, long j) {
    if (k < 0 || j < 0) throw ContractViolation("mu_hat requires k, j >= 0");
    if (j < k) return 0;
    return factorial(2 * k + 1) * factorial(j) / (factorial(k) * factorial(j - k) * factorial(k + j + 1));
}

ContinuumCoefficients continuum_coefficients(std::size_t order) {
    const long n = static_cast<long>(order) + 1;
    ContinuumCoefficients c{order, {}, RationalMatrix(n, n)};
    for (long k = 0; k < n; ++k) {
        c.d_hat.push_back(d_hat(k));
        for (long j = k; j < n; ++j) c.mu_hat(k, j) = mu_hat(k, j);
    }
    return c;
}

RationalMatrix hilbert_upsilon(std::size_t order) {
    const long n = static_cast<long>(order) + 1;
    RationalMatrix h(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) h(i, j) = -(factorial(i) * factorial(j) * Rational(i + j + 1)).inverse();
    return h;
}

RationalMatrix verify_hilbert_cholesky(std::size_t order) {
    const auto c = continuum_coefficients(order);
    return hilbert_upsilon(order) + c.mu_hat.transpose() * RationalMatrix::diagonal(c.d_hat) * c.mu_hat;
}

double truncated_energy_series(const Eigen::MatrixXd& L, const Eigen::VectorXd& u, double tau, std::size_t order) {
    return truncated_energy_series(L, u, tau, order, order);
}

double truncated_energy_series(const Eigen::MatrixXd& L, const Eigen::VectorXd& u, double tau, std::size_t order,
                               std::size_t inner_order) {
    if (L.rows() != L.cols() || L.cols() != u.size()) throw ContractViolation("shape mismatch in truncated_energy_series");
    if (!(tau > 0.0)) throw ContractViolation("tau must be positive");
    if (inner_order < order) throw ContractViolation("inner order must be at least the outer order");
    const double norm_L = operator_norm_estimate(L);
    if (seminegativity_margin(L) > 1e-12 * norm_L) throw DomainError("operator is not seminegative");

    double sum = 0.0;
    for (std::size_t k = 0; k <= order; ++k) {
        const long kk = static_cast<long>(k);
        // Horner in tau L over j = inner_order .. k.
        Eigen::VectorXd acc = mu_hat(kk, static_cast<long>(inner_order)).to_double() * u;
        for (std::size_t j = inner_order; j-- > k;) {
            acc = tau * (L * acc) + mu_hat(kk, static_cast<long>(j)).to_double() * u;
        }
        for (std::size_t p = 0; p < k; ++p) acc = L * acc;
        sum += d_hat(kk).to_double() * std::pow(tau, static_cast<double>(2 * k + 1)) * semi_norm_sq(L, acc, norm_L);
    }
    return -sum;
}

}  // namespace rkenergy
