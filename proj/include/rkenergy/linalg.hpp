#pragma once

// Double-precision helpers shared by the series validation and the simulator.

#include <Eigen/Dense>

namespace rkenergy {

/// sqrt of the largest eigenvalue of L^T L after 100 power-iteration steps.
double operator_norm_estimate(const Eigen::MatrixXd& L);

/// Largest eigenvalue of L + L^T. Seminegative operators have margin <= 0.
double seminegativity_margin(const Eigen::MatrixXd& L);

/// |v|_*^2 = -2 v^T L v. Values down to -1e-12 ||L|| ||v||^2 are clamped to 0;
/// anything lower throws DomainError.
double semi_norm_sq(const Eigen::MatrixXd& L, const Eigen::VectorXd& v, double norm_L);
double semi_norm_sq(const Eigen::MatrixXd& L, const Eigen::VectorXd& v);

/// [v, w] = -<Lv, w> - <v, Lw>.
double semi_inner(const Eigen::MatrixXd& L, const Eigen::VectorXd& v, const Eigen::VectorXd& w);

}  // namespace rkenergy
