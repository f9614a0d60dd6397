#include "rkenergy/linalg.hpp"

#include "rkenergy/rational.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace rkenergy {

double operator_norm_estimate(const Eigen::MatrixXd& L) {
    if (L.size() == 0) return 0.0;
    const Eigen::MatrixXd gram = L.transpose() * L;
    Eigen::VectorXd v = Eigen::VectorXd::Ones(L.cols());
    v.normalize();
    double lambda = 0.0;
    for (int it = 0; it < 100; ++it) {
        Eigen::VectorXd next = gram * v;
        const double n = next.norm();
        if (n == 0.0) {
            // Ones may lie in the kernel; retry from an alternating vector.
            if (it == 0) {
                for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = (i % 2 == 0) ? 1.0 : -0.5;
                v.normalize();
                continue;
            }
            return 0.0;
        }
        lambda = n;
        v = next / n;
    }
    return std::sqrt(lambda);
}

double seminegativity_margin(const Eigen::MatrixXd& L) {
    if (L.size() == 0) return 0.0;
    const Eigen::MatrixXd sym = L + L.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().maxCoeff();
}

double semi_norm_sq(const Eigen::MatrixXd& L, const Eigen::VectorXd& v, double norm_L) {
    const double value = -2.0 * v.dot(L * v);
    if (value >= 0.0) return value;
    const double floor = -1e-12 * norm_L * v.squaredNorm();
    if (value >= floor) return 0.0;
    std::ostringstream os;
    os << "semi-norm squared is " << value << " < 0: operator is not seminegative";
    throw DomainError(os.str());
}

double semi_norm_sq(const Eigen::MatrixXd& L, const Eigen::VectorXd& v) {
    return semi_norm_sq(L, v, operator_norm_estimate(L));
}

double semi_inner(const Eigen::MatrixXd& L, const Eigen::VectorXd& v, const Eigen::VectorXd& w) {
    return -(L * v).dot(w) - v.dot(L * w);
}

}  // namespace rkenergy
