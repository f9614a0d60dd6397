#pragma once

// Double-precision time stepping u^{n+1} = Q(tau L)^{-1} P(tau L) u^n on
// seminegative systems, with per-step energy bookkeeping.

#include "rkenergy/energy.hpp"
#include "rkenergy/linalg.hpp"
#include "rkenergy/methods.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <iosfwd>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace rkenergy {

/// Q(tau L) is singular to working precision.
class StepFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SeminegativeSystem {
    Eigen::MatrixXd L;
    std::size_t dim = 0;
    std::string name;
    double margin = 0.0;  ///< largest eigenvalue of L + L^T
    double norm = 0.0;    ///< operator norm estimate
    Eigen::VectorXd initial_state;

    /// Fills in the derived fields and rejects L when margin > 1e-12 ||L||
    /// (DomainError).
    static SeminegativeSystem make(Eigen::MatrixXd L, std::string name, Eigen::VectorXd initial_state = {});
};

/// example1 (3x3), dg-advection (2 N_d), ldg-dispersion (N_d), skew2 (2x2 rotation generator).
SeminegativeSystem example_system(const std::string& name, std::size_t cells = 20);
std::vector<std::string> example_system_names();

/// L = A - A^T - B^T B with standard normal A, B; initial state standard normal.
SeminegativeSystem random_seminegative_system(std::size_t dim, std::mt19937_64& rng);

/// P(tau L), Q(tau L) and the LU factors of Q for one (method, system, tau).
class Stepper {
public:
    Stepper(const StabilityFunction& sf, const SeminegativeSystem& sys, double tau);

    [[nodiscard]] Eigen::VectorXd step(const Eigen::VectorXd& u) const;
    /// Q(tau L)^{-1} v.
    [[nodiscard]] Eigen::VectorXd solve_q(const Eigen::VectorXd& v) const;

    [[nodiscard]] double tau() const { return tau_; }
    [[nodiscard]] const SeminegativeSystem& system() const { return sys_; }

private:
    SeminegativeSystem sys_;
    double tau_;
    Eigen::MatrixXd P_;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

Eigen::VectorXd step(const StabilityFunction& sf, const SeminegativeSystem& sys, double tau, const Eigen::VectorXd& u);

/// E_n - E_{n+1} predicted by the decomposed energy identity,
///   -(sum beta_k tau^{2k} ||L^k w||^2 - sum d_k tau^{2k+1} |L^k u^(k)|_*^2
///     + sum delta_k tau^{2k+1} |L^k w|_*^2),
/// w = Q^{-1} u and u^(k) = sum_j U_{k,j} (tau L)^{j-k} w.
double theoretical_drop(const Stepper& stepper, const EnergyDecomposition& dec, const Eigen::VectorXd& u);
double theoretical_drop(const StabilityFunction& sf, const EnergyDecomposition& dec, const SeminegativeSystem& sys,
                        double tau, const Eigen::VectorXd& u);

struct TraceRecord {
    std::size_t n = 0;
    double t = 0.0;
    double energy = 0.0;  ///< E_n
    double measured_drop = 0.0;
    double theoretical_drop = 0.0;
    double rel_gap = 0.0;  ///< |measured - theoretical| / max(E_n, E_{n+1})
};

struct EnergyTrace {
    std::vector<TraceRecord> records;  ///< one per step
    Eigen::VectorXd final_state;
    double final_energy = 0.0;

    [[nodiscard]] double max_rel_gap() const;
    [[nodiscard]] bool monotone() const;  ///< every measured drop >= 0
};

EnergyTrace energy_trace(const StabilityFunction& sf, const SeminegativeSystem& sys, double tau, std::size_t n_steps,
                         const Eigen::VectorXd& u0);

/// e^{tL} by scaling and squaring around the (13, 13) Pade approximant.
Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& L, double t);

struct ConvergenceRow {
    double tau = 0.0;
    double l2_error = 0.0;
    double order = 0.0;  ///< NaN on the first row
    double delta_E = 0.0;
    double de_order = 0.0;
};

/// Errors at time T against e^{TL} u0 for each step size. Each T / tau must
/// be an integer to within 1e-9 (ContractViolation otherwise).
std::vector<ConvergenceRow> convergence_study(const StabilityFunction& sf, const SeminegativeSystem& sys,
                                              const Eigen::VectorXd& u0, double T, const std::vector<double>& taus);

/// 17 significant digits, scientific notation.
std::string format_double(double v);
void write_trace_csv(std::ostream& os, const EnergyTrace& trace);
void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows);

}  // namespace rkenergy
