#include "rkenergy/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

namespace rkenergy {

namespace {

std::vector<double> to_doubles(const std::vector<Rational>& c) {
    std::vector<double> out;
    out.reserve(c.size());
    for (const auto& x : c) out.push_back(x.to_double());
    return out;
}

// sum_i c_i A^i by Horner.
Eigen::MatrixXd horner(const std::vector<double>& c, const Eigen::MatrixXd& A) {
    const auto n = A.rows();
    Eigen::MatrixXd M = c.back() * Eigen::MatrixXd::Identity(n, n);
    for (std::size_t i = c.size() - 1; i-- > 0;) {
        M = A * M;
        M.diagonal().array() += c[i];
    }
    return M;
}

Eigen::MatrixXd periodic_bidiagonal(std::size_t n, double diag) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        M(i, i) = diag;
        if (i > 0) M(i, i - 1) = 1.0;
    }
    M(0, n - 1) += 1.0;
    return M;
}

}  // namespace

SeminegativeSystem SeminegativeSystem::make(Eigen::MatrixXd L, std::string name, Eigen::VectorXd initial_state) {
    if (L.rows() != L.cols() || L.rows() == 0) throw ContractViolation("system matrix must be square and nonempty");
    if (initial_state.size() != 0 && initial_state.size() != L.rows()) {
        throw ContractViolation("initial state has the wrong dimension");
    }
    SeminegativeSystem sys;
    sys.dim = static_cast<std::size_t>(L.rows());
    sys.margin = seminegativity_margin(L);
    sys.norm = operator_norm_estimate(L);
    sys.name = std::move(name);
    sys.L = std::move(L);
    sys.initial_state = initial_state.size() ? std::move(initial_state) : Eigen::VectorXd::Ones(sys.L.rows());
    if (sys.margin > 1e-12 * sys.norm) {
        std::ostringstream os;
        os << "system '" << sys.name << "' is not seminegative: largest eigenvalue of L + L^T is " << sys.margin;
        throw DomainError(os.str());
    }
    return sys;
}

std::vector<std::string> example_system_names() { return {"example1", "dg-advection", "ldg-dispersion", "skew2"}; }

SeminegativeSystem example_system(const std::string& name, std::size_t cells) {
    if (name == "example1") {
        Eigen::MatrixXd L(3, 3);
        L << -1, -2, -2, 0, -1, -2, 0, 0, -1;
        Eigen::VectorXd u0(3);
        u0 << 0.9134, 0.2785, 0.5469;
        return SeminegativeSystem::make(L, name, u0);
    }
    if (name == "skew2") {
        Eigen::MatrixXd L(2, 2);
        L << 0, 1, -1, 0;
        Eigen::VectorXd u0(2);
        u0 << 1, 0;
        return SeminegativeSystem::make(L, name, u0);
    }
    if (cells < 2) throw ContractViolation("mesh needs at least two cells");
    const double dx = 1.0 / static_cast<double>(cells);
    const double two_pi = 2.0 * std::numbers::pi;
    const auto n = static_cast<Eigen::Index>(cells);
    const Eigen::MatrixXd L1 = periodic_bidiagonal(cells, -1.0);
    if (name == "dg-advection") {
        const Eigen::MatrixXd L2 = periodic_bidiagonal(cells, 1.0);
        const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
        const double r3 = std::sqrt(3.0);
        Eigen::MatrixXd L(2 * n, 2 * n);
        L << L1, r3 * L1, r3 * (2.0 * I - L2), -3.0 * L2;
        L /= dx;
        Eigen::VectorXd u0 = Eigen::VectorXd::Zero(2 * n);
        for (Eigen::Index j = 0; j < n; ++j) {
            const double a = static_cast<double>(j) * dx;
            u0(j) = (std::cos(two_pi * a) - std::cos(two_pi * (a + dx))) / (two_pi * dx);
        }
        return SeminegativeSystem::make(L, name, u0);
    }
    if (name == "ldg-dispersion") {
        Eigen::MatrixXd L = L1 * L1.transpose() * L1.transpose();
        L /= dx * dx * dx;
        Eigen::VectorXd u0(n);
        for (Eigen::Index j = 0; j < n; ++j) {
            const double a = static_cast<double>(j) * dx;
            u0(j) = (std::sin(two_pi * (a + dx)) - std::sin(two_pi * a)) / (two_pi * dx);
        }
        return SeminegativeSystem::make(L, name, u0);
    }
    throw ContractViolation("unknown system '" + name + "'; valid systems: example1, dg-advection, ldg-dispersion, skew2");
}

SeminegativeSystem random_seminegative_system(std::size_t dim, std::mt19937_64& rng) {
    if (dim == 0) throw ContractViolation("random system needs dim >= 1");
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto n = static_cast<Eigen::Index>(dim);
    Eigen::MatrixXd A(n, n);
    Eigen::MatrixXd B(n, n);
    Eigen::VectorXd u0(n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) A(i, j) = normal(rng);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) B(i, j) = normal(rng);
    for (Eigen::Index i = 0; i < n; ++i) u0(i) = normal(rng);
    return SeminegativeSystem::make(A - A.transpose() - B.transpose() * B, "random-" + std::to_string(dim), u0);
}

Stepper::Stepper(const StabilityFunction& sf, const SeminegativeSystem& sys, double tau) : sys_(sys), tau_(tau) {
    if (!(tau > 0.0)) throw ContractViolation("tau must be positive");
    const Eigen::MatrixXd A = tau * sys.L;
    P_ = horner(to_doubles(sf.theta), A);
    const Eigen::MatrixXd Q = horner(to_doubles(sf.vartheta), A);
    lu_.compute(Q);
    const Eigen::MatrixXd permuted = lu_.permutationP() * Q;
    const Eigen::MatrixXd& U = lu_.matrixLU();
    for (Eigen::Index k = 0; k < U.rows(); ++k) {
        const double scale = permuted.row(k).cwiseAbs().maxCoeff();
        if (!(std::abs(U(k, k)) > 1e-14 * scale) || !std::isfinite(U(k, k))) {
            std::ostringstream os;
            os << "Q(tau L) is numerically singular for " << sf.name << " at tau*||L|| = " << tau * sys.norm;
            throw StepFailure(os.str());
        }
    }
}

Eigen::VectorXd Stepper::step(const Eigen::VectorXd& u) const { return lu_.solve(P_ * u); }

Eigen::VectorXd Stepper::solve_q(const Eigen::VectorXd& v) const { return lu_.solve(v); }

Eigen::VectorXd step(const StabilityFunction& sf, const SeminegativeSystem& sys, double tau, const Eigen::VectorXd& u) {
    return Stepper(sf, sys, tau).step(u);
}

double theoretical_drop(const Stepper& stepper, const EnergyDecomposition& dec, const Eigen::VectorXd& u) {
    const auto& L = stepper.system().L;
    const double norm_L = stepper.system().norm;
    const double tau = stepper.tau();
    const Eigen::VectorXd w = stepper.solve_q(u);

    double change = 0.0;
    Eigen::VectorXd Lkw = w;
    for (std::size_t k = 0; k < dec.beta.size(); ++k) {
        if (k > 0) Lkw = L * Lkw;
        if (!dec.beta[k].is_zero()) {
            change += dec.beta[k].to_double() * std::pow(tau, 2.0 * k) * Lkw.squaredNorm();
        }
    }
    const std::size_t s = dec.d_tilde.size();
    Lkw = w;
    for (std::size_t k = 0; k < s; ++k) {
        if (k > 0) Lkw = L * Lkw;
        const double tau_pow = std::pow(tau, 2.0 * k + 1);
        if (!dec.d_tilde[k].is_zero()) {
            // L^k u^(k) by Horner over j = s-1 .. k, applied to L^k w.
            Eigen::VectorXd acc = dec.U_tilde(k, s - 1).to_double() * Lkw;
            for (std::size_t j = s - 1; j-- > k;) acc = tau * (L * acc) + dec.U_tilde(k, j).to_double() * Lkw;
            change -= dec.d_tilde[k].to_double() * tau_pow * semi_norm_sq(L, acc, norm_L);
        }
        if (!dec.delta[k].is_zero()) change += dec.delta[k].to_double() * tau_pow * semi_norm_sq(L, Lkw, norm_L);
    }
    return -change;
}

double theoretical_drop(const StabilityFunction& sf, const EnergyDecomposition& dec, const SeminegativeSystem& sys,
                        double tau, const Eigen::VectorXd& u) {
    return theoretical_drop(Stepper(sf, sys, tau), dec, u);
}

double EnergyTrace::max_rel_gap() const {
    double m = 0.0;
    for (const auto& r : records) m = std::max(m, r.rel_gap);
    return m;
}

bool EnergyTrace::monotone() const {
    return std::all_of(records.begin(), records.end(), [](const TraceRecord& r) { return r.measured_drop >= 0.0; });
}

EnergyTrace energy_trace(const StabilityFunction& sf, const SeminegativeSystem& sys, double tau, std::size_t n_steps,
                         const Eigen::VectorXd& u0) {
    if (u0.size() != sys.L.rows()) throw ContractViolation("initial state has the wrong dimension");
    const Stepper stepper(sf, sys, tau);
    const auto dec = decompose(beta_gamma(sf));
    EnergyTrace trace;
    trace.records.reserve(n_steps);
    Eigen::VectorXd u = u0;
    for (std::size_t n = 0; n < n_steps; ++n) {
        const Eigen::VectorXd next = stepper.step(u);
        TraceRecord r;
        r.n = n;
        r.t = static_cast<double>(n) * tau;
        r.energy = u.squaredNorm();
        r.measured_drop = (u - next).dot(u + next);
        r.theoretical_drop = theoretical_drop(stepper, dec, u);
        const double scale = std::max(r.energy, next.squaredNorm());
        r.rel_gap = scale > 0.0 ? std::abs(r.measured_drop - r.theoretical_drop) / scale : 0.0;
        trace.records.push_back(r);
        u = next;
    }
    trace.final_energy = u.squaredNorm();
    trace.final_state = std::move(u);
    return trace;
}

Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& L, double t) {
    static const StabilityFunction pade13 = make_pade(13, 13);
    static const std::vector<double> num = to_doubles(pade13.theta);
    static const std::vector<double> den = to_doubles(pade13.vartheta);
    Eigen::MatrixXd A = t * L;
    const double norm1 = A.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
    A /= std::ldexp(1.0, squarings);
    Eigen::MatrixXd E = horner(den, A).partialPivLu().solve(horner(num, A));
    for (int i = 0; i < squarings; ++i) E = E * E;
    return E;
}

std::vector<ConvergenceRow> convergence_study(const StabilityFunction& sf, const SeminegativeSystem& sys,
                                              const Eigen::VectorXd& u0, double T, const std::vector<double>& taus) {
    const Eigen::VectorXd reference = matrix_exponential(sys.L, T) * u0;
    std::vector<ConvergenceRow> rows;
    for (double tau : taus) {
        const double ratio = T / tau;
        const double steps = std::round(ratio);
        if (!(tau > 0.0) || std::abs(ratio - steps) > 1e-9 * std::max(1.0, ratio)) {
            throw ContractViolation("T is not an integer multiple of tau = " + format_double(tau));
        }
        const Stepper stepper(sf, sys, tau);
        Eigen::VectorXd u = u0;
        for (long n = 0; n < static_cast<long>(steps); ++n) u = stepper.step(u);
        ConvergenceRow row;
        row.tau = tau;
        row.l2_error = (reference - u).norm();
        row.delta_E = std::abs((reference - u).dot(reference + u));
        row.order = row.de_order = std::numeric_limits<double>::quiet_NaN();
        if (!rows.empty()) {
            const auto& prev = rows.back();
            const double h = std::log(prev.tau / tau);
            row.order = std::log(prev.l2_error / row.l2_error) / h;
            row.de_order = std::log(prev.delta_E / row.delta_E) / h;
        }
        rows.push_back(row);
    }
    return rows;
}

std::string format_double(double v) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(16) << v;
    return os.str();
}

void write_trace_csv(std::ostream& os, const EnergyTrace& trace) {
    os << "n,t,energy,measured_drop,theoretical_drop,rel_gap\n";
    for (const auto& r : trace.records) {
        os << r.n << ',' << format_double(r.t) << ',' << format_double(r.energy) << ',' << format_double(r.measured_drop)
           << ',' << format_double(r.theoretical_drop) << ',' << format_double(r.rel_gap) << '\n';
    }
}

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
    os << "tau,l2_error,order,delta_E,de_order\n";
    for (const auto& r : rows) {
        os << format_double(r.tau) << ',' << format_double(r.l2_error) << ',' << format_double(r.order) << ','
           << format_double(r.delta_E) << ',' << format_double(r.de_order) << '\n';
    }
}

}  // namespace rkenergy
