// rkenergy: analyze, verify, simulate and converge from the command line.
//
// Exit codes: 0 success, 1 verification or numerical failure, 2 usage error.

#include "rkenergy/continuum.hpp"
#include "rkenergy/energy.hpp"
#include "rkenergy/methods.hpp"
#include "rkenergy/pade.hpp"
#include "rkenergy/simulator.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace rkenergy;
using nlohmann::ordered_json;

namespace {

constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CliConfig {
    std::string format = "text";
    std::string output;
    std::uint64_t seed = 0;

    std::string method;
    std::string butcher;

    std::string system = "example1";
    std::size_t cells = 20;
    double tau = 0.1;
    std::optional<double> t_end;
    std::optional<std::size_t> steps;
    std::vector<double> taus{1.6, 0.8, 0.4, 0.2};

    std::string scope = "all";
    std::optional<long> s_max;
    long n_max = 20;
    long p_max = 10;
    std::string samples;
};

/// Writes to --output when given, stdout otherwise.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw UsageError("cannot open output file " + path);
        }
    }
    std::ostream& out() { return file_ ? *file_ : std::cout; }
    [[nodiscard]] bool to_file() const { return file_ != nullptr; }

private:
    std::unique_ptr<std::ofstream> file_;
};

ordered_json to_json(const std::vector<Rational>& v) {
    auto arr = ordered_json::array();
    for (const auto& r : v) arr.push_back(r.to_string());
    return arr;
}

ordered_json to_json(const RationalMatrix& m) {
    auto rows = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto row = ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
        rows.push_back(row);
    }
    return rows;
}

std::string join(const std::vector<Rational>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_string();
    return s + ")";
}

StabilityFunction resolve_method(const CliConfig& cfg) {
    if (!cfg.butcher.empty()) {
        std::ifstream in(cfg.butcher);
        if (!in) throw UsageError("cannot open Butcher file " + cfg.butcher);
        return from_butcher(parse_butcher(in), cfg.butcher);
    }
    if (cfg.method.empty()) throw UsageError("one of --method or --butcher is required");
    return builtin(cfg.method);
}

/// Builtin examples plus random:DIM, seeded by --seed.
SeminegativeSystem resolve_system(const CliConfig& cfg) {
    const std::string prefix = "random:";
    if (cfg.system.rfind(prefix, 0) == 0) {
        std::size_t dim = 0;
        try {
            dim = std::stoul(cfg.system.substr(prefix.size()));
        } catch (const std::exception&) {
            throw UsageError("bad system " + cfg.system + "; expected random:DIM");
        }
        if (dim == 0) throw UsageError("random system dimension must be positive");
        std::mt19937_64 rng(cfg.seed);
        return random_seminegative_system(dim, rng);
    }
    return example_system(cfg.system, cfg.cells);
}

int cmd_analyze(const CliConfig& cfg) {
    if (cfg.format == "csv") throw UsageError("analyze supports --format text or json");
    const auto a = analyze(resolve_method(cfg));
    const auto& ec = a.coefficients;
    const auto& dec = a.decomposition;
    const auto& rep = a.report;
    const std::string law = render_energy_law(a.terms);
    Sink sink(cfg.output);
    auto& os = sink.out();
    if (cfg.format == "json") {
        ordered_json j;
        j["method"] = a.method.name;
        j["s"] = a.method.s;
        j["theta"] = to_json(a.method.theta);
        j["vartheta"] = to_json(a.method.vartheta);
        j["alpha"] = to_json(ec.alpha);
        j["beta"] = to_json(ec.beta);
        j["gamma"] = to_json(ec.gamma);
        j["delta"] = to_json(dec.delta);
        j["d_tilde"] = to_json(dec.d_tilde);
        j["u_tilde"] = to_json(dec.U_tilde);
        j["zeta"] = rep.zeta ? ordered_json(*rep.zeta) : ordered_json(nullptr);
        j["rho"] = rep.rho;
        j["kappa"] = rep.kappa;
        j["classification"] = describe(rep);
        j["energy_law"] = law;
        os << j.dump(2) << '\n';
        return 0;
    }
    os << "method          " << a.method.name << '\n'
       << "s               " << a.method.s << '\n'
       << "theta           " << join(a.method.theta) << '\n'
       << "vartheta        " << join(a.method.vartheta) << '\n'
       << "beta            " << join(ec.beta) << '\n'
       << "gamma\n"
       << ec.gamma.to_string() << '\n'
       << "delta           " << join(dec.delta) << '\n'
       << "d_tilde         " << join(dec.d_tilde) << '\n'
       << "U_tilde\n"
       << dec.U_tilde.to_string() << '\n'
       << "zeta            " << (rep.zeta ? std::to_string(*rep.zeta) : std::string("inf")) << '\n'
       << "rho             " << rep.rho << '\n'
       << "kappa           " << rep.kappa << '\n'
       << "classification  " << describe(rep) << '\n'
       << "energy law      |u^{n+1}|² - |u^n|² = " << law << '\n';
    return 0;
}

struct VerifyRow {
    std::string check;
    ordered_json parameters;
    bool passed;
    std::optional<std::string> counterexample;
};

VerifyRow from_identity(const IdentityCheck& c, ordered_json parameters) {
    return {c.name, std::move(parameters), c.passed, c.counterexample};
}

std::vector<ExtendedParameter> parse_samples(const std::string& text) {
    if (text.empty()) return default_extended_samples();
    std::vector<ExtendedParameter> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.emplace_back(Rational::parse(item));
        } catch (const DomainError& e) {
            throw UsageError("sample " + item + ": " + e.what());
        } catch (const std::invalid_argument& e) {
            throw UsageError("sample " + item + " is not a rational");
        }
    }
    if (out.empty()) throw UsageError("--samples is empty");
    return out;
}

std::vector<VerifyRow> run_verification(const CliConfig& cfg) {
    const std::vector<std::string> scopes{"pade-cholesky", "cross-route", "hilbert",     "identities",
                                          "binomial",      "mu-continuum", "all"};
    if (std::find(scopes.begin(), scopes.end(), cfg.scope) == scopes.end()) {
        throw UsageError("unknown scope " + cfg.scope);
    }
    if (cfg.s_max && *cfg.s_max < 1) throw UsageError("--s-max must be at least 1");
    if (cfg.n_max < 0 || cfg.p_max < 1) throw UsageError("--n-max must be >= 0 and --p-max >= 1");
    const auto wants = [&](const char* s) { return cfg.scope == "all" || cfg.scope == s; };
    const auto samples = parse_samples(cfg.samples);
    std::vector<VerifyRow> rows;

    if (wants("pade-cholesky")) {
        for (long s = 1; s <= cfg.s_max.value_or(20); ++s) {
            const auto residual = verify_pade_cholesky(s);
            std::optional<std::string> where;
            for (std::size_t i = 0; i < residual.rows() && !where; ++i)
                for (std::size_t j = 0; j < residual.cols() && !where; ++j)
                    if (!residual(i, j).is_zero()) {
                        where = "s=" + std::to_string(s) + " i=" + std::to_string(i) + " j=" + std::to_string(j) +
                                " residual=" + residual(i, j).to_string();
                    }
            rows.push_back({"pade-cholesky", {{"s", s}}, !where, where});
        }
    }
    if (wants("cross-route")) {
        for (long s = 1; s <= cfg.s_max.value_or(12); ++s) {
            const auto gamma = beta_gamma(make_pade(s, s)).gamma;
            std::optional<std::string> where;
            for (long i = 0; i < s && !where; ++i)
                for (long j = 0; j < s && !where; ++j)
                    if (pade_gamma_direct(s, i, j) != gamma(i, j)) {
                        where = "s=" + std::to_string(s) + " i=" + std::to_string(i) + " j=" + std::to_string(j);
                    }
            rows.push_back({"cross-route", {{"s", s}}, !where, where});
        }
    }
    if (wants("hilbert")) {
        for (long n = 0; n <= cfg.n_max; ++n) {
            const bool ok = verify_hilbert_cholesky(static_cast<std::size_t>(n)).is_zero();
            rows.push_back({"hilbert", {{"N", n}},
                            ok, ok ? std::nullopt : std::optional<std::string>("N=" + std::to_string(n))});
        }
    }
    if (wants("identities")) {
        const long p = cfg.p_max;
        for (const auto& x : samples) {
            const ordered_json params{{"x", x.to_string()}, {"p_max", p}};
            rows.push_back(from_identity(verify_extended_residual(x, p), params));
            rows.push_back(from_identity(verify_nu_theta_relations(x, p, p), params));
            rows.push_back(from_identity(verify_phi_sum_and_pairing(x, p, p, p + 2),
                                         {{"x", x.to_string()}, {"p_max", p}, {"n_max", p + 2}}));
        }
        std::vector<Rational> xs;
        for (const auto& x : samples) xs.push_back(x.value());
        const std::vector<long> ints{p, p + 1, 2 * p + 1};
        rows.push_back(from_identity(verify_pochhammer_identities(xs, ints, p), {{"n_max", p}, {"integers", ints}}));
    }
    if (wants("binomial")) {
        for (long s = 1; s <= cfg.s_max.value_or(15); ++s)
            rows.push_back(from_identity(verify_binomial_sum_identity(s), {{"s", s}}));
    }
    if (wants("mu-continuum")) {
        for (long s = 1; s <= cfg.s_max.value_or(12); ++s)
            rows.push_back(from_identity(verify_mu_from_continuum(s), {{"s", s}}));
    }
    return rows;
}

int cmd_verify(const CliConfig& cfg) {
    const auto rows = run_verification(cfg);
    Sink sink(cfg.output);
    auto& os = sink.out();
    bool all = true;
    if (cfg.format == "csv") os << "check,parameters,status,counterexample\n";
    for (const auto& r : rows) {
        all = all && r.passed;
        const std::string status = r.passed ? "pass" : "fail";
        if (cfg.format == "json") {
            ordered_json j{{"check", r.check}, {"parameters", r.parameters}, {"status", status}};
            if (r.counterexample) j["counterexample"] = *r.counterexample;
            os << j.dump() << '\n';
        } else if (cfg.format == "csv") {
            std::string params = r.parameters.dump();
            std::string quoted;
            for (char c : params) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
            os << r.check << ",\"" << quoted << "\"," << status << ',' << r.counterexample.value_or("") << '\n';
        } else {
            os << (r.passed ? "PASS " : "FAIL ") << r.check << ' ' << r.parameters.dump();
            if (r.counterexample) os << "  counterexample: " << *r.counterexample;
            os << '\n';
        }
    }
    if (cfg.format == "text") os << (all ? "all checks passed" : "verification FAILED") << '\n';
    return all ? 0 : kFailure;
}

std::size_t step_count(const CliConfig& cfg, double default_t_end) {
    if (cfg.tau <= 0 || !std::isfinite(cfg.tau)) throw UsageError("--tau must be positive");
    if (cfg.steps) return *cfg.steps;
    const double t_end = cfg.t_end.value_or(default_t_end);
    if (t_end < 0) throw UsageError("--t-end must be nonnegative");
    const double n = t_end / cfg.tau;
    if (std::abs(n - std::round(n)) > 1e-9 * std::max(1.0, n)) {
        throw UsageError("--t-end must be an integer multiple of --tau");
    }
    return static_cast<std::size_t>(std::llround(n));
}

int cmd_simulate(const CliConfig& cfg) {
    const auto sf = resolve_method(cfg);
    const auto sys = resolve_system(cfg);
    const std::size_t n = step_count(cfg, 4.0);
    const auto trace = energy_trace(sf, sys, cfg.tau, n, sys.initial_state);

    std::size_t growth_steps = 0;
    for (const auto& r : trace.records) growth_steps += r.measured_drop < 0 ? 1 : 0;
    const double e0 = trace.records.empty() ? trace.final_energy : trace.records.front().energy;

    Sink sink(cfg.output);
    auto& os = sink.out();
        if (cfg.format == "json") {
        ordered_json j;
        j["method"] = sf.name;
        j["system"] = sys.name;
        j["dim"] = sys.dim;
        j["tau"] = cfg.tau;
        j["steps"] = n;
        j["initial_energy"] = e0;
        j["final_energy"] = trace.final_energy;
        j["max_rel_gap"] = trace.max_rel_gap();
        j["monotone"] = trace.monotone();
        j["growth_steps"] = growth_steps;
        auto recs = ordered_json::array();
        for (const auto& r : trace.records) {
            recs.push_back({{"n", r.n},
                            {"t", r.t},
                            {"energy", r.energy},
                            {"measured_drop", r.measured_drop},
                            {"theoretical_drop", r.theoretical_drop},
                            {"rel_gap", r.rel_gap}});
        }
        j["records"] = recs;
        os << j.dump(2) << '\n';
        return 0;
    }
    write_trace_csv(os, trace);
    std::ostream& summary = sink.to_file() ? std::cout : std::cerr;
    summary << "method " << sf.name << ", system " << sys.name << " (dim " << sys.dim << "), tau " << cfg.tau << ", "
            << n << " steps\n"
            << "energy " << format_double(e0) << " -> " << format_double(trace.final_energy) << '\n'
            << "max relative gap " << format_double(trace.max_rel_gap()) << '\n';
    if (growth_steps > 0) {
        summary << "energy growth in " << growth_steps << " of " << n << " steps\n";
    } else {
        summary << "energy nonincreasing in every step\n";
    }
    return 0;
}

int cmd_converge(const CliConfig& cfg) {
    const auto sf = resolve_method(cfg);
    const auto sys = resolve_system(cfg);
    if (cfg.taus.empty()) throw UsageError("--taus is empty");
    for (double t : cfg.taus)
        if (!(t > 0)) throw UsageError("--taus must be positive");
    const auto rows = convergence_study(sf, sys, sys.initial_state, cfg.t_end.value_or(8.0), cfg.taus);
    Sink sink(cfg.output);
    auto& os = sink.out();
    if (cfg.format == "json") {
        auto arr = ordered_json::array();
        for (const auto& r : rows) {
            const auto num = [](double v) { return std::isnan(v) ? ordered_json(nullptr) : ordered_json(v); };
            arr.push_back({{"tau", r.tau},
                           {"l2_error", r.l2_error},
                           {"order", num(r.order)},
                           {"delta_E", r.delta_E},
                           {"de_order", num(r.de_order)}});
        }
        os << ordered_json{{"method", sf.name}, {"system", sys.name}, {"rows", arr}}.dump(2) << '\n';
    } else if (cfg.format == "csv") {
        write_convergence_csv(os, rows);
    } else {
        os << "method " << sf.name << ", system " << sys.name << '\n';
        char line[160];
        std::snprintf(line, sizeof line, "%8s  %12s  %7s  %12s  %7s\n", "tau", "l2 error", "order", "|dE|", "order");
        os << line;
        for (const auto& r : rows) {
            std::snprintf(line, sizeof line, "%8.4g  %12.3e  %7.2f  %12.3e  %7.2f\n", r.tau, r.l2_error, r.order,
                          r.delta_E, r.de_order);
            os << line;
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Energy analysis of Runge-Kutta stability functions on seminegative linear systems"};
    app.require_subcommand(1);
    CliConfig cfg;

    const auto shared = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "Output format")
            ->check(CLI::IsMember({"text", "json", "csv"}))
            ->capture_default_str();
        sub->add_option("--output,-o", cfg.output, "Write output to this file instead of stdout");
        sub->add_option("--seed", cfg.seed, "Seed for random systems")->capture_default_str();
    };
    const auto method_flags = [&](CLI::App* sub) {
        auto* m = sub->add_option("--method,-m", cfg.method, builtin_method_grammar());
        auto* b = sub->add_option("--butcher", cfg.butcher, "Butcher tableau file");
        m->excludes(b);
    };
    const auto system_flags = [&](CLI::App* sub) {
        sub->add_option("--system", cfg.system, "example1, skew2, dg-advection, ldg-dispersion or random:DIM")
            ->capture_default_str();
        sub->add_option("--cells", cfg.cells, "Cells for the DG examples")->capture_default_str();
    };

    auto* analyze_cmd = app.add_subcommand("analyze", "Energy coefficients, decomposition and classification");
    shared(analyze_cmd);
    method_flags(analyze_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "Exact verification of the closed-form identities");
    shared(verify_cmd);
    verify_cmd
        ->add_option("--scope", cfg.scope,
                     "pade-cholesky, cross-route, hilbert, identities, binomial, mu-continuum or all")
        ->capture_default_str();
    verify_cmd->add_option("--s-max", cfg.s_max, "Largest s (defaults: 20, 12, 15, 12 by scope)");
    verify_cmd->add_option("--n-max", cfg.n_max, "Largest Hilbert order")->capture_default_str();
    verify_cmd->add_option("--p-max", cfg.p_max, "Largest index for extended identities")->capture_default_str();
    verify_cmd->add_option("--samples", cfg.samples, "Comma-separated rationals x with 2x not an integer");

    auto* simulate_cmd = app.add_subcommand("simulate", "Energy trace of a time integration");
    shared(simulate_cmd);
    method_flags(simulate_cmd);
    system_flags(simulate_cmd);
    simulate_cmd->add_option("--tau", cfg.tau, "Step size")->capture_default_str();
    auto* t_end = simulate_cmd->add_option("--t-end", cfg.t_end, "Final time (default 4)");
    simulate_cmd->add_option("--steps", cfg.steps, "Number of steps")->excludes(t_end);

    auto* converge_cmd = app.add_subcommand("converge", "Errors and observed orders against the exact solution");
    shared(converge_cmd);
    method_flags(converge_cmd);
    system_flags(converge_cmd);
    converge_cmd->add_option("--t-end", cfg.t_end, "Final time (default 8)");
    converge_cmd->add_option("--taus", cfg.taus, "Step sizes")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (analyze_cmd->parsed()) return cmd_analyze(cfg);
        if (verify_cmd->parsed()) return cmd_verify(cfg);
        if (simulate_cmd->parsed()) return cmd_simulate(cfg);
        return cmd_converge(cfg);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const UnknownMethod& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ContractViolation& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const StepFailure& e) {
        std::cerr << "step failure: " << e.what() << '\n';
        return kFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    }
}
