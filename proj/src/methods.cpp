#include "rkenergy/methods.hpp"

#include "rkenergy/combinatorics.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <utility>

namespace rkenergy {

namespace {

std::size_t degree(const std::vector<Rational>& c) {
    std::size_t d = c.size();
    while (d > 1 && c[d - 1].is_zero()) --d;
    return d == 0 ? 0 : d - 1;
}

// Coefficients of the interpolating polynomial through (nodes[i], values[i])
// via Newton divided differences expanded to the monomial basis.
std::vector<Rational> interpolate(const std::vector<Rational>& nodes, std::vector<Rational> values) {
    const std::size_t n = nodes.size();
    for (std::size_t level = 1; level < n; ++level) {
        for (std::size_t i = n - 1; i >= level; --i) {
            values[i] = (values[i] - values[i - 1]) / (nodes[i] - nodes[i - level]);
        }
    }
    std::vector<Rational> coeffs(n);
    // Horner on the Newton form: c <- c * (z - x_k) + a_k, from the top.
    for (std::size_t k = n; k-- > 0;) {
        std::vector<Rational> next(n);
        for (std::size_t j = 0; j + 1 < n; ++j) next[j + 1] += coeffs[j];
        for (std::size_t j = 0; j < n; ++j) next[j] -= nodes[k] * coeffs[j];
        next[0] += values[k];
        coeffs = std::move(next);
    }
    return coeffs;
}

long parse_decimal_int(std::string_view text, std::string_view whole) {
    long value = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end || value < 0) {
        throw UnknownMethod("malformed method name '" + std::string(whole) + "'; " + builtin_method_grammar());
    }
    return value;
}

std::string strip_comment(const std::string& line) {
    auto hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

}  // namespace

StabilityFunction StabilityFunction::from_coefficients(std::vector<Rational> numerator,
                                                       std::vector<Rational> denominator,
                                                       std::string name) {
    if (numerator.empty() || denominator.empty() || numerator[0] != 1 || denominator[0] != 1) {
        throw ContractViolation("stability function coefficients must start with 1");
    }
    StabilityFunction sf;
    sf.s_p = degree(numerator);
    sf.s_q = degree(denominator);
    sf.s = std::max(sf.s_p, sf.s_q);
    numerator.resize(sf.s + 1);
    denominator.resize(sf.s + 1);
    sf.theta = std::move(numerator);
    sf.vartheta = std::move(denominator);
    sf.name = std::move(name);
    return sf;
}

ButcherTableau parse_butcher(std::istream& in) {
    std::vector<std::vector<Rational>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream tokens(strip_comment(line));
        std::vector<Rational> row;
        std::string token;
        while (tokens >> token) row.push_back(Rational::parse(token));
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty() || rows[0].size() != 1 || !rows[0][0].is_integer() || rows[0][0].sign() <= 0) {
        throw ContractViolation("butcher file must start with a positive stage count");
    }
    const auto stages = static_cast<std::size_t>(rows[0][0].numerator().get_ui());
    if (rows.size() != stages + 2) throw ContractViolation("butcher file must contain s rows of A followed by b");
    ButcherTableau t{RationalMatrix(stages, stages), {}};
    for (std::size_t i = 0; i < stages; ++i) {
        if (rows[i + 1].size() != stages) throw ContractViolation("butcher row of A has wrong length");
        for (std::size_t j = 0; j < stages; ++j) t.A(i, j) = rows[i + 1][j];
    }
    if (rows.back().size() != stages) throw ContractViolation("butcher weights b have wrong length");
    t.b = rows.back();
    return t;
}

StabilityFunction make_pade(std::size_t m, std::size_t n) {
    if (m + n == 0) throw ContractViolation("pade approximant requires m + n >= 1");
    const long M = static_cast<long>(m);
    const long N = static_cast<long>(n);
    const Rational total = factorial(M + N);
    std::vector<Rational> theta(m + 1);
    std::vector<Rational> vartheta(n + 1);
    for (long i = 0; i <= M; ++i) {
        theta[i] = factorial(M + N - i) * factorial(M) / (total * factorial(i) * factorial(M - i));
    }
    for (long i = 0; i <= N; ++i) {
        const Rational magnitude = factorial(M + N - i) * factorial(N) / (total * factorial(i) * factorial(N - i));
        vartheta[i] = i % 2 == 0 ? magnitude : -magnitude;
    }
    return StabilityFunction::from_coefficients(std::move(theta), std::move(vartheta),
                                                "pade:" + std::to_string(m) + "," + std::to_string(n));
}

StabilityFunction make_taylor(std::size_t p) {
    if (p == 0) throw ContractViolation("taylor polynomial requires p >= 1");
    std::vector<Rational> theta(p + 1);
    for (std::size_t i = 0; i <= p; ++i) theta[i] = factorial(static_cast<long>(i)).inverse();
    return StabilityFunction::from_coefficients(std::move(theta), {Rational(1)}, "taylor:" + std::to_string(p));
}

StabilityFunction from_butcher(const ButcherTableau& tableau, std::string name) {
    const std::size_t stages = tableau.stages();
    if (stages == 0 || tableau.A.rows() != stages || tableau.A.cols() != stages) {
        throw ContractViolation("inconsistent butcher tableau dimensions");
    }
    // Nodes 0, 1, -1, 2, -2, ...
    std::vector<Rational> nodes;
    for (long k = 0; nodes.size() < 2 * stages + 1; ++k) {
        if (k == 0) {
            nodes.emplace_back(0);
        } else {
            nodes.emplace_back(k);
            if (nodes.size() < 2 * stages + 1) nodes.emplace_back(-k);
        }
    }
    std::vector<Rational> p_values;
    std::vector<Rational> q_values;
    for (const Rational& z : nodes) {
        RationalMatrix q = RationalMatrix::identity(stages) - z * tableau.A;
        RationalMatrix p = q;
        for (std::size_t i = 0; i < stages; ++i)
            for (std::size_t j = 0; j < stages; ++j) p(i, j) += z * tableau.b[j];
        p_values.push_back(determinant(std::move(p)));
        q_values.push_back(determinant(std::move(q)));
    }
    return StabilityFunction::from_coefficients(interpolate(nodes, std::move(p_values)),
                                                interpolate(nodes, std::move(q_values)), std::move(name));
}

ButcherTableau qin_zhang_tableau() {
    return {RationalMatrix{{Rational(1, 4), 0}, {Rational(1, 2), Rational(1, 4)}}, {Rational(1, 2), Rational(1, 2)}};
}

ButcherTableau kraaijevanger_spijker_tableau() {
    return {RationalMatrix{{Rational(1, 2), 0}, {Rational(-1, 2), 2}}, {Rational(-1, 2), Rational(3, 2)}};
}

std::string builtin_method_grammar() {
    return "valid names: euler-backward, crank-nicolson, qin-zhang, kraaijevanger-spijker, "
           "pade:M,N (M+N >= 1), taylor:P (P >= 1)";
}

StabilityFunction builtin(std::string_view name) {
    if (name == "euler-backward") {
        return StabilityFunction::from_coefficients({1}, {1, -1}, "euler-backward");
    }
    if (name == "crank-nicolson") {
        auto sf = make_pade(1, 1);
        sf.name = "crank-nicolson";
        return sf;
    }
    if (name == "qin-zhang") return from_butcher(qin_zhang_tableau(), "qin-zhang");
    if (name == "kraaijevanger-spijker") return from_butcher(kraaijevanger_spijker_tableau(), "kraaijevanger-spijker");
    if (name.starts_with("pade:")) {
        const auto args = name.substr(5);
        const auto comma = args.find(',');
        if (comma == std::string_view::npos) {
            throw UnknownMethod("malformed method name '" + std::string(name) + "'; " + builtin_method_grammar());
        }
        const long m = parse_decimal_int(args.substr(0, comma), name);
        const long n = parse_decimal_int(args.substr(comma + 1), name);
        if (m + n == 0) throw UnknownMethod("pade:0,0 is not a method; " + builtin_method_grammar());
        return make_pade(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
    }
    if (name.starts_with("taylor:")) {
        const long p = parse_decimal_int(name.substr(7), name);
        if (p == 0) throw UnknownMethod("taylor:0 is not a method; " + builtin_method_grammar());
        return make_taylor(static_cast<std::size_t>(p));
    }
    throw UnknownMethod("unknown method '" + std::string(name) + "'; " + builtin_method_grammar());
}

std::size_t approximation_order(const StabilityFunction& sf) {
    const std::size_t cap = 2 * sf.s + 2;
    auto coeff = [](const std::vector<Rational>& c, std::size_t i) { return i < c.size() ? c[i] : Rational(0); };
    std::size_t p = 0;
    while (p < cap) {
        const std::size_t k = p + 1;
        Rational sum = 0;
        for (std::size_t l = 0; l <= k; ++l) {
            sum += coeff(sf.vartheta, l) / factorial(static_cast<long>(k - l));
        }
        if (sum != coeff(sf.theta, k)) break;
        p = k;
    }
    return p;
}

}  // namespace rkenergy
