// Copyright 2026 The ipt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ipt/repart.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

#include "ipt/certify.hpp"
#include "ipt/errors.hpp"
#include "ipt/master.hpp"

namespace ipt {

std::string convention_name(SignConvention c) {
    return c == SignConvention::binor_crossing ? "binor" : "swap";
}

SignConvention parse_convention(std::string_view text) {
    if (text == "binor" || text == "binor_crossing") {
        return SignConvention::binor_crossing;
    }
    if (text == "swap" || text == "plain_swap") {
        return SignConvention::plain_swap;
    }
    throw Error(ErrorCode::parse_error, "unknown sign convention '" + std::string(text) + "'");
}

std::string Move::to_string() const {
    if (pstar) {
        return "P*";
    }
    if (position + 1 >= 10) {
        return "P" + std::to_string(position) + "," + std::to_string(position + 1);
    }
    return "P" + std::to_string(position) + std::to_string(position + 1);
}

namespace {

int parse_leg(const std::string &digits, const std::string &token) {
    if (digits.empty() || digits.size() > 6 ||
        !std::all_of(digits.begin(), digits.end(), [](unsigned char ch) { return std::isdigit(ch); })) {
        throw Error(ErrorCode::parse_error, "bad move '" + token + "'");
    }
    return std::stoi(digits);
}

Move parse_move(const std::string &token) {
    if (token == "P*") {
        return Move{true, 0};
    }
    if (token.size() < 3 || token[0] != 'P') {
        throw Error(ErrorCode::parse_error, "bad move '" + token + "'");
    }
    std::string body = token.substr(1);
    int first = 0, second = 0;
    auto comma = body.find(',');
    if (comma != std::string::npos) {
        first = parse_leg(body.substr(0, comma), token);
        second = parse_leg(body.substr(comma + 1), token);
    } else if (body.size() == 2) {
        first = parse_leg(body.substr(0, 1), token);
        second = parse_leg(body.substr(1, 1), token);
    } else {
        throw Error(ErrorCode::parse_error, "ambiguous move '" + token + "', separate the legs with a comma");
    }
    if (first < 1 || second != first + 1) {
        throw Error(ErrorCode::parse_error, "move '" + token + "' must exchange neighbouring legs");
    }
    return Move{false, first};
}

// Dimension ratio picked up when a closed path passes x then y.
Rational step_factor(Spin x, Spin y) {
    return y > x ? Rational(y.dim(), x.dim()) : Rational(1);
}

void require_even(int valence) {
    if (valence < 2 || valence % 2 != 0) {
        throw Error(ErrorCode::odd_valence, "repartitions act on an even valence, got " + std::to_string(valence));
    }
}

RationalMatrix with_convention(RationalMatrix m, SignConvention c) {
    return c == SignConvention::binor_crossing ? -m : m;
}

}  // namespace

Word parse_word(std::string_view text) {
    std::istringstream in{std::string(text)};
    Word w;
    std::string token;
    while (in >> token) {
        w.push_back(parse_move(token));
    }
    if (w.empty()) {
        throw Error(ErrorCode::parse_error, "empty permutation word");
    }
    return w;
}

std::string to_string(const Word &w) {
    std::string out;
    for (const auto &m : w) {
        if (!out.empty()) {
            out += " ";
        }
        out += m.to_string();
    }
    return out;
}

RationalMatrix swap_matrix(int valence, int n1, int position) {
    if (position < 1 || position >= valence) {
        throw Error(ErrorCode::invalid_argument, "no leg pair at position " + std::to_string(position));
    }
    auto labels = bridge_basis(valence, n1);
    std::vector<std::vector<Spin>> paths;
    for (const auto &l : labels) {
        paths.push_back(l.closed_path());
    }
    const std::size_t m = labels.size();
    const std::size_t p = static_cast<std::size_t>(position);
    RationalMatrix r = RationalMatrix::identity(m);
    for (std::size_t col = 0; col < m; ++col) {
        const auto &mu = paths[col];
        const Spin x = mu[p - 1];
        if (x != mu[p + 1]) {
            continue;
        }
        const Rational loop = step_factor(x, mu[p]);
        for (std::size_t row = 0; row < m; ++row) {
            const auto &nu = paths[row];
            if (!std::equal(nu.begin(), nu.begin() + p, mu.begin()) ||
                !std::equal(nu.begin() + p + 1, nu.end(), mu.begin() + p + 1)) {
                continue;
            }
            const Spin y = nu[p];
            r(row, col) -= loop * (y > x ? Rational(1) : Rational(y.dim(), x.dim()));
        }
    }
    return r;
}

RepartitionMatrix pstar_matrix(int valence, SignConvention c) {
    require_even(valence);
    RepartitionMatrix r;
    r.valence = valence;
    r.word = {Move{true, valence / 2}};
    r.labels = bridge_basis(valence, valence / 2);
    r.matrix = with_convention(swap_matrix(valence, valence / 2, valence / 2), c);
    r.convention = c;
    return r;
}

RepartitionMatrix trivial_swap_matrix(int valence, int first_leg, int second_leg, SignConvention c) {
    require_even(valence);
    if (second_leg != first_leg + 1 || first_leg < 1 || second_leg > valence) {
        throw Error(ErrorCode::invalid_argument, "legs " + std::to_string(first_leg) + "," +
                                                     std::to_string(second_leg) + " are not a neighbouring pair");
    }
    if (first_leg == valence / 2) {
        throw Error(ErrorCode::crosses_bridge, "legs " + std::to_string(first_leg) + "," +
                                                   std::to_string(second_leg) + " sit on opposite sides, use P*");
    }
    RepartitionMatrix r;
    r.valence = valence;
    r.word = {Move{false, first_leg}};
    r.labels = bridge_basis(valence, valence / 2);
    r.matrix = with_convention(swap_matrix(valence, valence / 2, first_leg), c);
    r.convention = c;
    return r;
}

RepartitionMatrix compose(int valence, const Word &word, SignConvention c) {
    require_even(valence);
    if (word.empty()) {
        throw Error(ErrorCode::invalid_argument, "empty permutation word");
    }
    RepartitionMatrix out;
    out.valence = valence;
    out.labels = bridge_basis(valence, valence / 2);
    out.matrix = RationalMatrix::identity(out.labels.size());
    out.convention = c;
    for (const auto &m : word) {
        RepartitionMatrix f = m.pstar ? pstar_matrix(valence, c)
                                      : trivial_swap_matrix(valence, m.position, m.position + 1, c);
        out.matrix = out.matrix * f.matrix;
        out.word.push_back(f.word.front());
    }
    return out;
}

RepartitionMatrix reversed(const RepartitionMatrix &r) {
    Word w(r.word.rbegin(), r.word.rend());
    return compose(r.valence, w, r.convention);
}

NumericRepartition numeric_repart_matrix(int valence, const std::vector<int> &permutation) {
    require_even(valence);
    std::vector<int> sorted = permutation;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> expected(valence);
    std::iota(expected.begin(), expected.end(), 1);
    if (sorted != expected) {
        throw Error(ErrorCode::invalid_argument, "not a permutation of legs 1.." + std::to_string(valence));
    }
    NumericRepartition out;
    out.valence = valence;
    out.permutation = permutation;
    out.labels = bridge_basis(valence, valence / 2);
    const auto m = static_cast<Eigen::Index>(out.labels.size());
    out.matrix = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index col = 0; col < m; ++col) {
        LabeledTensor moved = permute_legs(build_bridge_state(out.labels[col]), permutation);
        Decomposition d;
        try {
            d = decompose(moved, valence / 2, 1e-8);
        } catch (const Error &e) {
            throw Error(ErrorCode::projection_residual, "permuted bridge state " + out.labels[col].to_string() +
                                                            " left the invariant span");
        }
        out.max_residual = std::max(out.max_residual, d.residual);
        for (Eigen::Index row = 0; row < m; ++row) {
            const Complex v = d.coefficients.values[row];
            if (std::abs(v.imag()) > 1e-8) {
                throw Error(ErrorCode::projection_residual, "complex repartition entry");
            }
            out.matrix(row, col) = v.real();
        }
    }
    return out;
}

std::optional<int> global_sign(const RationalMatrix &exact, const Eigen::MatrixXd &numeric, double tolerance) {
    Eigen::MatrixXd e = exact.to_eigen();
    if (e.rows() != numeric.rows() || e.cols() != numeric.cols()) {
        return std::nullopt;
    }
    if ((numeric - e).cwiseAbs().maxCoeff() < tolerance) {
        return 1;
    }
    if ((numeric + e).cwiseAbs().maxCoeff() < tolerance) {
        return -1;
    }
    return std::nullopt;
}

bool preserves_theta_norm(const RepartitionMatrix &r) {
    const std::size_t m = r.labels.size();
    RationalMatrix theta_diag(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        theta_diag(i, i) = label_theta(r.labels[i]);
    }
    return r.matrix.transpose() * theta_diag * r.matrix == theta_diag;
}

std::string shift_verdict_name(ShiftVerdict v) {
    switch (v) {
        case ShiftVerdict::pass: return "pass";
        case ShiftVerdict::fail: return "fail";
        case ShiftVerdict::no_op: return "noop";
    }
    return "unknown";
}

ShiftCheck unbalanced_shift_check(const LabeledTensor &t, const Bipartition &p, double tolerance) {
    const std::size_t n = t.rank();
    validate_bipartition(p, n);
    ShiftCheck out;
    out.before = p;
    if (n < 3 || p.a.empty()) {
        out.verdict = ShiftVerdict::no_op;
        return out;
    }
    out.moved_leg = p.a.back();
    std::vector<int> smaller(p.a.begin(), p.a.end() - 1);
    out.after = make_bipartition(static_cast<int>(n), smaller);
    out.expected_ratio = t.legs()[out.moved_leg - 1].dim();
    DefectResult before = isometry_defect(t, p);
    out.lambda_before = before.lambda_est;
    out.defect_before = before.defect;
    if (smaller.empty()) {
        out.lambda_after = t.norm_squared();
        out.defect_after = 0;
    } else {
        DefectResult after = isometry_defect(t, out.after);
        out.lambda_after = after.lambda_est;
        out.defect_after = after.defect;
    }
    out.lambda_ratio = out.lambda_after / out.lambda_before;
    const bool isometric = out.defect_before < tolerance && out.defect_after < tolerance;
    const bool ratio_ok = std::abs(out.lambda_ratio - out.expected_ratio) < tolerance * out.expected_ratio;
    out.verdict = isometric && ratio_ok ? ShiftVerdict::pass : ShiftVerdict::fail;
    return out;
}

namespace {

std::optional<Rational> exact_sqrt(const Rational &q) {
    if (q < 0) {
        return std::nullopt;
    }
    Integer num = numerator(q), den = denominator(q);
    Integer rn = boost::multiprecision::sqrt(num), rd = boost::multiprecision::sqrt(den);
    if (rn * rn != num || rd * rd != den) {
        return std::nullopt;
    }
    return Rational(rn, rd);
}

Rational abs_value(const Rational &q) {
    return q < 0 ? Rational(-q) : q;
}

// "coef symbol" with unit coefficients folded.
std::string term(const Rational &coef, const std::string &symbol) {
    if (coef == 1) return symbol;
    if (coef == -1) return "-" + symbol;
    return to_string(coef) + " " + symbol;
}

std::string linear_combination(const std::vector<std::pair<Rational, std::string>> &terms) {
    std::string out;
    for (const auto &[coef, symbol] : terms) {
        if (coef == 0) continue;
        if (out.empty()) {
            out = term(coef, symbol);
        } else if (coef < 0) {
            out += " - " + term(-coef, symbol);
        } else {
            out += " + " + term(coef, symbol);
        }
    }
    return out.empty() ? "0" : out;
}

std::string cosine_statement(const Rational &cos_value, const std::string &angle) {
    if (cos_value == 1) return angle + " = 0 (mod 2π)";
    if (cos_value == -1) return angle + " = π (mod 2π)";
    return "cos " + angle + " = " + to_string(cos_value);
}

std::size_t index_named(const std::vector<BridgeLabel> &labels, const std::string &name) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i].short_name() == name) {
            return i;
        }
    }
    throw Error(ErrorCode::label_mismatch, "no label " + name);
}

RepartitionMatrix word_matrix(int valence, const std::string &word, const Algorithm1Options &o) {
    RepartitionMatrix r = compose(valence, parse_word(word), o.convention);
    if (o.negate_matrices) {
        r.matrix = -r.matrix;
    }
    return r;
}

void master_steps(FeasibilityTrace &trace, int valence) {
    MasterSystem system = build_master_system(valence);
    for (const auto &eq : system.equations) {
        trace.steps.push_back({"impose master equation", eq.normalized().to_string(),
                               "master equations on the balanced split"});
    }
}

FeasibilityTrace run_valence2(const Algorithm1Options &o) {
    FeasibilityTrace trace;
    trace.valence = 2;
    master_steps(trace, 2);
    SolutionFamily family = solve_qubit_valence2();
    trace.steps.push_back({"solve", "c" + family.bound_entries[0].label.short_name() + " = " +
                                        family.bound_entries[0].expression,
                           "closed-form solution of the master equations"});
    RepartitionMatrix r = word_matrix(2, "P*", o);
    const Rational s = r.matrix(0, 0);
    trace.steps.push_back({"apply " + to_string(r.word),
                           "c̃(1/2) = " + term(s, "c(1/2)") + ", |c̃(1/2)|² = " + term(s * s, "λ"),
                           "bridge crossing"});
    const bool ok = s * s == 1;
    trace.steps.push_back({"re-impose master equation",
                           ok ? "|c̃(1/2)|² = λ holds for every φ" : "|c̃(1/2)|² = λ fails",
                           "master equations after the crossing"});
    trace.feasible = ok;
    trace.surviving_family = "c(1/2) = √λ exp(i φ): the identity map, unique up to phase";
    return trace;
}

FeasibilityTrace run_valence4(const Algorithm1Options &o) {
    FeasibilityTrace trace;
    trace.valence = 4;
    master_steps(trace, 4);
    MasterSystem system = build_master_system(4);
    const auto &labels = system.labels;
    // Each diagonal equation reads weight |c|^2 = rhs lambda.
    std::vector<Rational> w(labels.size());
    for (const auto &eq : system.equations) {
        const auto &t = eq.terms.front();
        w[std::find(labels.begin(), labels.end(), t.left) - labels.begin()] = t.weight / eq.rhs;
    }
    const std::string n0 = labels[0].short_name(), n1 = labels[1].short_name();
    auto modulus = [](const Rational &weight) {
        return weight == 1 ? std::string("√λ") : "√(λ/" + to_string(weight) + ")";
    };
    trace.steps.push_back({"solve", "c" + n0 + " = " + modulus(w[0]) + " exp(i φ" + n0 + "), c" + n1 + " = " +
                                        modulus(w[1]) + " exp(i φ" + n1 + ")",
                           "closed-form solution of the master equations"});
    const std::string angle = "Δφ";
    trace.steps.push_back({"gauge", angle + " = φ" + n0 + " - φ" + n1, "global phase freedom"});
    const auto root = exact_sqrt(w[0] * w[1]);
    if (!root) {
        throw Error(ErrorCode::invalid_argument, "irrational amplitude ratio");
    }
    std::vector<std::pair<Rational, std::string>> found;
    for (const std::string word : {"P*", "P34 P* P34"}) {
        RepartitionMatrix r = word_matrix(4, word, o);
        const auto &m = r.matrix;
        Rational a[2], b[2];
        for (int row = 0; row < 2; ++row) {
            a[row] = m(row, 0) * m(row, 0) / w[0] + m(row, 1) * m(row, 1) / w[1];
            b[row] = 2 * m(row, 0) * m(row, 1) / *root;
        }
        std::ostringstream mat;
        mat << "c̃" << n0 << " = " << linear_combination({{m(0, 0), "c" + n0}, {m(0, 1), "c" + n1}}) << ", c̃" << n1
            << " = " << linear_combination({{m(1, 0), "c" + n0}, {m(1, 1), "c" + n1}});
        trace.steps.push_back({"apply " + to_string(r.word), mat.str(), "repartition by " + to_string(r.word)});
        const Rational den = w[0] * b[0] - w[1] * b[1];
        if (den == 0) {
            trace.steps.push_back({"re-impose master equations", "no constraint on " + angle,
                                   "master equations after " + to_string(r.word)});
            continue;
        }
        const Rational cos_value = (w[1] * a[1] - w[0] * a[0]) / den;
        const Rational ratio = w[0] * (a[0] + b[0] * cos_value);
        trace.steps.push_back({"re-impose master equations",
                               cosine_statement(cos_value, angle) + ", λ̃ = " + term(ratio, "λ"),
                               "master equations after " + to_string(r.word)});
        if (abs_value(cos_value) > 1) {
            trace.contradiction = {cosine_statement(cos_value, angle), "|cos " + angle + "| <= 1"};
            return trace;
        }
        for (const auto &[prev, statement] : found) {
            if (prev != cos_value) {
                trace.contradiction = {statement, cosine_statement(cos_value, angle)};
                trace.steps.push_back({"intersect", trace.contradiction[0] + " and " + trace.contradiction[1],
                                       "constraints from both repartitions"});
                return trace;
            }
        }
        found.emplace_back(cos_value, cosine_statement(cos_value, angle));
    }
    trace.feasible = true;
    trace.surviving_family = "phase constraint " + (found.empty() ? std::string("none") : found.front().second);
    return trace;
}

FeasibilityTrace run_valence6(const Algorithm1Options &o) {
    FeasibilityTrace trace;
    trace.valence = 6;
    master_steps(trace, 6);
    SolutionFamily family = solve_qubit_valence6();
    for (const auto &e : family.bound_entries) {
        trace.steps.push_back({"solve", "c" + e.label.short_name() + " = " + e.expression,
                               "closed-form solution of the master equations"});
    }
    for (const auto &c : family.constraints) {
        trace.steps.push_back({"domain", c.expression, "moduli must be real"});
    }
    const auto &labels = bridge_basis(6, 3);
    const std::size_t a = index_named(labels, "(1,3/2,1)"), b = index_named(labels, "(1,1/2,1)"),
                      c = index_named(labels, "(1,1/2,0)"), d = index_named(labels, "(0,1/2,1)"),
                      e = index_named(labels, "(0,1/2,0)");
    auto name = [&](std::size_t i) { return labels[i].short_name(); };

    // Step one: the bridge crossing.
    RepartitionMatrix p = word_matrix(6, "P*", o);
    const auto &m = p.matrix;
    for (std::size_t r : {c, d, e}) {
        for (std::size_t col = 0; col < labels.size(); ++col) {
            const bool on_diagonal = col == r;
            if ((on_diagonal && abs_value(m(r, col)) != 1) || (!on_diagonal && (m(r, col) != 0 || m(col, r) != 0))) {
                throw Error(ErrorCode::invalid_argument, "crossing matrix lost its block structure");
            }
        }
    }
    {
        std::ostringstream s;
        s << "c̃" << name(a) << " = " << linear_combination({{m(a, a), "c" + name(a)}, {m(a, b), "c" + name(b)}})
          << ", c̃" << name(b) << " = " << linear_combination({{m(b, a), "c" + name(a)}, {m(b, b), "c" + name(b)}});
        for (std::size_t r : {c, d, e}) {
            s << ", c̃" << name(r) << " = " << term(m(r, r), "c" + name(r));
        }
        trace.steps.push_back({"apply P*", s.str(), "bridge crossing"});
    }
    if (!preserves_theta_norm(p)) {
        throw Error(ErrorCode::invalid_argument, "crossing matrix does not preserve the norm");
    }
    trace.steps.push_back({"norm", "λ̃ = λ", "theta weighted norm is preserved exactly"});
    trace.steps.push_back({"match " + name(e), "|c̃" + name(e) + "| = |c" + name(e) + "| gives Ã = A",
                           "family form after P*"});
    const Rational s_c = m(c, c), s_d = m(d, d), s_e = m(e, e);
    const Rational delta_sign = s_c * s_d * s_e;
    const Rational bound = valence6_amplitude_bound;
    const Rational p_ba = m(b, a), p_bb = m(b, b), p_aa = m(a, a), p_ab = m(a, b);

    // Case c != 0: the phase of d ties rho~ to rho.
    if (delta_sign == p_bb) {
        throw Error(ErrorCode::invalid_argument, "degenerate crossing block");
    }
    const Rational kappa = p_ba / (delta_sign - p_bb);
    trace.steps.push_back({"case c" + name(c) + " != 0",
                           "matching the phase of c" + name(d) + " gives c̃" + name(b) + " = " +
                               term(delta_sign, "c" + name(b)) + ", so c" + name(b) + " = " +
                               term(kappa, "c" + name(a)),
                           "family form after P*"});
    if (kappa * kappa < bound) {
        throw Error(ErrorCode::invalid_argument, "crossing leaves the amplitude free; not handled exactly");
    }
    trace.steps.push_back({"case c" + name(c) + " != 0",
                           "A² = " + term(kappa * kappa, "λ") + " ≥ " + term(bound, "λ") +
                               " forces |c" + name(c) + "| = 0, so this case is empty",
                           "domain of the family"});

    // Case c == 0: A sits on the boundary and only the modulus of b~ constrains rho.
    const Rational cos_value = (bound - p_ba * p_ba - p_bb * p_bb * bound) / (2 * p_ba * p_bb * *exact_sqrt(bound));
    trace.steps.push_back({"case c" + name(c) + " = 0",
                           "A² = " + term(bound, "λ") + ", |c̃" + name(b) + "| = A gives " +
                               cosine_statement(cos_value, "φ - ρ"),
                           "family form after P*"});
    if (abs_value(cos_value) != 1) {
        trace.contradiction = {"A² = " + term(bound, "λ"), cosine_statement(cos_value, "φ - ρ")};
        return trace;
    }
    const Rational amp = *exact_sqrt(bound) * cos_value;  // c(b) = amp c(a)
    const Rational a_factor = p_aa + p_ab * amp;
    trace.steps.push_back({"conclude", "A = " + term(abs_value(amp), "√λ") + ", ρ = φ" +
                                           (amp < 0 ? " + π" : "") + ", c" + name(c) + " = c" + name(d) + " = 0",
                           "family form after P*"});
    trace.steps.push_back({"check " + name(a), "c̃" + name(a) + " = " + term(a_factor, "c" + name(a)) +
                                                   (abs_value(a_factor) == 1 ? ", so |c̃" + name(a) + "|² = λ"
                                                                             : ", modulus mismatch"),
                           "family form after P*"});
    if (abs_value(a_factor) != 1) {
        trace.contradiction = {"|c̃" + name(a) + "|² = λ", "c̃" + name(a) + " = " + term(a_factor, "c" + name(a))};
        return trace;
    }
    const Rational e_amp = Rational(3, 4) * abs_value(amp);
    trace.surviving_family = "c" + name(a) + " = √λ exp(i φ), c" + name(b) + " = " +
                             term(amp, "√λ exp(i φ)") + ", c" + name(c) + " = c" + name(d) +
                             " = 0, c" + name(e) + " = " + term(e_amp, "√λ exp(i ψ)");
    trace.steps.push_back({"family", trace.surviving_family, "survivors of the bridge crossing"});

    // Step two: the crossing conjugated by a same-side swap must again kill c and d.
    RepartitionMatrix r2 = word_matrix(6, "P45 P* P45", o);
    const auto &q = r2.matrix;
    for (std::size_t r : {d, c}) {
        const Rational alpha = q(r, a) + amp * q(r, b);
        const Rational beta = e_amp * q(r, e);
        const std::string lhs = "c̃" + name(r) + " = " +
                                linear_combination({{q(r, a), "c" + name(a)}, {q(r, b), "c" + name(b)},
                                                    {q(r, e), "c" + name(e)}}) +
                                " = " +
                                linear_combination({{alpha, "√λ exp(i φ)"},
                                                    {beta, "√λ exp(i ψ)"}});
        trace.steps.push_back({"apply " + to_string(r2.word), lhs, "repartition by " + to_string(r2.word)});
        if (alpha == 0 && beta == 0) {
            continue;
        }
        if (abs_value(alpha) == abs_value(beta)) {
            trace.steps.push_back({"re-impose c̃" + name(r) + " = 0",
                                   "exp(i (ψ - φ)) = " + to_string(-alpha / beta),
                                   "family form after " + to_string(r2.word)});
            continue;
        }
        trace.steps.push_back({"re-impose c̃" + name(r) + " = 0", "0 = " + lhs.substr(lhs.find(" = ") + 3) +
                                                                   " forces λ = 0",
                               "family form after " + to_string(r2.word)});
        trace.contradiction = {"c̃" + name(r) + " = 0 after " + to_string(r2.word), "λ > 0"};
        return trace;
    }
    trace.feasible = true;
    return trace;
}

FeasibilityTrace run_numeric(int valence, const Algorithm1Options &o) {
    FeasibilityTrace trace;
    trace.valence = valence;
    trace.exact = false;
    trace.note = "numerical evidence only";
    master_steps(trace, valence);
    LayoutVerdict scott = scott_bound(2, valence);
    trace.steps.push_back({"dimension count", scott.reason, "bound on qubit perfect tensors"});
    SearchResult s = search_min_defect(std::vector<Spin>(valence, half_spin), o.numeric_restarts, o.seed,
                                       SearchObjective::max_defect);
    trace.numeric_min_defect = s.best_max_defect;
    std::ostringstream line;
    line << "min over " << o.numeric_restarts << " restarts of the max isometry defect = " << s.best_max_defect;
    trace.steps.push_back({"search", line.str(), "multistart minimisation over the invariant space"});
    trace.feasible = s.best_max_defect < 1e-8;
    if (!trace.feasible) {
        trace.contradiction = {"isometry on every bipartition", line.str()};
    }
    return trace;
}

}  // namespace

FeasibilityTrace algorithm1_run(int valence, const Algorithm1Options &options) {
    if (valence < 1) {
        throw Error(ErrorCode::invalid_argument, "valence must be positive");
    }
    if (valence % 2 != 0) {
        FeasibilityTrace trace;
        trace.valence = valence;
        trace.steps.push_back({"invariant space", "an odd number of spin-1/2 legs admits no invariant tensor",
                               "total spin is half-integer"});
        trace.contradiction = {"invariant tensor", "half-integer total spin"};
        return trace;
    }
    switch (valence) {
        case 2: return run_valence2(options);
        case 4: return run_valence4(options);
        case 6: return run_valence6(options);
        default: return run_numeric(valence, options);
    }
}

}  // namespace ipt
