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

#include "ipt/bridge.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "ipt/errors.hpp"
#include "ipt/su2.hpp"

namespace ipt {

CouplingPath::CouplingPath(std::vector<Spin> steps, Spin strand) : steps_(std::move(steps)), strand_(strand) {
    if (steps_.empty() || steps_.front() != strand_) {
        throw Error(ErrorCode::inadmissible_label, "coupling path must start with the strand spin");
    }
    for (std::size_t a = 1; a < steps_.size(); ++a) {
        if (!admissible_triple(steps_[a - 1], strand_, steps_[a])) {
            throw Error(ErrorCode::inadmissible_label, "inadmissible step in path " + ipt::to_string(steps_));
        }
    }
}

CouplingPath CouplingPath::parse(std::string_view text, Spin strand) {
    return CouplingPath(parse_spin_list(text), strand);
}

std::string CouplingPath::to_string() const {
    return ipt::to_string(steps_);
}

std::vector<CouplingPath> coupling_paths(int length, Spin strand) {
    if (length < 1) {
        throw Error(ErrorCode::invalid_argument, "coupling paths need length >= 1");
    }
    std::vector<std::vector<Spin>> partial{{strand}};
    for (int a = 1; a < length; ++a) {
        std::vector<std::vector<Spin>> next;
        for (const auto &p : partial) {
            const int x = p.back().twice(), s = strand.twice();
            for (int y = x + s; y >= std::abs(x - s); y -= 2) {
                auto q = p;
                q.push_back(Spin::from_twice(y));
                next.push_back(std::move(q));
            }
        }
        partial = std::move(next);
    }
    std::vector<CouplingPath> out;
    for (auto &p : partial) {
        out.emplace_back(std::move(p), strand);
    }
    return out;
}

BridgeLabel::BridgeLabel(CouplingPath j_path, CouplingPath k_path) : j_(std::move(j_path)), k_(std::move(k_path)) {
    if (j_.size() == 0 || k_.size() == 0) {
        throw Error(ErrorCode::inadmissible_label, "empty coupling path");
    }
    if (j_.strand() != k_.strand()) {
        throw Error(ErrorCode::inadmissible_label, "paths use different strand spins");
    }
    if (j_.back() != k_.back()) {
        throw Error(ErrorCode::inadmissible_label, "paths end on different bridge spins: " + to_string());
    }
}

BridgeLabel BridgeLabel::parse(std::string_view text, Spin strand) {
    auto bar = text.find('|');
    if (bar == std::string_view::npos) {
        throw Error(ErrorCode::parse_error, "bridge label needs '|': '" + std::string(text) + "'");
    }
    auto trim = [](std::string_view s) {
        while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
        while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
        return s;
    };
    auto j = parse_spin_list(trim(text.substr(0, bar)));
    auto k = parse_spin_list(trim(text.substr(bar + 1)));
    std::reverse(k.begin(), k.end());
    return BridgeLabel(CouplingPath(j, strand), CouplingPath(k, strand));
}

std::vector<Spin> BridgeLabel::double_path() const {
    std::vector<Spin> out = j_.steps();
    for (std::size_t b = k_.size() - 1; b-- > 0;) {
        out.push_back(k_[b]);
    }
    return out;
}

std::vector<Spin> BridgeLabel::closed_path() const {
    std::vector<Spin> out{Spin{}};
    auto d = double_path();
    out.insert(out.end(), d.begin(), d.end());
    out.push_back(Spin{});
    return out;
}

std::string BridgeLabel::to_string() const {
    auto k = k_.steps();
    std::reverse(k.begin(), k.end());
    return j_.to_string() + " | " + ipt::to_string(k);
}

std::string BridgeLabel::short_name() const {
    auto d = double_path();
    if (d.size() <= 2) {
        return "(" + ipt::to_string(bridge()) + ")";
    }
    return "(" + ipt::to_string(std::vector<Spin>(d.begin() + 1, d.end() - 1)) + ")";
}

bool canonical_before(const BridgeLabel &x, const BridgeLabel &y) {
    if (x.bridge() != y.bridge()) {
        return x.bridge() > y.bridge();
    }
    if (x.j_path() != y.j_path()) {
        return x.j_path().steps() > y.j_path().steps();
    }
    return x.k_path().steps() > y.k_path().steps();
}

Rational loop_factor(Spin j, LoopDirection direction) {
    if (direction == LoopDirection::down) {
        if (j.twice() < 1) {
            throw Error(ErrorCode::invalid_step, "cannot step down from spin 0");
        }
        return 1;
    }
    return Rational(j.twice() + 2, j.twice() + 1);
}

namespace {

void require_half_strand(Spin strand) {
    if (strand != half_spin) {
        throw Error(ErrorCode::invalid_argument, "closed theta forms are available for spin-1/2 strands only");
    }
}

Rational step_factor(Spin from, Spin to) {
    if (std::abs(from.twice() - to.twice()) != 1) {
        throw Error(ErrorCode::invalid_step, "spin-1/2 step must change the spin by 1/2");
    }
    return loop_factor(from, to > from ? LoopDirection::up : LoopDirection::down);
}

}  // namespace

Rational path_theta(const std::vector<Spin> &steps) {
    if (steps.empty()) {
        throw Error(ErrorCode::invalid_argument, "empty path");
    }
    Rational r = steps.front().dim();
    for (std::size_t a = 1; a < steps.size(); ++a) {
        r *= step_factor(steps[a - 1], steps[a]);
    }
    return r;
}

Rational theta(const CouplingPath &j_path, const CouplingPath &k_path) {
    require_half_strand(j_path.strand());
    if (j_path != k_path) {
        return 0;
    }
    return path_theta(j_path.steps());
}

Rational label_theta(const BridgeLabel &label) {
    require_half_strand(label.strand());
    return path_theta(label.double_path());
}

std::vector<BridgeLabel> bridge_basis(int valence, int n1, Spin strand) {
    if (n1 < 1 || n1 >= valence) {
        throw Error(ErrorCode::invalid_argument, "split must satisfy 1 <= n1 < valence");
    }
    std::vector<BridgeLabel> out;
    for (const auto &j : coupling_paths(n1, strand)) {
        for (const auto &k : coupling_paths(valence - n1, strand)) {
            if (j.back() == k.back()) {
                out.emplace_back(j, k);
            }
        }
    }
    std::sort(out.begin(), out.end(), canonical_before);
    return out;
}

int label_sign(const BridgeLabel &label) {
    auto path_sign = [](const CouplingPath &p) {
        int flips = 0;
        // Step a (1-based) goes from entry a-1 to entry a.
        for (std::size_t a = 2; a <= p.size(); ++a) {
            if (a % 2 == 1 && p[a - 1] < p[a - 2]) {
                ++flips;
            }
        }
        return flips % 2 == 0 ? 1 : -1;
    };
    return path_sign(label.j_path()) * path_sign(label.k_path());
}

namespace {

LabeledTensor coupling_chain(const CouplingPath &path) {
    LabeledTensor t({half_spin, half_spin});
    t.at({0, 0}) = 1;
    t.at({1, 1}) = 1;
    for (std::size_t a = 1; a < path.size(); ++a) {
        const Spin x = path[a - 1], y = path[a];
        const double scale = std::sqrt(to_double(step_factor(x, y)));
        LabeledTensor c({x, half_spin, y});
        for (int i = 0; i < x.dim(); ++i) {
            for (int k = 0; k < 2; ++k) {
                for (int o = 0; o < y.dim(); ++o) {
                    c.at({i, k, o}) =
                        scale * cg_coefficient(x, twice_m_at(x, i), half_spin, twice_m_at(half_spin, k), y,
                                               twice_m_at(y, o));
                }
            }
        }
        t = contract(t, c, {{static_cast<int>(t.rank()), 1}});
    }
    return t;
}

}  // namespace

LabeledTensor build_bridge_state(const BridgeLabel &label) {
    if (label.strand() != half_spin) {
        throw Error(ErrorCode::inadmissible_label, "numeric bridge states need spin-1/2 strands");
    }
    LabeledTensor left = coupling_chain(label.j_path());
    LabeledTensor right = coupling_chain(label.k_path());
    const Spin bridge = label.bridge();
    const int d = bridge.dim();
    LabeledTensor join({bridge, bridge});
    for (int i = 0; i < d; ++i) {
        join.at({i, d - 1 - i}) = (i % 2 == 0 ? 2.0 : -2.0) / d;
    }
    LabeledTensor t = contract(left, join, {{static_cast<int>(left.rank()), 1}});
    t = contract(t, right, {{static_cast<int>(t.rank()), static_cast<int>(right.rank())}});
    const int n1 = label.split(), n = label.valence();
    std::vector<int> order;
    for (int a = 1; a <= n1; ++a) {
        order.push_back(a);
    }
    for (int a = n; a > n1; --a) {
        order.push_back(a);
    }
    t = permute_legs(t, order);
    t *= static_cast<double>(label_sign(label));
    return t;
}

CalibrationTable run_calibration(int max_valence) {
    CalibrationTable table;
    table.max_valence = max_valence;
    for (int x = 0; x < max_valence; ++x) {
        for (int y : {x + 1, x - 1}) {
            if (y < 0) continue;
            Spin from = Spin::from_twice(x), to = Spin::from_twice(y);
            table.steps.push_back({from, to, step_factor(from, to)});
        }
    }
    for (int valence = 2; valence <= max_valence; valence += 2) {
        for (int n1 = 1; n1 < valence; ++n1) {
            auto labels = bridge_basis(valence, n1);
            std::vector<LabeledTensor> states;
            for (const auto &l : labels) {
                states.push_back(build_bridge_state(l));
            }
            for (std::size_t r = 0; r < labels.size(); ++r) {
                for (std::size_t c = 0; c < labels.size(); ++c) {
                    double expected = r == c ? to_double(label_theta(labels[r])) : 0.0;
                    double err = std::abs(inner(states[r], states[c]) - expected);
                    table.max_gram_error = std::max(table.max_gram_error, err);
                }
            }
        }
    }
    if (!(table.max_gram_error < 1e-10)) {
        throw Error(ErrorCode::calibration_failure,
                    "bridge Gram matrix deviates from theta values by " + std::to_string(table.max_gram_error));
    }
    return table;
}

const CalibrationTable &calibrate() {
    static const CalibrationTable table = run_calibration(8);
    return table;
}

std::size_t CoefficientVector::index_of(const BridgeLabel &label) const {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) {
        throw Error(ErrorCode::label_mismatch, "label " + label.to_string() + " not in coefficient vector");
    }
    return static_cast<std::size_t>(it - labels.begin());
}

CoefficientVector RationalCoefficients::to_complex() const {
    CoefficientVector c;
    c.labels = labels;
    for (const auto &v : values) {
        c.values.emplace_back(to_double(v), 0.0);
    }
    return c;
}

CoefficientVector zero_coefficients(int valence, int n1) {
    CoefficientVector c;
    c.labels = bridge_basis(valence, n1);
    c.values.assign(c.labels.size(), Complex(0));
    return c;
}

LabeledTensor assemble(const CoefficientVector &c) {
    if (c.labels.empty()) {
        throw Error(ErrorCode::invalid_argument, "empty coefficient vector");
    }
    LabeledTensor t(std::vector<Spin>(c.valence(), half_spin));
    for (std::size_t i = 0; i < c.labels.size(); ++i) {
        if (c.values[i] != Complex(0)) {
            t += c.values[i] * build_bridge_state(c.labels[i]);
        }
    }
    return t;
}

Decomposition decompose(const LabeledTensor &t, int n1, double tolerance) {
    const int n = static_cast<int>(t.rank());
    for (Spin s : t.legs()) {
        if (s != half_spin) {
            throw Error(ErrorCode::spin_mismatch, "bridge decomposition needs spin-1/2 legs");
        }
    }
    Decomposition d;
    d.coefficients = zero_coefficients(n, n1);
    LabeledTensor rest = t;
    for (std::size_t i = 0; i < d.coefficients.labels.size(); ++i) {
        LabeledTensor b = build_bridge_state(d.coefficients.labels[i]);
        Complex c = inner(b, t) / to_double(label_theta(d.coefficients.labels[i]));
        d.coefficients.values[i] = c;
        rest -= c * b;
    }
    const double nrm = t.norm();
    d.residual = nrm == 0 ? 0.0 : rest.norm() / nrm;
    if (d.residual > tolerance) {
        throw Error(ErrorCode::not_invariant,
                    "tensor leaves the invariant span (relative residual " + std::to_string(d.residual) + ")");
    }
    return d;
}

RationalCoefficients identity_decomposition(int valence, Spin strand) {
    require_half_strand(strand);
    if (valence < 2 || valence % 2 != 0) {
        throw Error(ErrorCode::odd_valence, "identity decomposition needs an even valence");
    }
    RationalCoefficients out;
    out.labels = bridge_basis(valence, valence / 2, strand);
    for (const auto &l : out.labels) {
        out.values.push_back(l.j_path() == l.k_path() ? path_theta(l.j_path().steps()) / label_theta(l)
                                                       : Rational(0));
    }
    return out;
}

LabeledTensor identity_state(int valence) {
    if (valence < 2 || valence % 2 != 0) {
        throw Error(ErrorCode::odd_valence, "identity state needs an even valence");
    }
    const int n = valence / 2;
    LabeledTensor t(std::vector<Spin>(valence, half_spin));
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
        int sign = 1;
        for (int a = 0; a < n && sign != 0; ++a) {
            int x = static_cast<int>((flat >> (valence - 1 - a)) & 1);
            int y = static_cast<int>((flat >> a) & 1);
            sign *= x == y ? 0 : (x == 0 ? 1 : -1);
        }
        t[flat] = sign;
    }
    return t;
}

}  // namespace ipt
