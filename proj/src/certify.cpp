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

#include "ipt/certify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <random>

#include "ipt/errors.hpp"
#include "ipt/rational.hpp"
#include "ipt/su2.hpp"

namespace ipt {

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::perfect: return "perfect";
        case Verdict::not_perfect: return "not_perfect";
        case Verdict::not_invariant: return "not_invariant";
    }
    return "unknown";
}

double CertReport::max_defect() const {
    double m = 0;
    for (const auto &r : per_bipartition) {
        m = std::max(m, r.defect);
    }
    return m;
}

std::vector<Bipartition> perfectness_bipartitions(const std::vector<Spin> &legs, PerfectnessRule rule) {
    const int n = static_cast<int>(legs.size());
    if (rule == PerfectnessRule::particle_count) {
        return bipartitions(n, BipartitionSet::all_half_or_less);
    }
    std::vector<Bipartition> out;
    for (int size = 1; size < n; ++size) {
        std::vector<bool> pick(n, false);
        std::fill(pick.begin(), pick.begin() + size, true);
        do {
            std::vector<int> a;
            long dim_a = 1, dim_b = 1;
            for (int i = 0; i < n; ++i) {
                if (pick[i]) {
                    a.push_back(i + 1);
                    dim_a *= legs[i].dim();
                } else {
                    dim_b *= legs[i].dim();
                }
            }
            if (dim_a > dim_b || (dim_a == dim_b && !pick[0])) {
                continue;
            }
            out.push_back(make_bipartition(n, a));
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return out;
}

CertReport certify_perfect(const LabeledTensor &t, double tolerance, PerfectnessRule rule) {
    if (t.is_zero()) {
        throw Error(ErrorCode::zero_tensor, "cannot certify the zero tensor");
    }
    CertReport report;
    report.tolerance = tolerance;
    report.rule = rule;
    report.invariance = invariance_defect(t);
    const bool invariant = report.invariance < tolerance;
    bool all_isometric = true;
    for (const auto &p : perfectness_bipartitions(t.legs(), rule)) {
        BipartitionReport r;
        r.bipartition = p;
        Eigen::MatrixXcd m = as_map(t, p);
        Eigen::MatrixXcd g = m.adjoint() * m;
        r.lambda_est = g.trace().real() / static_cast<double>(g.rows());
        r.defect = (g - r.lambda_est * Eigen::MatrixXcd::Identity(g.rows(), g.cols())).norm() / g.norm();
        if (invariant && p.a.size() <= p.b.size()) {
            r.spectrum = schur_spectrum(t, p, tolerance);
            r.has_spectrum = true;
        }
        all_isometric = all_isometric && r.defect < tolerance;
        report.per_bipartition.push_back(std::move(r));
    }
    if (!invariant) {
        report.verdict = Verdict::not_invariant;
    } else {
        report.verdict = all_isometric ? Verdict::perfect : Verdict::not_perfect;
    }
    return report;
}

LayoutVerdict layout_check_even(const std::vector<Spin> &legs) {
    if (legs.empty() || legs.size() % 2 != 0) {
        throw Error(ErrorCode::odd_valence, "even layout rule needs an even number of legs");
    }
    LayoutVerdict v;
    v.rule = "even";
    v.pass = std::all_of(legs.begin(), legs.end(), [&](Spin s) { return s == legs.front(); });
    if (v.pass) {
        v.reason = "all legs carry spin " + to_string(legs.front());
    } else {
        Spin lo = *std::min_element(legs.begin(), legs.end());
        v.reason = "an even number of legs needs equal spins on every leg";
        if (lo == half_spin) {
            v.reason += "; with a spin-1/2 leg present every leg must be spin 1/2";
        }
    }
    return v;
}

LayoutVerdict layout_check_odd(const std::vector<Spin> &legs) {
    if (legs.size() % 2 != 1) {
        throw Error(ErrorCode::even_valence, "odd layout rule needs an odd number of legs");
    }
    std::vector<int> twice;
    for (Spin s : legs) {
        twice.push_back(s.twice());
    }
    std::sort(twice.rbegin(), twice.rend());
    const std::size_t half = legs.size() / 2;
    int big = std::accumulate(twice.begin(), twice.begin() + half, 0);
    int rest = std::accumulate(twice.begin() + half, twice.end(), 0);
    LayoutVerdict v;
    v.rule = "odd";
    v.pass = big <= rest;
    v.reason = "sum of the " + std::to_string(half) + " largest spins " + twice_to_string(big) +
               (v.pass ? " <= " : " > ") + "sum of the rest " + twice_to_string(rest);
    return v;
}

LayoutVerdict layout_check(const std::vector<Spin> &legs) {
    return legs.size() % 2 == 0 ? layout_check_even(legs) : layout_check_odd(legs);
}

LayoutVerdict scott_bound(int local_dim, int valence) {
    if (local_dim < 2) {
        throw Error(ErrorCode::invalid_argument, "local dimension must be at least 2");
    }
    LayoutVerdict v;
    v.rule = "scott";
    const int bound = 2 * (local_dim * local_dim - 1);
    v.pass = valence <= bound;
    v.reason = "valence " + std::to_string(valence) + (v.pass ? " <= " : " > ") + std::to_string(bound) +
               " = 2(d²-1) for d = " + std::to_string(local_dim);
    return v;
}

Complex walk_residual_first(double theta_s, double theta_a, double xi) {
    using std::polar;
    return -1.5 * polar(1.0, theta_s) - 1.5 * polar(1.0, theta_a + theta_s - xi) - 1.5 * polar(1.0, xi) +
           0.5 * polar(1.0, theta_a) - 4.0;
}

Complex walk_residual_second(double theta_s, double theta_a, double xi) {
    using std::polar;
    return -1.5 * polar(1.0, theta_s) + 1.5 * polar(1.0, theta_a + theta_s - xi) + 1.5 * polar(1.0, xi) +
           0.5 * polar(1.0, theta_a) - 4.0;
}

PhaseWalkReport phase_walk_feasibility(int grid) {
    if (grid < 4) {
        throw Error(ErrorCode::invalid_argument, "grid too small");
    }
    constexpr double pi = std::numbers::pi;
    PhaseWalkReport r;
    r.x = std::acos(7.0 / 9.0);
    r.interval_a[0] = -2 * r.x;
    r.interval_a[1] = 2 * r.x;
    r.interval_b[0] = pi - 2 * r.x;
    r.interval_b[1] = pi + 2 * r.x;
    auto center = [](const double *iv) { return (iv[0] + iv[1]) / 2; };
    auto half_width = [](const double *iv) { return (iv[1] - iv[0]) / 2; };
    double gap = std::fmod(std::abs(center(r.interval_a) - center(r.interval_b)), 2 * pi);
    gap = std::min(gap, 2 * pi - gap);
    r.disjoint = gap > half_width(r.interval_a) + half_width(r.interval_b);
    // cos(pi/4)^2 = 1/2 against (7/9)^2, both sides positive.
    r.inequality_holds = Rational(1, 2) < Rational(49, 81);

    r.grid_points = grid;
    std::vector<Complex> e(grid);
    for (int i = 0; i < grid; ++i) {
        e[i] = std::polar(1.0, 2 * pi * i / grid);
    }
    r.grid_min_residual = std::numeric_limits<double>::infinity();
    for (int k = 0; k < grid; ++k) {
        double m1 = std::numeric_limits<double>::infinity(), m2 = m1;
        for (int s = 0; s < grid; ++s) {
            const Complex es = e[s], exi = e[(s - k + grid) % grid];
            for (int a = 0; a < grid; ++a) {
                const Complex ea = e[a], eak = e[(a + k) % grid];
                const Complex common = -1.5 * es + 0.5 * ea - 4.0;
                const Complex mixed = 1.5 * (eak + exi);
                m1 = std::min(m1, std::abs(common - mixed));
                m2 = std::min(m2, std::abs(common + mixed));
            }
        }
        double joint = std::max(m1, m2);
        if (joint < r.grid_min_residual) {
            r.grid_min_residual = joint;
            r.grid_argmin_dphi = 2 * pi * k / grid;
        }
    }
    return r;
}

SchurLadder ladder_range(const std::vector<Spin> &a_legs) {
    if (a_legs.empty()) {
        throw Error(ErrorCode::bad_bipartition, "empty side");
    }
    SchurLadder out;
    int total = 0;
    for (Spin s : a_legs) {
        total += s.twice();
    }
    int best = total;
    const std::size_t n = a_legs.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        int sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
            sum += (mask >> i & 1) ? -a_legs[i].twice() : a_legs[i].twice();
        }
        best = std::min(best, std::abs(sum));
    }
    out.j_max = Spin::from_twice(total);
    out.j_min = Spin::from_twice(best);
    auto mult = coupling_multiplicities(a_legs);
    for (int tj = 0; tj < static_cast<int>(mult.size()); ++tj) {
        if (mult[tj] > 0) {
            out.series.push_back(Spin::from_twice(tj));
        }
    }
    return out;
}

SchurLadder schur_ladder_report(const LabeledTensor &t, const Bipartition &p, double tolerance) {
    validate_bipartition(p, t.rank());
    std::vector<Spin> a_legs;
    for (int i : p.a) {
        a_legs.push_back(t.legs()[i - 1]);
    }
    SchurLadder out = ladder_range(a_legs);
    out.spectrum = schur_spectrum(t, p, tolerance);
    return out;
}

namespace {

LabeledTensor coupling_chain_state(const std::vector<Spin> &legs, const std::vector<Spin> &path) {
    LabeledTensor t({legs[0], legs[0]});
    for (int i = 0; i < legs[0].dim(); ++i) {
        t.at({i, i}) = 1;
    }
    for (std::size_t a = 1; a < legs.size(); ++a) {
        const Spin x = path[a - 1], l = legs[a], y = path[a];
        LabeledTensor c({x, l, y});
        for (int i = 0; i < x.dim(); ++i) {
            for (int k = 0; k < l.dim(); ++k) {
                for (int o = 0; o < y.dim(); ++o) {
                    c.at({i, k, o}) = cg_coefficient(x, twice_m_at(x, i), l, twice_m_at(l, k), y, twice_m_at(y, o));
                }
            }
        }
        t = contract(t, c, {{static_cast<int>(t.rank()), 1}});
    }
    // The final intermediate spin is 0, so the last leg has dimension one.
    return LabeledTensor(legs, t.data());
}

}  // namespace

InvariantBasis sequential_coupling_basis(const std::vector<Spin> &legs) {
    if (legs.empty()) {
        throw Error(ErrorCode::invalid_argument, "no legs");
    }
    std::vector<std::vector<Spin>> partial{{legs[0]}};
    for (std::size_t a = 1; a < legs.size(); ++a) {
        std::vector<std::vector<Spin>> next;
        for (const auto &p : partial) {
            const int x = p.back().twice(), s = legs[a].twice();
            for (int y = x + s; y >= std::abs(x - s); y -= 2) {
                auto q = p;
                q.push_back(Spin::from_twice(y));
                next.push_back(std::move(q));
            }
        }
        partial = std::move(next);
    }
    InvariantBasis basis;
    basis.kind = "sequential_coupling";
    for (const auto &p : partial) {
        if (p.back().twice() != 0) {
            continue;
        }
        basis.labels.push_back(to_string(p));
        basis.states.push_back(coupling_chain_state(legs, p));
    }
    return basis;
}

InvariantBasis invariant_basis(const std::vector<Spin> &legs) {
    const bool qubits = std::all_of(legs.begin(), legs.end(), [](Spin s) { return s == half_spin; });
    if (!qubits || legs.size() % 2 != 0 || legs.empty()) {
        return sequential_coupling_basis(legs);
    }
    const int n = static_cast<int>(legs.size());
    InvariantBasis basis;
    basis.kind = "bridge";
    for (const auto &l : bridge_basis(n, n / 2)) {
        LabeledTensor s = build_bridge_state(l);
        s *= 1.0 / std::sqrt(to_double(label_theta(l)));
        basis.labels.push_back(l.to_string());
        basis.states.push_back(std::move(s));
    }
    return basis;
}

InvariantDefectEvaluator::InvariantDefectEvaluator(const InvariantBasis &basis) {
    if (basis.states.empty()) {
        throw Error(ErrorCode::empty_invariant_space, "no invariant states");
    }
    dimension_ = basis.states.size();
    const auto &legs = basis.states.front().legs();
    const int n = static_cast<int>(legs.size());
    const std::size_t nb = dimension_;
    partitions_ = bipartitions(n, BipartitionSet::all_half_or_less);
    for (const auto &p : partitions_) {
        std::vector<Spin> a_legs;
        for (int i : p.a) {
            a_legs.push_back(legs[i - 1]);
        }
        Eigen::MatrixXcd jz = total_generator(a_legs, 2);
        Eigen::MatrixXcd casimir = Eigen::MatrixXcd::Zero(jz.rows(), jz.cols());
        for (int axis = 0; axis < 3; ++axis) {
            Eigen::MatrixXcd g = total_generator(a_legs, axis);
            casimir += g * g;
        }
        std::vector<Eigen::MatrixXcd> maps;
        for (const auto &s : basis.states) {
            maps.push_back(as_map(s, p));
        }
        Split split;
        split.dim_a = static_cast<int>(jz.rows());
        auto mult = coupling_multiplicities(a_legs);
        for (int twice_j = 0; twice_j < static_cast<int>(mult.size()); ++twice_j) {
            if (mult[twice_j] == 0) {
                continue;
            }
            std::vector<Eigen::Index> idx;
            for (Eigen::Index i = 0; i < jz.rows(); ++i) {
                if (std::lround(2 * jz(i, i).real()) == twice_j) {
                    idx.push_back(i);
                }
            }
            Eigen::MatrixXcd sub(idx.size(), idx.size());
            for (std::size_t r = 0; r < idx.size(); ++r) {
                for (std::size_t c = 0; c < idx.size(); ++c) {
                    sub(r, c) = casimir(idx[r], idx[c]);
                }
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(sub);
            const double target = twice_j / 2.0 * (twice_j / 2.0 + 1);
            std::vector<Eigen::VectorXcd> tops;
            for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k) {
                if (std::abs(eig.eigenvalues()(k) - target) < 1e-6) {
                    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(jz.rows());
                    for (std::size_t r = 0; r < idx.size(); ++r) {
                        v(idx[r]) = eig.eigenvectors()(r, k);
                    }
                    tops.push_back(v);
                }
            }
            if (static_cast<int>(tops.size()) != mult[twice_j]) {
                throw Error(ErrorCode::invalid_argument, "highest-weight count disagrees with the coupling series");
            }
            Block block;
            block.weight = twice_j + 1;
            block.multiplicity = mult[twice_j];
            const int m = block.multiplicity;
            std::vector<Eigen::VectorXcd> w(m * nb);
            for (int alpha = 0; alpha < m; ++alpha) {
                for (std::size_t mu = 0; mu < nb; ++mu) {
                    w[alpha * nb + mu] = maps[mu] * tops[alpha];
                }
            }
            block.kernel.resize(static_cast<std::size_t>(m * m) * nb * nb);
            for (int alpha = 0; alpha < m; ++alpha) {
                for (int beta = 0; beta < m; ++beta) {
                    for (std::size_t mu = 0; mu < nb; ++mu) {
                        for (std::size_t nu = 0; nu < nb; ++nu) {
                            block.kernel[(alpha * m + beta) * nb * nb + mu * nb + nu] =
                                w[alpha * nb + mu].dot(w[beta * nb + nu]);
                        }
                    }
                }
            }
            split.blocks.push_back(std::move(block));
        }
        splits_.push_back(std::move(split));
    }
}

std::vector<double> InvariantDefectEvaluator::defects(const std::vector<Complex> &c) const {
    const std::size_t nb = dimension_;
    std::vector<Complex> outer_cc(nb * nb);
    for (std::size_t mu = 0; mu < nb; ++mu) {
        for (std::size_t nu = 0; nu < nb; ++nu) {
            outer_cc[mu * nb + nu] = std::conj(c[mu]) * c[nu];
        }
    }
    std::vector<double> out;
    out.reserve(splits_.size());
    std::vector<Complex> g;
    for (const auto &split : splits_) {
        double trace = 0;
        for (const auto &b : split.blocks) {
            const int m = b.multiplicity;
            for (int alpha = 0; alpha < m; ++alpha) {
                const Complex *k = &b.kernel[(alpha * m + alpha) * nb * nb];
                Complex s = 0;
                for (std::size_t i = 0; i < nb * nb; ++i) {
                    s += outer_cc[i] * k[i];
                }
                trace += b.weight * s.real();
            }
        }
        const double lambda = trace / split.dim_a;
        double num = 0, den = 0;
        for (const auto &b : split.blocks) {
            const int m = b.multiplicity;
            for (int alpha = 0; alpha < m; ++alpha) {
                for (int beta = 0; beta < m; ++beta) {
                    const Complex *k = &b.kernel[(alpha * m + beta) * nb * nb];
                    Complex s = 0;
                    for (std::size_t i = 0; i < nb * nb; ++i) {
                        s += outer_cc[i] * k[i];
                    }
                    den += b.weight * std::norm(s);
                    if (alpha == beta) {
                        s -= lambda;
                    }
                    num += b.weight * std::norm(s);
                }
            }
        }
        out.push_back(den > 0 ? std::sqrt(num / den) : 1.0);
    }
    return out;
}

namespace {

struct SimplexResult {
    std::vector<double> x;
    double value = 0;
    long evaluations = 0;
};

SimplexResult nelder_mead(const std::function<double(const std::vector<double> &)> &f, std::vector<double> x0,
                          double step, long max_evaluations, double x_tolerance, double f_tolerance) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> pts(n + 1, x0);
    std::vector<double> vals(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        pts[i + 1][i] += step;
    }
    long evals = 0;
    auto eval = [&](const std::vector<double> &x) {
        ++evals;
        return f(x);
    };
    for (std::size_t i = 0; i <= n; ++i) {
        vals[i] = eval(pts[i]);
    }
    std::vector<std::size_t> order(n + 1);
    while (evals < max_evaluations) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];
        double spread = 0;
        for (std::size_t i = 0; i <= n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                spread = std::max(spread, std::abs(pts[i][k] - pts[best][k]));
            }
        }
        if (spread <= x_tolerance && vals[worst] - vals[best] <= f_tolerance) {
            break;
        }
        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < n; ++k) {
                centroid[k] += pts[i][k] / n;
            }
        }
        auto along = [&](double t) {
            std::vector<double> y(n);
            for (std::size_t k = 0; k < n; ++k) {
                y[k] = centroid[k] + t * (pts[worst][k] - centroid[k]);
            }
            return y;
        };
        auto xr = along(-1.0);
        double fr = eval(xr);
        if (fr < vals[best]) {
            auto xe = along(-2.0);
            double fe = eval(xe);
            if (fe < fr) {
                pts[worst] = xe;
                vals[worst] = fe;
            } else {
                pts[worst] = xr;
                vals[worst] = fr;
            }
            continue;
        }
        if (fr < vals[second]) {
            pts[worst] = xr;
            vals[worst] = fr;
            continue;
        }
        const bool outside = fr < vals[worst];
        auto xc = along(outside ? -0.5 : 0.5);
        double fc = eval(xc);
        if (fc < (outside ? fr : vals[worst])) {
            pts[worst] = xc;
            vals[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) continue;
            for (std::size_t k = 0; k < n; ++k) {
                pts[i][k] = pts[best][k] + 0.5 * (pts[i][k] - pts[best][k]);
            }
            vals[i] = eval(pts[i]);
        }
    }
    std::size_t best = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
    return {pts[best], vals[best], evals};
}

std::vector<Complex> unit_coefficients(const std::vector<double> &x) {
    const std::size_t m = x.size() / 2;
    double nrm = 0;
    for (double v : x) {
        nrm += v * v;
    }
    nrm = std::sqrt(nrm);
    std::vector<Complex> c(m);
    for (std::size_t i = 0; i < m; ++i) {
        c[i] = nrm > 0 ? Complex(x[i], x[m + i]) / nrm : Complex(i == 0 ? 1.0 : 0.0);
    }
    return c;
}

}  // namespace

SearchResult search_min_defect(const std::vector<Spin> &legs, int restarts, std::uint64_t seed,
                               SearchObjective objective) {
    if (restarts < 1) {
        throw Error(ErrorCode::invalid_argument, "restarts must be positive");
    }
    if (legs.size() < 2) {
        throw Error(ErrorCode::invalid_argument, "search needs at least two legs");
    }
    InvariantBasis basis = invariant_basis(legs);
    if (basis.states.empty()) {
        throw Error(ErrorCode::empty_invariant_space, "legs " + to_string(legs) + " admit no invariant tensor");
    }
    InvariantDefectEvaluator evaluator(basis);
    auto score = [&](const std::vector<double> &d) {
        return objective == SearchObjective::summed_defect ? std::accumulate(d.begin(), d.end(), 0.0)
                                                           : *std::max_element(d.begin(), d.end());
    };
    auto f = [&](const std::vector<double> &x) { return score(evaluator.defects(unit_coefficients(x))); };

    SearchResult result;
    result.legs = legs;
    result.basis = basis.kind;
    result.basis_labels = basis.labels;
    result.restarts = restarts;
    result.seed = seed;
    result.objective = objective;
    result.best_defect = std::numeric_limits<double>::infinity();
    const std::size_t dim = 2 * basis.states.size();
    for (int r = 0; r < restarts; ++r) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(r));
        std::normal_distribution<double> normal(0.0, 1.0);
        std::vector<double> x0(dim);
        for (double &v : x0) {
            v = normal(rng);
        }
        SimplexResult s = nelder_mead(f, x0, 0.5, 4000, 1e-9, 1e-13);
        result.evaluations += s.evaluations;
        if (s.value < result.best_defect) {
            result.best_defect = s.value;
            result.best_coefficients = unit_coefficients(s.x);
        }
    }
    auto d = evaluator.defects(result.best_coefficients);
    result.best_sum_defect = std::accumulate(d.begin(), d.end(), 0.0);
    result.best_max_defect = *std::max_element(d.begin(), d.end());
    return result;
}

}  // namespace ipt
