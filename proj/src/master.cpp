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

#include "ipt/master.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ipt/errors.hpp"

namespace ipt {

MasterEquation MasterEquation::normalized() const {
    MasterEquation out = *this;
    Rational scale = 1;
    if (terms.size() == 1) {
        scale = terms.front().weight;
    } else if (diagonal() && rhs != 0) {
        scale = rhs;
    }
    for (auto &t : out.terms) {
        t.weight /= scale;
    }
    out.rhs /= scale;
    return out;
}

Complex MasterEquation::evaluate(const CoefficientVector &c, double lambda) const {
    Complex s = 0;
    for (const auto &t : terms) {
        s += to_double(t.weight) * c[t.left] * std::conj(c[t.right]);
    }
    return s - to_double(rhs) * lambda;
}

std::string MasterEquation::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto &t = terms[i];
        out << (i ? " + " : "");
        if (t.weight != 1) {
            out << ipt::to_string(t.weight) << " ";
        }
        if (t.left == t.right) {
            out << "|c" << t.left.short_name() << "|²";
        } else {
            out << "c" << t.left.short_name() << " conj(c" << t.right.short_name() << ")";
        }
    }
    out << " = ";
    if (rhs == 0) {
        out << "0";
    } else if (rhs == 1) {
        out << "λ";
    } else if (numerator(rhs) == 1) {
        out << "λ/" << denominator(rhs).str();
    } else {
        out << ipt::to_string(rhs) << " λ";
    }
    return out.str();
}

MasterSystem build_master_system(int valence) {
    if (valence < 2 || valence % 2 != 0) {
        throw Error(ErrorCode::odd_valence, "master system needs an even valence");
    }
    const int n = valence / 2;
    MasterSystem sys;
    sys.valence = valence;
    sys.labels = bridge_basis(valence, n);
    auto paths = coupling_paths(n);
    std::sort(paths.begin(), paths.end(),
              [](const CouplingPath &a, const CouplingPath &b) { return a.steps() > b.steps(); });
    for (std::size_t i = 0; i < paths.size(); ++i) {
        for (std::size_t k = i; k < paths.size(); ++k) {
            // Written with the later path first so that it reads c[j] conj(c[j']).
            const CouplingPath &j = paths[k], &jp = paths[i];
            if (j.back() != jp.back()) {
                continue;
            }
            MasterEquation eq;
            eq.j = j;
            eq.j_prime = jp;
            for (const auto &kp : paths) {
                if (kp.back() == j.back()) {
                    eq.terms.push_back({BridgeLabel(j, kp), BridgeLabel(jp, kp), path_theta(kp.steps())});
                }
            }
            if (j == jp) {
                const int d = j.back().dim();
                eq.rhs = Rational(d * d) / path_theta(j.steps());
            }
            sys.equations.push_back(std::move(eq));
        }
    }
    return sys;
}

bool max_coeff_check(const CoefficientVector &c, double lambda, double tolerance) {
    const int n = c.split();
    if (2 * n != c.valence()) {
        throw Error(ErrorCode::bad_bipartition, "maximal coefficient check needs a balanced split");
    }
    std::vector<Spin> steps;
    for (int a = 1; a <= n; ++a) {
        steps.push_back(Spin::from_twice(a));
    }
    CouplingPath top(steps);
    return std::abs(std::norm(c[BridgeLabel(top, top)]) - lambda) < tolerance;
}

double residual(const CoefficientVector &c, const MasterSystem &system, double lambda) {
    if (c.labels != system.labels) {
        throw Error(ErrorCode::label_mismatch, "coefficient labels do not match the master system");
    }
    double s = 0;
    for (const auto &eq : system.equations) {
        s += std::norm(eq.evaluate(c, lambda));
    }
    return std::sqrt(s);
}

CoefficientVector SolutionFamily::evaluate(const FamilyPoint &p) const {
    CoefficientVector c = zero_coefficients(valence, valence / 2);
    for (const auto &e : bound_entries) {
        c[e.label] = e.value(p);
    }
    return c;
}

bool SolutionFamily::in_domain(const FamilyPoint &p, double tolerance) const {
    return std::all_of(constraints.begin(), constraints.end(),
                       [&](const FamilyConstraint &k) { return k.excess(p) <= tolerance; });
}

namespace {

constexpr double two_pi = 2 * std::numbers::pi;

BridgeLabel label_named(int valence, const std::string &name) {
    for (const auto &l : bridge_basis(valence, valence / 2)) {
        if (l.short_name() == name) {
            return l;
        }
    }
    throw Error(ErrorCode::label_mismatch, "no label " + name);
}

Complex polar(double r, double phase) {
    return std::polar(r, phase);
}

}  // namespace

FamilyPoint SolutionFamily::sample(std::mt19937_64 &rng, double lambda) const {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    FamilyPoint p;
    p.lambda = lambda;
    for (const auto &name : free_phases) {
        p.phases[name] = two_pi * unit(rng);
    }
    for (const auto &name : free_amplitudes) {
        p.amplitudes[name] = 0;
    }
    if (valence == 6) {
        p.amplitudes["A"] = std::sqrt(to_double(valence6_amplitude_bound) * lambda) * unit(rng);
    }
    return p;
}

SolutionFamily solve_qubit_valence2() {
    SolutionFamily f;
    f.valence = 2;
    f.free_phases = {"phi"};
    f.bound_entries.push_back({label_named(2, "(1/2)"), "√λ exp(i φ)",
                               [](const FamilyPoint &p) { return polar(std::sqrt(p.lambda), p.phases.at("phi")); }});
    return f;
}

SolutionFamily solve_qubit_valence4() {
    SolutionFamily f;
    f.valence = 4;
    f.free_phases = {"phi0", "phi1"};
    f.bound_entries.push_back({label_named(4, "(1)"), "√λ exp(i φ1)",
                               [](const FamilyPoint &p) { return polar(std::sqrt(p.lambda), p.phases.at("phi1")); }});
    f.bound_entries.push_back(
        {label_named(4, "(0)"), "√λ/2 exp(i φ0)",
         [](const FamilyPoint &p) { return polar(std::sqrt(p.lambda) / 2, p.phases.at("phi0")); }});
    return f;
}

SolutionFamily solve_qubit_valence4_gauge_fixed() {
    SolutionFamily f;
    f.valence = 4;
    f.free_phases = {"dphi"};
    f.bound_entries.push_back({label_named(4, "(1)"), "√λ",
                               [](const FamilyPoint &p) { return Complex(std::sqrt(p.lambda), 0); }});
    f.bound_entries.push_back(
        {label_named(4, "(0)"), "√λ/2 exp(i Δφ)",
         [](const FamilyPoint &p) { return polar(std::sqrt(p.lambda) / 2, p.phases.at("dphi")); }});
    return f;
}

SolutionFamily solve_qubit_valence6() {
    SolutionFamily f;
    f.valence = 6;
    f.free_amplitudes = {"A"};
    f.free_phases = {"phi", "rho", "chi", "psi"};
    auto side = [](const FamilyPoint &p) {
        double a = p.amplitudes.at("A");
        return std::sqrt(std::max(0.0, p.lambda / 3 - 0.75 * a * a));
    };
    f.bound_entries.push_back({label_named(6, "(1,3/2,1)"), "√λ exp(i φ)",
                               [](const FamilyPoint &p) { return polar(std::sqrt(p.lambda), p.phases.at("phi")); }});
    f.bound_entries.push_back({label_named(6, "(1,1/2,1)"), "A exp(i ρ)", [](const FamilyPoint &p) {
                                   return polar(p.amplitudes.at("A"), p.phases.at("rho"));
                               }});
    f.bound_entries.push_back({label_named(6, "(1,1/2,0)"), "√(λ/3 - 3/4 A²) exp(i χ)",
                               [side](const FamilyPoint &p) { return polar(side(p), p.phases.at("chi")); }});
    f.bound_entries.push_back({label_named(6, "(0,1/2,1)"), "√(λ/3 - 3/4 A²) exp(i (ρ + ψ - χ + π))",
                               [side](const FamilyPoint &p) {
                                   return polar(side(p), p.phases.at("rho") + p.phases.at("psi") -
                                                             p.phases.at("chi") + std::numbers::pi);
                               }});
    f.bound_entries.push_back({label_named(6, "(0,1/2,0)"), "3/4 A exp(i ψ)", [](const FamilyPoint &p) {
                                   return polar(0.75 * p.amplitudes.at("A"), p.phases.at("psi"));
                               }});
    f.constraints.push_back({"A² ≤ 4 λ/9", [](const FamilyPoint &p) {
                                 double a = p.amplitudes.at("A");
                                 return a * a - to_double(valence6_amplitude_bound) * p.lambda;
                             }});
    return f;
}

}  // namespace ipt
