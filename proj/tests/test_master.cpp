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

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "ipt/bridge.hpp"
#include "ipt/errors.hpp"
#include "ipt/master.hpp"

using namespace ipt;

namespace {

const MasterEquation *find_equation(const MasterSystem &s, const char *j, const char *jp) {
    for (const auto &eq : s.equations) {
        if (eq.j == CouplingPath::parse(j) && eq.j_prime == CouplingPath::parse(jp)) {
            return &eq;
        }
    }
    return nullptr;
}

BridgeLabel named(int valence, const std::string &name) {
    for (const auto &l : bridge_basis(valence, valence / 2)) {
        if (l.short_name() == name) return l;
    }
    throw std::runtime_error("no label " + name);
}

}  // namespace

TEST(master_system, valence_four) {
    MasterSystem s = build_master_system(4);
    ASSERT_EQ(s.equations.size(), 2u);
    const MasterEquation *one = find_equation(s, "1/2,1", "1/2,1");
    const MasterEquation *zero = find_equation(s, "1/2,0", "1/2,0");
    ASSERT_TRUE(one && zero);
    EXPECT_EQ(one->normalized().to_string(), "|c(1)|² = λ");
    EXPECT_EQ(zero->normalized().to_string(), "|c(0)|² = λ/4");
    ASSERT_EQ(one->terms.size(), 1u);
    EXPECT_EQ(one->rhs / one->terms[0].weight, Rational(1));
    EXPECT_EQ(zero->rhs / zero->terms[0].weight, Rational(1, 4));
}

TEST(master_system, valence_six) {
    MasterSystem s = build_master_system(6);
    ASSERT_EQ(s.equations.size(), 4u);
    EXPECT_EQ(s.labels.size(), 5u);
    const MasterEquation *cross = find_equation(s, "1/2,0,1/2", "1/2,1,1/2");
    ASSERT_TRUE(cross);
    EXPECT_FALSE(cross->diagonal());
    EXPECT_EQ(cross->rhs, Rational(0));
    ASSERT_EQ(cross->terms.size(), 2u);
    std::map<std::string, Rational> weights;
    for (const auto &t : cross->terms) {
        weights[t.left.short_name() + "*" + t.right.short_name()] = t.weight;
    }
    EXPECT_EQ(weights.at("(0,1/2,0)*(1,1/2,0)"), Rational(4));
    EXPECT_EQ(weights.at("(0,1/2,1)*(1,1/2,1)"), Rational(3));
    EXPECT_EQ(cross->to_string(), "3 c(0,1/2,1) conj(c(1,1/2,1)) + 4 c(0,1/2,0) conj(c(1,1/2,0)) = 0");
    EXPECT_EQ(find_equation(s, "1/2,1,3/2", "1/2,1,3/2")->normalized().to_string(), "|c(1,3/2,1)|² = λ");
}

TEST(master_system, weights_are_path_thetas) {
    for (int valence = 2; valence <= 8; valence += 2) {
        MasterSystem s = build_master_system(valence);
        for (const auto &eq : s.equations) {
            for (const auto &t : eq.terms) {
                EXPECT_EQ(t.left.k_path(), t.right.k_path());
                EXPECT_EQ(t.weight, theta(t.left.k_path(), t.left.k_path()));
            }
            if (eq.diagonal()) {
                const int d = eq.j.back().dim();
                EXPECT_EQ(eq.rhs * theta(eq.j, eq.j), Rational(d * d));
            } else {
                EXPECT_EQ(eq.rhs, Rational(0));
            }
        }
    }
}

TEST(master_system, rejects_odd_valence) {
    try {
        build_master_system(5);
        ADD_FAILURE();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::odd_valence);
    }
}

TEST(max_coeff_check, examples) {
    CoefficientVector c4 = zero_coefficients(4, 2);
    c4[named(4, "(1)")] = std::polar(std::sqrt(2.0), 0.7);
    EXPECT_TRUE(max_coeff_check(c4, 2.0));
    EXPECT_FALSE(max_coeff_check(c4, 2.1));
    CoefficientVector c6 = zero_coefficients(6, 3);
    c6[named(6, "(1,3/2,1)")] = std::polar(1.0, -2.0);
    EXPECT_TRUE(max_coeff_check(c6, 1.0));
    EXPECT_FALSE(max_coeff_check(zero_coefficients(6, 3), 1.0));
    EXPECT_THROW(max_coeff_check(zero_coefficients(6, 2), 1.0), Error);
}

TEST(residual, examples) {
    MasterSystem s6 = build_master_system(6);
    SolutionFamily f = solve_qubit_valence6();
    FamilyPoint p;
    p.lambda = 1;
    p.amplitudes["A"] = 0.5;
    p.phases = {{"phi", 0.3}, {"rho", 1.1}, {"chi", -2.0}, {"psi", 4.0}};
    CoefficientVector c = f.evaluate(p);
    EXPECT_LT(residual(c, s6, 1.0), 1e-12);
    EXPECT_GT(residual(zero_coefficients(6, 3), s6, 1.0), 1.0);
    c[named(6, "(1,3/2,1)")] *= 1.01;
    EXPECT_GT(residual(c, s6, 1.0), 1e-3);
    EXPECT_THROW(residual(zero_coefficients(4, 2), s6, 1.0), Error);
}

TEST(families, valence_four_moduli) {
    SolutionFamily f = solve_qubit_valence4();
    FamilyPoint p;
    p.lambda = 2.25;
    p.phases = {{"phi0", 0.4}, {"phi1", 5.0}};
    CoefficientVector c = f.evaluate(p);
    EXPECT_NEAR(std::abs(c[named(4, "(1)")]), 1.5, 1e-15);
    EXPECT_NEAR(std::abs(c[named(4, "(0)")]), 0.75, 1e-15);
    EXPECT_LT(residual(c, build_master_system(4), p.lambda), 1e-12);
}

TEST(families, valence_four_gauge_fixed) {
    SolutionFamily f = solve_qubit_valence4_gauge_fixed();
    ASSERT_EQ(f.free_phases.size(), 1u);
    FamilyPoint p;
    p.phases = {{"dphi", 2.0}};
    CoefficientVector c = f.evaluate(p);
    EXPECT_EQ(c[named(4, "(1)")], Complex(1, 0));
    EXPECT_NEAR(std::arg(c[named(4, "(0)")]), 2.0, 1e-15);
    EXPECT_LT(residual(c, build_master_system(4), 1.0), 1e-12);
}

TEST(families, valence_six_closed_form) {
    SolutionFamily f = solve_qubit_valence6();
    EXPECT_EQ(f.free_amplitudes, (std::vector<std::string>{"A"}));
    EXPECT_EQ(f.free_phases.size(), 4u);
    FamilyPoint p;
    p.lambda = 1;
    p.amplitudes["A"] = 0.4;
    p.phases = {{"phi", 0.1}, {"rho", 0.2}, {"chi", 0.3}, {"psi", 0.4}};
    CoefficientVector c = f.evaluate(p);
    EXPECT_NEAR(std::abs(c[named(6, "(0,1/2,0)")]), 0.3, 1e-15);
    Complex rel = c[named(6, "(0,1/2,1)")] / std::polar(1.0, 0.2 + 0.4 - 0.3 + std::numbers::pi);
    EXPECT_NEAR(rel.imag(), 0, 1e-15);
    EXPECT_GT(rel.real(), 0);
    EXPECT_TRUE(f.in_domain(p));
    p.amplitudes["A"] = 0.7;
    EXPECT_FALSE(f.in_domain(p));
}

TEST(families, valence_six_saturation) {
    EXPECT_EQ(Rational(1, 3) - Rational(3, 4) * valence6_amplitude_bound, Rational(0));
    SolutionFamily f = solve_qubit_valence6();
    FamilyPoint p;
    p.lambda = 1;
    p.amplitudes["A"] = 2.0 / 3.0;
    p.phases = {{"phi", 0}, {"rho", 0}, {"chi", 0}, {"psi", 0}};
    CoefficientVector c = f.evaluate(p);
    EXPECT_LT(std::abs(c[named(6, "(1,1/2,0)")]), 1e-7);
    EXPECT_LT(std::abs(c[named(6, "(0,1/2,1)")]), 1e-7);
    EXPECT_LT(residual(c, build_master_system(6), 1.0), 1e-12);
}

TEST(families, random_draws_satisfy_system) {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> scale(0.1, 5.0);
    struct Case {
        SolutionFamily family;
        MasterSystem system;
    };
    std::vector<Case> cases{{solve_qubit_valence2(), build_master_system(2)},
                            {solve_qubit_valence4(), build_master_system(4)},
                            {solve_qubit_valence4_gauge_fixed(), build_master_system(4)},
                            {solve_qubit_valence6(), build_master_system(6)}};
    for (const auto &k : cases) {
        double worst = 0;
        for (int draw = 0; draw < 1000; ++draw) {
            const double lambda = scale(rng);
            FamilyPoint p = k.family.sample(rng, lambda);
            ASSERT_TRUE(k.family.in_domain(p));
            worst = std::max(worst, residual(k.family.evaluate(p), k.system, lambda) / lambda);
        }
        EXPECT_LT(worst, 1e-12) << "valence " << k.family.valence;
    }
}

TEST(families, valence_two_identity) {
    SolutionFamily f = solve_qubit_valence2();
    MasterSystem s = build_master_system(2);
    ASSERT_EQ(s.equations.size(), 1u);
    EXPECT_EQ(s.equations[0].normalized().to_string(), "|c(1/2)|² = λ");
    FamilyPoint p;
    p.lambda = 3;
    p.phases = {{"phi", 1}};
    EXPECT_NEAR(std::abs(f.evaluate(p).values[0]), std::sqrt(3.0), 1e-15);
}
