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
#include <random>

#include "ipt/bridge.hpp"
#include "ipt/errors.hpp"
#include "ipt/repart.hpp"
#include "ipt/su2.hpp"

using namespace ipt;

namespace {

using R = Rational;

void expect_error(ErrorCode code, const std::function<void()> &f) {
    try {
        f();
        ADD_FAILURE() << "expected " << error_name(code);
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), code) << e.what();
    }
}

// Canonical valence-4 order is (bridge 1, bridge 0); the published one is reversed.
RationalMatrix swap_order_2(const RationalMatrix &m) {
    RationalMatrix out(2, 2);
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
            out(r, c) = m(1 - r, 1 - c);
        }
    }
    return out;
}

RationalMatrix valence6_pstar() {
    return {{R(-1, 3), -1, 0, 0, 0}, {R(-8, 9), R(1, 3), 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, -1}};
}

RationalMatrix valence6_p45() {
    return {{1, 0, 0, 0, 0},
            {0, R(-1, 2), -1, 0, 0},
            {0, R(-3, 4), R(1, 2), 0, 0},
            {0, 0, 0, R(-1, 2), -1},
            {0, 0, 0, R(-3, 4), R(1, 2)}};
}

std::vector<int> transposition(int valence, int leg) {
    std::vector<int> p(valence);
    for (int i = 0; i < valence; ++i) {
        p[i] = i + 1;
    }
    std::swap(p[leg - 1], p[leg]);
    return p;
}

}  // namespace

TEST(words, parse_and_print) {
    Word w = parse_word("P34 P* P34");
    ASSERT_EQ(w.size(), 3u);
    EXPECT_EQ(w[0], (Move{false, 3}));
    EXPECT_TRUE(w[1].pstar);
    EXPECT_EQ(to_string(w), "P34 P* P34");
    EXPECT_EQ(to_string(parse_word("  P10,11\tP*")), "P10,11 P*");
    expect_error(ErrorCode::parse_error, [] { parse_word(""); });
    expect_error(ErrorCode::parse_error, [] { parse_word("P35"); });
    expect_error(ErrorCode::parse_error, [] { parse_word("Q12"); });
    expect_error(ErrorCode::parse_error, [] { parse_word("P1011"); });
}

TEST(conventions, names) {
    EXPECT_EQ(convention_name(SignConvention::binor_crossing), "binor");
    EXPECT_EQ(convention_name(SignConvention::plain_swap), "swap");
    EXPECT_EQ(parse_convention("binor"), SignConvention::binor_crossing);
    EXPECT_EQ(parse_convention("swap"), SignConvention::plain_swap);
    expect_error(ErrorCode::parse_error, [] { parse_convention("crossing"); });
}

TEST(pstar, valence_four) {
    RepartitionMatrix p = pstar_matrix(4);
    EXPECT_EQ(p.labels[0].short_name(), "(1)");
    EXPECT_EQ(p.matrix, (RationalMatrix{{R(-1, 2), -1}, {R(-3, 4), R(1, 2)}}));
    EXPECT_EQ(swap_order_2(p.matrix), (RationalMatrix{{R(1, 2), R(-3, 4)}, {-1, R(-1, 2)}}));
    EXPECT_TRUE((p.matrix * p.matrix).is_identity());
}

TEST(pstar, valence_six) {
    RepartitionMatrix p = pstar_matrix(6);
    EXPECT_EQ(p.matrix, valence6_pstar());
    EXPECT_TRUE((p.matrix * p.matrix).is_identity());
    expect_error(ErrorCode::odd_valence, [] { pstar_matrix(5); });
}

TEST(trivial_swap, examples) {
    RepartitionMatrix p = trivial_swap_matrix(4, 3, 4);
    EXPECT_EQ(swap_order_2(p.matrix), (RationalMatrix{{-1, 0}, {0, 1}}));
    EXPECT_EQ(trivial_swap_matrix(6, 4, 5).matrix, valence6_p45());
    for (int valence : {4, 6, 8}) {
        for (int leg = 1; leg < valence; ++leg) {
            if (leg == valence / 2) {
                expect_error(ErrorCode::crosses_bridge, [&] { trivial_swap_matrix(valence, leg, leg + 1); });
                continue;
            }
            EXPECT_TRUE((trivial_swap_matrix(valence, leg, leg + 1).matrix *
                         trivial_swap_matrix(valence, leg, leg + 1).matrix)
                            .is_identity());
        }
    }
}

TEST(compose, valence_four_published) {
    RepartitionMatrix r = compose(4, parse_word("P34 P* P34"));
    EXPECT_EQ(swap_order_2(r.matrix), (RationalMatrix{{R(1, 2), R(3, 4)}, {1, R(-1, 2)}}));
    EXPECT_EQ(compose(4, parse_word("P*")).matrix, pstar_matrix(4).matrix);
}

// Product of the two factors above, computed by hand and by the swap oracle.
TEST(compose, valence_six_product) {
    RepartitionMatrix r = compose(6, parse_word("P45 P* P45"));
    RationalMatrix expected{{R(-1, 3), R(1, 2), 1, 0, 0},
                            {R(4, 9), R(5, 6), R(-1, 3), 0, 0},
                            {R(2, 3), R(-1, 4), R(1, 2), 0, 0},
                            {0, 0, 0, R(-1, 2), 1},
                            {0, 0, 0, R(3, 4), R(1, 2)}};
    EXPECT_EQ(r.matrix, expected);
    EXPECT_EQ(r.matrix, valence6_p45() * valence6_pstar() * valence6_p45());
    EXPECT_TRUE((r.matrix * r.matrix).is_identity());
}

TEST(involutions, every_single_swap_squares_to_identity) {
    for (int valence = 2; valence <= 8; ++valence) {
        for (int n1 = 1; n1 < valence; ++n1) {
            for (int p = 1; p < valence; ++p) {
                RationalMatrix m = swap_matrix(valence, n1, p);
                EXPECT_TRUE((m * m).is_identity()) << valence << " " << n1 << " " << p;
            }
        }
    }
}

TEST(involutions, words_times_reverse) {
    for (const char *w : {"P12 P*", "P34 P* P23", "P* P56 P* P12"}) {
        RepartitionMatrix r = compose(8, parse_word(w));
        EXPECT_TRUE((r.matrix * reversed(r).matrix).is_identity()) << w;
    }
}

TEST(involutions, theta_norm_preserved) {
    for (int valence : {2, 4, 6, 8}) {
        for (int p = 1; p < valence; ++p) {
            Word w{p == valence / 2 ? Move{true, p} : Move{false, p}};
            EXPECT_TRUE(preserves_theta_norm(compose(valence, w))) << valence << " " << p;
        }
    }
}

TEST(conventions, binor_flips_each_letter) {
    for (const char *w : {"P*", "P45 P* P45", "P12 P*"}) {
        Word word = parse_word(w);
        RationalMatrix plain = compose(6, word).matrix;
        RationalMatrix binor = compose(6, word, SignConvention::binor_crossing).matrix;
        EXPECT_EQ(binor, word.size() % 2 ? -plain : plain) << w;
    }
}

TEST(numeric, agrees_with_exact) {
    for (int valence : {4, 6, 8}) {
        for (int leg = 1; leg < valence; ++leg) {
            NumericRepartition n = numeric_repart_matrix(valence, transposition(valence, leg));
            EXPECT_LT(n.max_residual, 1e-10);
            RationalMatrix exact = swap_matrix(valence, valence / 2, leg);
            auto sign = global_sign(exact, n.matrix, 1e-10);
            ASSERT_TRUE(sign.has_value()) << valence << " " << leg;
            EXPECT_EQ(*sign, 1);
            auto binor = global_sign(-exact, n.matrix, 1e-10);
            ASSERT_TRUE(binor.has_value());
            EXPECT_EQ(*binor, -1);
        }
    }
}

TEST(numeric, composed_word) {
    NumericRepartition n = numeric_repart_matrix(6, {1, 2, 5, 4, 3, 6});
    auto sign = global_sign(compose(6, parse_word("P45 P* P45")).matrix, n.matrix, 1e-10);
    ASSERT_TRUE(sign.has_value());
    EXPECT_EQ(*sign, 1);
}

TEST(numeric, identity_permutation) {
    NumericRepartition n = numeric_repart_matrix(6, {1, 2, 3, 4, 5, 6});
    EXPECT_LT((n.matrix - Eigen::MatrixXd::Identity(5, 5)).norm(), 1e-12);
}

TEST(numeric, global_sign_rejects_mismatch) {
    RationalMatrix m{{1, 0}, {0, 1}};
    Eigen::MatrixXd d(2, 2);
    d << 1, 0, 0, -1;
    EXPECT_FALSE(global_sign(m, d).has_value());
}

TEST(shift, vertex_ratio_is_leg_dimension) {
    LabeledTensor v = vertex(half_spin, half_spin, Spin::from_twice(2));
    v *= 1 / v.norm();
    ShiftCheck s = unbalanced_shift_check(v, make_bipartition(3, {1}));
    EXPECT_EQ(s.verdict, ShiftVerdict::pass);
    EXPECT_NEAR(s.lambda_ratio, 2, 1e-12);
    EXPECT_EQ(s.expected_ratio, 2);
    EXPECT_TRUE(s.after.a.empty());

    ShiftCheck big = unbalanced_shift_check(v, make_bipartition(3, {3}));
    EXPECT_EQ(big.verdict, ShiftVerdict::pass);
    EXPECT_NEAR(big.lambda_ratio, 3, 1e-12);
}

TEST(shift, four_leg_identity) {
    ShiftCheck s = unbalanced_shift_check(identity_state(4), make_bipartition(4, {1, 2}));
    EXPECT_EQ(s.moved_leg, 2);
    EXPECT_EQ(s.verdict, ShiftVerdict::pass);
    EXPECT_NEAR(s.lambda_ratio, 2, 1e-12);
}

TEST(shift, degenerate_and_failing_inputs) {
    LabeledTensor bell = epsilon_tensor();
    EXPECT_EQ(unbalanced_shift_check(bell, make_bipartition(2, {1})).verdict, ShiftVerdict::no_op);
    EXPECT_EQ(shift_verdict_name(ShiftVerdict::no_op), "noop");
    LabeledTensor one = build_bridge_state(bridge_basis(4, 2)[0]);
    ShiftCheck s = unbalanced_shift_check(one, make_bipartition(4, {1, 2}));
    EXPECT_EQ(s.verdict, ShiftVerdict::fail);
    EXPECT_GT(s.defect_before, 0.1);
}

TEST(algorithm1, valence_two) {
    FeasibilityTrace t = algorithm1_run(2);
    EXPECT_TRUE(t.exact);
    EXPECT_TRUE(t.feasible);
    EXPECT_NE(t.surviving_family.find("identity"), std::string::npos);
    EXPECT_TRUE(t.contradiction.empty());
}

TEST(algorithm1, valence_four) {
    FeasibilityTrace t = algorithm1_run(4);
    EXPECT_TRUE(t.exact);
    EXPECT_FALSE(t.feasible);
    ASSERT_EQ(t.contradiction.size(), 2u);
    EXPECT_EQ(t.contradiction[0], "Δφ = 0 (mod 2π)");
    EXPECT_EQ(t.contradiction[1], "Δφ = π (mod 2π)");
}

TEST(algorithm1, valence_six) {
    FeasibilityTrace t = algorithm1_run(6);
    EXPECT_TRUE(t.exact);
    EXPECT_FALSE(t.feasible);
    bool saw_amplitude = false;
    for (const auto &s : t.steps) {
        if (s.constraint.find("A = 2/3 √λ, ρ = φ") != std::string::npos) saw_amplitude = true;
    }
    EXPECT_TRUE(saw_amplitude);
    ASSERT_FALSE(t.steps.empty());
    const std::string &last = t.steps.back().constraint;
    EXPECT_EQ(last.substr(last.size() - std::string("forces λ = 0").size()), "forces λ = 0");
    EXPECT_EQ(t.contradiction.back(), "λ > 0");
}

TEST(algorithm1, odd_valence_has_no_invariant) {
    FeasibilityTrace t = algorithm1_run(5);
    EXPECT_FALSE(t.feasible);
}

TEST(algorithm1, verdicts_invariant_under_sign_flips) {
    for (int valence : {2, 4, 6}) {
        FeasibilityTrace plain = algorithm1_run(valence);
        for (auto c : {SignConvention::plain_swap, SignConvention::binor_crossing}) {
            for (bool negate : {false, true}) {
                Algorithm1Options o;
                o.convention = c;
                o.negate_matrices = negate;
                FeasibilityTrace t = algorithm1_run(valence, o);
                EXPECT_EQ(t.feasible, plain.feasible) << valence;
                EXPECT_EQ(t.contradiction, plain.contradiction) << valence;
                EXPECT_EQ(t.surviving_family, plain.surviving_family) << valence;
            }
        }
    }
}
