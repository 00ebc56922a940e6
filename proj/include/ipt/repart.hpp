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

#ifndef IPT_REPART_HPP
#define IPT_REPART_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ipt/bridge.hpp"
#include "ipt/rational.hpp"
#include "ipt/tensor.hpp"

namespace ipt {

enum class SignConvention { binor_crossing, plain_swap };

std::string convention_name(SignConvention c);
SignConvention parse_convention(std::string_view text);

/// One letter of a permutation word. position p exchanges legs p and p+1;
/// the bridge crossing P* has pstar set and position equal to the split.
struct Move {
    bool pstar = false;
    int position = 0;

    std::string to_string() const;
    bool operator==(const Move &) const = default;
};

using Word = std::vector<Move>;

/// "P34 P* P34", "P10,11".
Word parse_word(std::string_view text);
std::string to_string(const Word &w);

struct RepartitionMatrix {
    int valence = 0;
    Word word;
    std::vector<BridgeLabel> labels;
    RationalMatrix matrix;
    SignConvention convention = SignConvention::plain_swap;
};

/// Exchange of legs p and p+1 on the basis with j path of length n1.
/// Plain swap convention, any split.
RationalMatrix swap_matrix(int valence, int n1, int position);

RepartitionMatrix pstar_matrix(int valence, SignConvention c = SignConvention::plain_swap);
RepartitionMatrix trivial_swap_matrix(int valence, int first_leg, int second_leg,
                                      SignConvention c = SignConvention::plain_swap);
/// Left-to-right product of the letters.
RepartitionMatrix compose(int valence, const Word &word, SignConvention c = SignConvention::plain_swap);

/// Reverses the word and multiplies; R times this is the identity.
RepartitionMatrix reversed(const RepartitionMatrix &r);

struct NumericRepartition {
    int valence = 0;
    std::vector<int> permutation;
    std::vector<BridgeLabel> labels;
    Eigen::MatrixXd matrix;
    double max_residual = 0;
};

/// Leg k of each permuted state is leg permutation[k] of the original
/// (1-based). Plain swap convention.
NumericRepartition numeric_repart_matrix(int valence, const std::vector<int> &permutation);

/// +1 or -1 when numeric equals sign times exact within tolerance.
std::optional<int> global_sign(const RationalMatrix &exact, const Eigen::MatrixXd &numeric,
                               double tolerance = default_tolerance);

/// Theta weighted norm form: R^T diag(theta) R == diag(theta).
bool preserves_theta_norm(const RepartitionMatrix &r);

enum class ShiftVerdict { pass, fail, no_op };

std::string shift_verdict_name(ShiftVerdict v);

struct ShiftCheck {
    Bipartition before;
    Bipartition after;
    int moved_leg = 0;
    double lambda_before = 0;
    double lambda_after = 0;
    double defect_before = 0;
    double defect_after = 0;
    double lambda_ratio = 0;
    double expected_ratio = 0;
    ShiftVerdict verdict = ShiftVerdict::no_op;
};

/// Moves the last leg of A into B and compares the isometry constants.
ShiftCheck unbalanced_shift_check(const LabeledTensor &t, const Bipartition &p,
                                  double tolerance = default_tolerance);

struct TraceStep {
    std::string action;
    std::string constraint;
    std::string origin;
};

struct FeasibilityTrace {
    int valence = 0;
    bool exact = true;
    bool feasible = false;
    std::vector<TraceStep> steps;
    /// The two constraints that cannot hold together.
    std::vector<std::string> contradiction;
    std::string surviving_family;
    std::string note;
    double numeric_min_defect = 0;
};

struct Algorithm1Options {
    SignConvention convention = SignConvention::plain_swap;
    /// Multiplies every repartition matrix by -1.
    bool negate_matrices = false;
    int numeric_restarts = 20;
    std::uint64_t seed = 1;
};

FeasibilityTrace algorithm1_run(int valence, const Algorithm1Options &options = {});

}  // namespace ipt

#endif
