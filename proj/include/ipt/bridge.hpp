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

#ifndef IPT_BRIDGE_HPP
#define IPT_BRIDGE_HPP

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "ipt/rational.hpp"
#include "ipt/spin.hpp"
#include "ipt/tensor.hpp"

namespace ipt {

/// Intermediate spins met while coupling strands one at a time. The first
/// entry is the strand spin itself.
class CouplingPath {
   public:
    CouplingPath() = default;
    explicit CouplingPath(std::vector<Spin> steps, Spin strand = half_spin);
    static CouplingPath parse(std::string_view text, Spin strand = half_spin);

    const std::vector<Spin> &steps() const { return steps_; }
    Spin strand() const { return strand_; }
    std::size_t size() const { return steps_.size(); }
    Spin operator[](std::size_t i) const { return steps_[i]; }
    Spin back() const { return steps_.back(); }
    std::string to_string() const;

    auto operator<=>(const CouplingPath &) const = default;

   private:
    std::vector<Spin> steps_;
    Spin strand_ = half_spin;
};

/// Every admissible path of the given length.
std::vector<CouplingPath> coupling_paths(int length, Spin strand = half_spin);

/// Two coupling paths meeting at a shared bridge spin. The j path couples
/// legs 1..n1 left to right; the k path couples legs valence..n1+1, starting
/// from the outermost leg.
class BridgeLabel {
   public:
    BridgeLabel() = default;
    BridgeLabel(CouplingPath j_path, CouplingPath k_path);
    static BridgeLabel parse(std::string_view text, Spin strand = half_spin);

    const CouplingPath &j_path() const { return j_; }
    const CouplingPath &k_path() const { return k_; }
    int valence() const { return static_cast<int>(j_.size() + k_.size()); }
    int split() const { return static_cast<int>(j_.size()); }
    Spin bridge() const { return j_.back(); }
    Spin strand() const { return j_.strand(); }

    /// j path followed by the k path read backwards, bridge spin once.
    std::vector<Spin> double_path() const;
    /// double_path() framed by the trivial spin at both ends; entry a sits
    /// between legs a and a+1.
    std::vector<Spin> closed_path() const;

    /// "1/2,1,3/2 | 3/2,1,1/2": the k path is printed from the bridge out.
    std::string to_string() const;
    /// Interior of the double path, e.g. "(1,3/2,1)".
    std::string short_name() const;

    auto operator<=>(const BridgeLabel &) const = default;

   private:
    CouplingPath j_;
    CouplingPath k_;
};

/// Bridge spin descending, then j path descending, then k path descending.
bool canonical_before(const BridgeLabel &x, const BridgeLabel &y);

enum class LoopDirection { up, down };

Rational loop_factor(Spin j, LoopDirection direction);
/// Closed theta of a single spin-1/2 path with itself.
Rational path_theta(const std::vector<Spin> &steps);
/// Theta network of two paths; zero unless they coincide.
Rational theta(const CouplingPath &j_path, const CouplingPath &k_path);
/// Squared norm of the bridge state of a label.
Rational label_theta(const BridgeLabel &label);

std::vector<BridgeLabel> bridge_basis(int valence, int n1, Spin strand = half_spin);

LabeledTensor build_bridge_state(const BridgeLabel &label);

struct CalibrationEntry {
    Spin from;
    Spin to;
    Rational squared_scale;
};

struct CalibrationTable {
    std::vector<CalibrationEntry> steps;
    /// Bridge join is (-1)^(J-M) times this over the dimension of J.
    Rational join_numerator = 2;
    int max_valence = 0;
    double max_gram_error = 0;
};

/// Computed once on first use; throws CalibrationFailure on a convention bug.
const CalibrationTable &calibrate();
CalibrationTable run_calibration(int max_valence);

struct CoefficientVector {
    std::vector<BridgeLabel> labels;
    std::vector<Complex> values;

    int valence() const { return labels.empty() ? 0 : labels.front().valence(); }
    int split() const { return labels.empty() ? 0 : labels.front().split(); }
    std::size_t index_of(const BridgeLabel &label) const;
    Complex &operator[](const BridgeLabel &label) { return values[index_of(label)]; }
    Complex operator[](const BridgeLabel &label) const { return values[index_of(label)]; }
};

struct RationalCoefficients {
    std::vector<BridgeLabel> labels;
    std::vector<Rational> values;

    CoefficientVector to_complex() const;
};

CoefficientVector zero_coefficients(int valence, int n1);
LabeledTensor assemble(const CoefficientVector &c);

struct Decomposition {
    CoefficientVector coefficients;
    double residual = 0;
};

/// Projects onto the bridge basis of split n1. The residual is relative to
/// the norm of t.
Decomposition decompose(const LabeledTensor &t, int n1, double tolerance = default_tolerance);

RationalCoefficients identity_decomposition(int valence, Spin strand = half_spin);

/// The identity map from legs 1..n onto legs 2n..n+1 written as a state of
/// nested singlets, leg a paired with leg 2n+1-a.
LabeledTensor identity_state(int valence);

/// Sign applied to each numeric bridge state.
int label_sign(const BridgeLabel &label);

}  // namespace ipt

#endif
