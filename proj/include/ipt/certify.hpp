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

#ifndef IPT_CERTIFY_HPP
#define IPT_CERTIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ipt/bridge.hpp"
#include "ipt/tensor.hpp"

namespace ipt {

enum class Verdict { perfect, not_perfect, not_invariant };

std::string verdict_name(Verdict v);

/// particle_count takes |A| <= |B|; dimension_count takes dim A <= dim B.
enum class PerfectnessRule { particle_count, dimension_count };

struct BipartitionReport {
    Bipartition bipartition;
    double lambda_est = 0;
    double defect = 0;
    bool has_spectrum = false;
    SchurSpectrum spectrum;
};

struct CertReport {
    std::vector<BipartitionReport> per_bipartition;
    double invariance = 0;
    Verdict verdict = Verdict::not_perfect;
    double tolerance = default_tolerance;
    PerfectnessRule rule = PerfectnessRule::particle_count;

    double max_defect() const;
};

CertReport certify_perfect(const LabeledTensor &t, double tolerance = default_tolerance,
                           PerfectnessRule rule = PerfectnessRule::particle_count);

/// Bipartitions used by a perfectness rule for the given legs.
std::vector<Bipartition> perfectness_bipartitions(const std::vector<Spin> &legs, PerfectnessRule rule);

struct LayoutVerdict {
    bool pass = false;
    std::string rule;
    std::string reason;
};

LayoutVerdict layout_check_even(const std::vector<Spin> &legs);
LayoutVerdict layout_check_odd(const std::vector<Spin> &legs);
LayoutVerdict layout_check(const std::vector<Spin> &legs);
LayoutVerdict scott_bound(int local_dim, int valence);

struct PhaseWalkReport {
    double x = 0;
    double interval_a[2] = {0, 0};
    double interval_b[2] = {0, 0};
    bool disjoint = false;
    bool inequality_holds = false;
    int grid_points = 0;
    double grid_min_residual = 0;
    double grid_argmin_dphi = 0;
};

/// Two windows for the relative phase, their disjointness, and a brute-force
/// scan of both walk equations over a grid of the given size per angle.
PhaseWalkReport phase_walk_feasibility(int grid = 200);

/// The two walk equations, as complex residuals.
Complex walk_residual_first(double theta_s, double theta_a, double xi);
Complex walk_residual_second(double theta_s, double theta_a, double xi);

/// Total spin range of the A legs: largest is the plain sum, smallest the
/// minimum of |sum of +-j_i| over sign choices. The coupling series itself is
/// listed alongside.
struct SchurLadder {
    SchurSpectrum spectrum;
    Spin j_min;
    Spin j_max;
    std::vector<Spin> series;
};

SchurLadder ladder_range(const std::vector<Spin> &a_legs);
SchurLadder schur_ladder_report(const LabeledTensor &t, const Bipartition &p, double tolerance = default_tolerance);

enum class SearchObjective { summed_defect, max_defect };

struct SearchResult {
    std::vector<Spin> legs;
    std::string basis;
    std::vector<std::string> basis_labels;
    std::vector<Complex> best_coefficients;
    double best_defect = 0;
    double best_sum_defect = 0;
    double best_max_defect = 0;
    int restarts = 0;
    std::uint64_t seed = 0;
    SearchObjective objective = SearchObjective::summed_defect;
    long evaluations = 0;
};

/// Orthonormal invariant basis used by the search. Bridge states for an
/// even number of spin-1/2 legs, sequential coupling paths otherwise.
struct InvariantBasis {
    std::string kind;
    std::vector<std::string> labels;
    std::vector<LabeledTensor> states;
};

InvariantBasis invariant_basis(const std::vector<Spin> &legs);

/// Orthonormal states coupling legs one by one, ending in total spin 0.
InvariantBasis sequential_coupling_basis(const std::vector<Spin> &legs);

SearchResult search_min_defect(const std::vector<Spin> &legs, int restarts, std::uint64_t seed,
                               SearchObjective objective = SearchObjective::summed_defect);

/// Defects over all bipartitions of the particle-count rule, evaluated
/// through the Schur blocks of an invariant tensor.
class InvariantDefectEvaluator {
   public:
    explicit InvariantDefectEvaluator(const InvariantBasis &basis);
    std::vector<double> defects(const std::vector<Complex> &coefficients) const;
    std::size_t dimension() const { return dimension_; }
    const std::vector<Bipartition> &partitions() const { return partitions_; }

   private:
    struct Block {
        int weight = 0;
        int multiplicity = 0;
        /// kernel[(alpha * m + beta) * n * n + mu * n + nu]
        std::vector<Complex> kernel;
    };
    struct Split {
        int dim_a = 0;
        std::vector<Block> blocks;
    };
    std::size_t dimension_ = 0;
    std::vector<Bipartition> partitions_;
    std::vector<Split> splits_;
};

}  // namespace ipt

#endif
