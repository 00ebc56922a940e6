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

#ifndef IPT_MASTER_HPP
#define IPT_MASTER_HPP

#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "ipt/bridge.hpp"
#include "ipt/rational.hpp"

namespace ipt {

/// weight * c[left] * conj(c[right])
struct MasterTerm {
    BridgeLabel left;
    BridgeLabel right;
    Rational weight;
};

/// sum of terms = rhs * lambda
struct MasterEquation {
    CouplingPath j;
    CouplingPath j_prime;
    std::vector<MasterTerm> terms;
    Rational rhs;

    bool diagonal() const { return j == j_prime; }
    /// Single-term equations get unit weight, other diagonal ones unit rhs.
    MasterEquation normalized() const;
    Complex evaluate(const CoefficientVector &c, double lambda) const;
    std::string to_string() const;
};

struct MasterSystem {
    int valence = 0;
    std::vector<BridgeLabel> labels;
    std::vector<MasterEquation> equations;
};

/// Balanced split, spin-1/2 strands.
MasterSystem build_master_system(int valence);

bool max_coeff_check(const CoefficientVector &c, double lambda, double tolerance = default_tolerance);

/// Root-sum-square of all equation residuals.
double residual(const CoefficientVector &c, const MasterSystem &system, double lambda);

struct FamilyPoint {
    double lambda = 1;
    std::map<std::string, double> amplitudes;
    std::map<std::string, double> phases;
};

struct BoundEntry {
    BridgeLabel label;
    std::string expression;
    std::function<Complex(const FamilyPoint &)> value;
};

struct FamilyConstraint {
    std::string expression;
    /// Non-positive inside the domain.
    std::function<double(const FamilyPoint &)> excess;
};

struct SolutionFamily {
    int valence = 0;
    std::vector<std::string> free_amplitudes;
    std::vector<std::string> free_phases;
    std::vector<BoundEntry> bound_entries;
    std::vector<FamilyConstraint> constraints;

    CoefficientVector evaluate(const FamilyPoint &p) const;
    bool in_domain(const FamilyPoint &p, double tolerance = 1e-12) const;
    /// Uniform phases; amplitudes drawn inside the domain.
    FamilyPoint sample(std::mt19937_64 &rng, double lambda = 1) const;
};

SolutionFamily solve_qubit_valence2();
SolutionFamily solve_qubit_valence4();
/// Same family with the maximal coefficient real positive; one free phase.
SolutionFamily solve_qubit_valence4_gauge_fixed();
SolutionFamily solve_qubit_valence6();

/// Largest amplitude allowed for the free valence-6 coefficient, squared,
/// in units of lambda.
inline const Rational valence6_amplitude_bound = Rational(4, 9);

}  // namespace ipt

#endif
