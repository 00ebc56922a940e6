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

#ifndef IPT_TENSOR_HPP
#define IPT_TENSOR_HPP

#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ipt/spin.hpp"

namespace ipt {

using Complex = std::complex<double>;

constexpr double default_tolerance = 1e-10;

/// Dense complex array whose legs carry spin labels. Row major, leg 1
/// slowest, m descending along each leg.
class LabeledTensor {
   public:
    LabeledTensor() = default;
    explicit LabeledTensor(std::vector<Spin> legs);
    LabeledTensor(std::vector<Spin> legs, std::vector<Complex> data);

    const std::vector<Spin> &legs() const { return legs_; }
    std::size_t rank() const { return legs_.size(); }
    std::size_t size() const { return data_.size(); }
    const std::vector<Complex> &data() const { return data_; }
    std::vector<Complex> &data() { return data_; }
    std::vector<std::size_t> strides() const;

    Complex &operator[](std::size_t flat) { return data_[flat]; }
    const Complex &operator[](std::size_t flat) const { return data_[flat]; }
    Complex &at(const std::vector<int> &index);
    const Complex &at(const std::vector<int> &index) const;

    double norm_squared() const;
    double norm() const;
    bool is_zero() const;

    LabeledTensor &operator*=(Complex s);
    LabeledTensor &operator+=(const LabeledTensor &other);
    LabeledTensor &operator-=(const LabeledTensor &other);

   private:
    std::size_t flat_index(const std::vector<int> &index) const;

    std::vector<Spin> legs_;
    std::vector<Complex> data_;
};

LabeledTensor operator*(Complex s, LabeledTensor t);
LabeledTensor operator+(LabeledTensor a, const LabeledTensor &b);
LabeledTensor operator-(LabeledTensor a, const LabeledTensor &b);

/// Sum of conj(a) * b over all entries.
Complex inner(const LabeledTensor &a, const LabeledTensor &b);
double max_abs_difference(const LabeledTensor &a, const LabeledTensor &b);

/// Pairs are 1-based (leg of t1, leg of t2). Remaining legs keep their
/// order, t1 first.
LabeledTensor contract(const LabeledTensor &t1, const LabeledTensor &t2,
                       const std::vector<std::pair<int, int>> &pairs);
LabeledTensor outer(const LabeledTensor &t1, const LabeledTensor &t2);

/// Leg k of the result is leg order[k] of t (1-based).
LabeledTensor permute_legs(const LabeledTensor &t, const std::vector<int> &order);

/// Applies op to one leg (1-based).
LabeledTensor apply_on_leg(const LabeledTensor &t, int leg, const Eigen::MatrixXcd &op);

struct Bipartition {
    std::vector<int> a;
    std::vector<int> b;

    std::string to_string() const;
    bool operator==(const Bipartition &) const = default;
};

/// B becomes the ascending complement of A in 1..n.
Bipartition make_bipartition(int n, std::vector<int> a);
void validate_bipartition(const Bipartition &p, std::size_t n);
Bipartition parse_bipartition(const std::string &text);

enum class BipartitionSet { all_half_or_less, balanced_only };

std::vector<Bipartition> bipartitions(int n, BipartitionSet set);

/// The tensor read as a map from the A legs to the B legs: M[b, a] = t[a, b].
Eigen::MatrixXcd as_map(const LabeledTensor &t, const Bipartition &p);
Eigen::MatrixXcd gram(const LabeledTensor &t, const Bipartition &p);

struct DefectResult {
    double lambda_est = 0;
    double defect = 0;
};

DefectResult isometry_defect(const LabeledTensor &t, const Bipartition &p);
Eigen::MatrixXcd reduced_density(const LabeledTensor &t, const std::vector<int> &a);
double invariance_defect(const LabeledTensor &t);

struct SchurEntry {
    Spin total;
    double modulus = 0;
    int multiplicity = 0;
    std::vector<double> moduli;
};

struct SchurSpectrum {
    std::vector<SchurEntry> entries;
};

SchurSpectrum schur_spectrum(const LabeledTensor &t, const Bipartition &p,
                             double tolerance = default_tolerance);

/// Multiplicity of each total spin in the tensor product of the given legs,
/// from the Clebsch-Gordan series. Indexed by twice the total spin.
std::vector<int> coupling_multiplicities(const std::vector<Spin> &legs);

/// Sum of single-leg generators over the given legs, acting on their
/// row-major product space.
Eigen::MatrixXcd total_generator(const std::vector<Spin> &legs, int axis);

}  // namespace ipt

#endif
