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

#ifndef IPT_SU2_HPP
#define IPT_SU2_HPP

#include <Eigen/Dense>

#include "ipt/rational.hpp"
#include "ipt/spin.hpp"
#include "ipt/tensor.hpp"

namespace ipt {

/// Condon-Shortley Clebsch-Gordan coefficient <j1 m1 j2 m2 | J M>, exact.
/// Magnetic numbers are passed doubled. Zero when the selection rules fail.
SignedSqrt cg_exact(Spin j1, int twice_m1, Spin j2, int twice_m2, Spin J, int twice_M);
double cg_coefficient(Spin j1, int twice_m1, Spin j2, int twice_m2, Spin J, int twice_M);

struct GeneratorSet {
    Eigen::MatrixXcd jx;
    Eigen::MatrixXcd jy;
    Eigen::MatrixXcd jz;

    const Eigen::MatrixXcd &axis(int k) const { return k == 0 ? jx : (k == 1 ? jy : jz); }
};

/// Angular momentum matrices in the |j m> basis, m descending.
GeneratorSet generators(Spin j);

/// Twice the magnetic number stored at dense index i of a spin-j leg.
inline int twice_m_at(Spin j, int i) { return j.twice() - 2 * i; }

/// Rank-2 singlet on two spin-1/2 legs, eps[0][1] = +1.
LabeledTensor epsilon_tensor();

/// Closed theta value of three strands: the squared norm of vertex(j, k, l).
Rational vertex_theta(Spin j, Spin k, Spin l);

/// 3-valent invariant: the Wigner 3j symbol scaled to squared norm
/// vertex_theta(j, k, l). vertex(1/2, 1/2, 0) equals epsilon_tensor().
LabeledTensor vertex(Spin j, Spin k, Spin l);

}  // namespace ipt

#endif
