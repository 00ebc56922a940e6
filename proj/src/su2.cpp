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

#include "ipt/su2.hpp"

#include <cmath>
#include <cstdlib>

#include "ipt/errors.hpp"

namespace ipt {

namespace {

bool valid_m(Spin j, int twice_m) {
    return std::abs(twice_m) <= j.twice() && (j.twice() - twice_m) % 2 == 0;
}

}  // namespace

SignedSqrt cg_exact(Spin j1, int twice_m1, Spin j2, int twice_m2, Spin J, int twice_M) {
    if (!valid_m(j1, twice_m1) || !valid_m(j2, twice_m2) || !valid_m(J, twice_M)) {
        return {};
    }
    if (twice_M != twice_m1 + twice_m2 || !admissible_triple(j1, j2, J)) {
        return {};
    }
    const int a = j1.twice(), b = j2.twice(), c = J.twice();
    // Every argument below is an integer once halved.
    auto h = [](int twice) { return twice / 2; };
    Rational pre = Rational(c + 1) * factorial(h(c + a - b)) * factorial(h(c - a + b)) *
                   factorial(h(a + b - c)) / factorial(h(a + b + c) + 1);
    pre *= factorial(h(c + twice_M)) * factorial(h(c - twice_M)) * factorial(h(a - twice_m1)) *
           factorial(h(a + twice_m1)) * factorial(h(b - twice_m2)) * factorial(h(b + twice_m2));

    Rational sum = 0;
    for (int k = 0;; ++k) {
        int d1 = h(a + b - c) - k;
        int d2 = h(a - twice_m1) - k;
        int d3 = h(b + twice_m2) - k;
        int d4 = h(c - b + twice_m1) + k;
        int d5 = h(c - a - twice_m2) + k;
        if (d1 < 0 || d2 < 0 || d3 < 0) {
            break;
        }
        if (d4 < 0 || d5 < 0) {
            continue;
        }
        Rational term = 1 / (factorial(k) * factorial(d1) * factorial(d2) * factorial(d3) *
                             factorial(d4) * factorial(d5));
        sum += (k % 2 == 0) ? term : Rational(-term);
    }
    if (sum == 0) {
        return {};
    }
    return {sum > 0 ? 1 : -1, sum * sum * pre};
}

double cg_coefficient(Spin j1, int twice_m1, Spin j2, int twice_m2, Spin J, int twice_M) {
    return cg_exact(j1, twice_m1, j2, twice_m2, J, twice_M).value();
}

GeneratorSet generators(Spin j) {
    const int d = j.dim();
    const double jj = j.value();
    Eigen::MatrixXcd raise = Eigen::MatrixXcd::Zero(d, d);
    Eigen::MatrixXcd jz = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        double m = twice_m_at(j, i) / 2.0;
        jz(i, i) = m;
        if (i > 0) {
            raise(i - 1, i) = std::sqrt(jj * (jj + 1) - m * (m + 1));
        }
    }
    Eigen::MatrixXcd lower = raise.adjoint();
    GeneratorSet g;
    g.jx = (raise + lower) / 2.0;
    g.jy = (raise - lower) / Complex(0, 2);
    g.jz = jz;
    return g;
}

LabeledTensor epsilon_tensor() {
    LabeledTensor t({half_spin, half_spin});
    t.at({0, 1}) = 1;
    t.at({1, 0}) = -1;
    return t;
}

Rational vertex_theta(Spin j, Spin k, Spin l) {
    if (!admissible_triple(j, k, l)) {
        throw Error(ErrorCode::inadmissible_triple,
                    "(" + to_string(j) + ", " + to_string(k) + ", " + to_string(l) + ")");
    }
    const int a = j.twice(), b = k.twice(), c = l.twice();
    const int x = (a + b - c) / 2, y = (b + c - a) / 2, z = (a + c - b) / 2;
    return factorial(x + y + z + 1) * factorial(x) * factorial(y) * factorial(z) /
           (factorial(a) * factorial(b) * factorial(c));
}

LabeledTensor vertex(Spin j, Spin k, Spin l) {
    const double scale = std::sqrt(to_double(vertex_theta(j, k, l)) / l.dim());
    LabeledTensor t({j, k, l});
    for (int i1 = 0; i1 < j.dim(); ++i1) {
        for (int i2 = 0; i2 < k.dim(); ++i2) {
            for (int i3 = 0; i3 < l.dim(); ++i3) {
                int m1 = twice_m_at(j, i1), m2 = twice_m_at(k, i2), m3 = twice_m_at(l, i3);
                if (m1 + m2 + m3 != 0) {
                    continue;
                }
                int phase = (j.twice() - k.twice() - m3) / 2;
                double sign = (phase % 2 == 0) ? 1.0 : -1.0;
                t.at({i1, i2, i3}) = sign * scale * cg_coefficient(j, m1, k, m2, l, -m3);
            }
        }
    }
    return t;
}

}  // namespace ipt
