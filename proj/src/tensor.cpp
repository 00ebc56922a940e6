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

#include "ipt/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "ipt/errors.hpp"
#include "ipt/su2.hpp"

namespace ipt {

namespace {

std::size_t product_of_dims(const std::vector<Spin> &legs) {
    std::size_t n = 1;
    for (Spin s : legs) {
        n *= static_cast<std::size_t>(s.dim());
    }
    return n;
}

std::vector<Spin> legs_at(const LabeledTensor &t, const std::vector<int> &idx) {
    std::vector<Spin> out;
    for (int i : idx) {
        out.push_back(t.legs()[i - 1]);
    }
    return out;
}

}  // namespace

LabeledTensor::LabeledTensor(std::vector<Spin> legs)
    : legs_(std::move(legs)), data_(product_of_dims(legs_), Complex(0)) {
}

LabeledTensor::LabeledTensor(std::vector<Spin> legs, std::vector<Complex> data)
    : legs_(std::move(legs)), data_(std::move(data)) {
    if (data_.size() != product_of_dims(legs_)) {
        throw Error(ErrorCode::invalid_argument, "data length does not match leg dimensions");
    }
    for (const Complex &z : data_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw Error(ErrorCode::invalid_argument, "non-finite tensor entry");
        }
    }
}

std::vector<std::size_t> LabeledTensor::strides() const {
    std::vector<std::size_t> s(legs_.size(), 1);
    for (std::size_t i = legs_.size(); i-- > 1;) {
        s[i - 1] = s[i] * static_cast<std::size_t>(legs_[i].dim());
    }
    return s;
}

std::size_t LabeledTensor::flat_index(const std::vector<int> &index) const {
    if (index.size() != legs_.size()) {
        throw Error(ErrorCode::invalid_argument, "index rank mismatch");
    }
    std::size_t flat = 0;
    for (std::size_t i = 0; i < index.size(); ++i) {
        if (index[i] < 0 || index[i] >= legs_[i].dim()) {
            throw Error(ErrorCode::invalid_argument, "index out of range");
        }
        flat = flat * legs_[i].dim() + index[i];
    }
    return flat;
}

Complex &LabeledTensor::at(const std::vector<int> &index) {
    return data_[flat_index(index)];
}

const Complex &LabeledTensor::at(const std::vector<int> &index) const {
    return data_[flat_index(index)];
}

double LabeledTensor::norm_squared() const {
    double s = 0;
    for (const Complex &z : data_) {
        s += std::norm(z);
    }
    return s;
}

double LabeledTensor::norm() const {
    return std::sqrt(norm_squared());
}

bool LabeledTensor::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Complex z) { return z == Complex(0); });
}

LabeledTensor &LabeledTensor::operator*=(Complex s) {
    for (Complex &z : data_) {
        z *= s;
    }
    return *this;
}

LabeledTensor &LabeledTensor::operator+=(const LabeledTensor &other) {
    if (other.legs_ != legs_) {
        throw Error(ErrorCode::spin_mismatch, "adding tensors with different legs");
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] += other.data_[i];
    }
    return *this;
}

LabeledTensor &LabeledTensor::operator-=(const LabeledTensor &other) {
    if (other.legs_ != legs_) {
        throw Error(ErrorCode::spin_mismatch, "subtracting tensors with different legs");
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] -= other.data_[i];
    }
    return *this;
}

LabeledTensor operator*(Complex s, LabeledTensor t) {
    t *= s;
    return t;
}

LabeledTensor operator+(LabeledTensor a, const LabeledTensor &b) {
    a += b;
    return a;
}

LabeledTensor operator-(LabeledTensor a, const LabeledTensor &b) {
    a -= b;
    return a;
}

Complex inner(const LabeledTensor &a, const LabeledTensor &b) {
    if (a.legs() != b.legs()) {
        throw Error(ErrorCode::spin_mismatch, "inner product of tensors with different legs");
    }
    Complex s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

double max_abs_difference(const LabeledTensor &a, const LabeledTensor &b) {
    if (a.legs() != b.legs()) {
        throw Error(ErrorCode::spin_mismatch, "comparing tensors with different legs");
    }
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

LabeledTensor permute_legs(const LabeledTensor &t, const std::vector<int> &order) {
    const std::size_t n = t.rank();
    if (order.size() != n) {
        throw Error(ErrorCode::invalid_argument, "permutation length does not match rank");
    }
    std::vector<bool> seen(n, false);
    for (int o : order) {
        if (o < 1 || o > static_cast<int>(n) || seen[o - 1]) {
            throw Error(ErrorCode::invalid_argument, "not a permutation of the legs");
        }
        seen[o - 1] = true;
    }
    LabeledTensor out(legs_at(t, order));
    auto src_strides = t.strides();
    std::vector<std::size_t> step(n);
    for (std::size_t k = 0; k < n; ++k) {
        step[k] = src_strides[order[k] - 1];
    }
    std::vector<int> idx(n, 0);
    std::size_t src = 0;
    const auto &legs = out.legs();
    for (std::size_t flat = 0; flat < out.size(); ++flat) {
        out[flat] = t[src];
        for (std::size_t k = n; k-- > 0;) {
            if (++idx[k] < legs[k].dim()) {
                src += step[k];
                break;
            }
            src -= step[k] * (legs[k].dim() - 1);
            idx[k] = 0;
        }
    }
    return out;
}

LabeledTensor contract(const LabeledTensor &t1, const LabeledTensor &t2,
                       const std::vector<std::pair<int, int>> &pairs) {
    const int n1 = static_cast<int>(t1.rank()), n2 = static_cast<int>(t2.rank());
    std::vector<bool> used1(n1, false), used2(n2, false);
    std::vector<int> c1, c2;
    for (auto [a, b] : pairs) {
        if (a < 1 || a > n1 || b < 1 || b > n2 || used1[a - 1] || used2[b - 1]) {
            throw Error(ErrorCode::invalid_argument, "bad contraction pair");
        }
        if (t1.legs()[a - 1] != t2.legs()[b - 1]) {
            throw Error(ErrorCode::spin_mismatch, "contracted legs carry different spins");
        }
        used1[a - 1] = used2[b - 1] = true;
        c1.push_back(a);
        c2.push_back(b);
    }
    std::vector<int> free1, free2;
    for (int i = 1; i <= n1; ++i) {
        if (!used1[i - 1]) free1.push_back(i);
    }
    for (int i = 1; i <= n2; ++i) {
        if (!used2[i - 1]) free2.push_back(i);
    }
    std::vector<int> order1 = free1, order2 = c2;
    order1.insert(order1.end(), c1.begin(), c1.end());
    order2.insert(order2.end(), free2.begin(), free2.end());
    LabeledTensor p1 = permute_legs(t1, order1);
    LabeledTensor p2 = permute_legs(t2, order2);

    std::vector<Spin> out_legs = legs_at(t1, free1);
    auto right = legs_at(t2, free2);
    out_legs.insert(out_legs.end(), right.begin(), right.end());
    const Eigen::Index rows = static_cast<Eigen::Index>(product_of_dims(legs_at(t1, free1)));
    const Eigen::Index inner_dim = static_cast<Eigen::Index>(product_of_dims(legs_at(t1, c1)));
    const Eigen::Index cols = static_cast<Eigen::Index>(product_of_dims(right));
    using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::Map<const RowMajor> m1(p1.data().data(), rows, inner_dim);
    Eigen::Map<const RowMajor> m2(p2.data().data(), inner_dim, cols);
    RowMajor prod = m1 * m2;
    return LabeledTensor(out_legs, std::vector<Complex>(prod.data(), prod.data() + prod.size()));
}

LabeledTensor outer(const LabeledTensor &t1, const LabeledTensor &t2) {
    return contract(t1, t2, {});
}

LabeledTensor apply_on_leg(const LabeledTensor &t, int leg, const Eigen::MatrixXcd &op) {
    if (leg < 1 || leg > static_cast<int>(t.rank())) {
        throw Error(ErrorCode::invalid_argument, "leg out of range");
    }
    const int d = t.legs()[leg - 1].dim();
    if (op.rows() != d || op.cols() != d) {
        throw Error(ErrorCode::spin_mismatch, "operator dimension does not match leg");
    }
    const std::size_t stride = t.strides()[leg - 1];
    const std::size_t block = stride * d;
    LabeledTensor out(t.legs());
    for (std::size_t base = 0; base < t.size(); base += block) {
        for (std::size_t inner_idx = 0; inner_idx < stride; ++inner_idx) {
            for (int r = 0; r < d; ++r) {
                Complex s = 0;
                for (int c = 0; c < d; ++c) {
                    s += op(r, c) * t[base + c * stride + inner_idx];
                }
                out[base + r * stride + inner_idx] = s;
            }
        }
    }
    return out;
}

std::string Bipartition::to_string() const {
    auto join = [](const std::vector<int> &v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            s += (i ? "," : "") + std::to_string(v[i]);
        }
        return s;
    };
    return join(a) + "|" + join(b);
}

Bipartition make_bipartition(int n, std::vector<int> a) {
    Bipartition p;
    p.a = std::move(a);
    for (int i = 1; i <= n; ++i) {
        if (std::find(p.a.begin(), p.a.end(), i) == p.a.end()) {
            p.b.push_back(i);
        }
    }
    validate_bipartition(p, static_cast<std::size_t>(n));
    return p;
}

void validate_bipartition(const Bipartition &p, std::size_t n) {
    std::vector<int> seen(n + 1, 0);
    for (const auto *side : {&p.a, &p.b}) {
        for (int i : *side) {
            if (i < 1 || i > static_cast<int>(n) || seen[i]++) {
                throw Error(ErrorCode::bad_bipartition, "'" + p.to_string() + "' is not a bipartition of " +
                                                            std::to_string(n) + " legs");
            }
        }
    }
    if (p.a.size() + p.b.size() != n) {
        throw Error(ErrorCode::bad_bipartition,
                    "'" + p.to_string() + "' does not cover " + std::to_string(n) + " legs");
    }
}

Bipartition parse_bipartition(const std::string &text) {
    auto bar = text.find('|');
    if (bar == std::string::npos) {
        throw Error(ErrorCode::parse_error, "bipartition needs '|': '" + text + "'");
    }
    auto parse_side = [&](const std::string &side) {
        std::vector<int> out;
        std::stringstream ss(side);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
                throw Error(ErrorCode::parse_error, "bad leg index in '" + text + "'");
            }
            out.push_back(std::stoi(item));
        }
        return out;
    };
    return {parse_side(text.substr(0, bar)), parse_side(text.substr(bar + 1))};
}

std::vector<Bipartition> bipartitions(int n, BipartitionSet set) {
    if (n < 2) {
        throw Error(ErrorCode::invalid_argument, "bipartitions need at least 2 legs");
    }
    std::vector<Bipartition> out;
    const int half = n / 2;
    const int smallest = set == BipartitionSet::balanced_only ? half : 1;
    for (int size = smallest; size <= half; ++size) {
        std::vector<bool> pick(n, false);
        std::fill(pick.begin(), pick.begin() + size, true);
        do {
            std::vector<int> a;
            for (int i = 0; i < n; ++i) {
                if (pick[i]) a.push_back(i + 1);
            }
            if (2 * size == n && a.front() != 1) {
                continue;
            }
            out.push_back(make_bipartition(n, a));
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return out;
}

Eigen::MatrixXcd as_map(const LabeledTensor &t, const Bipartition &p) {
    validate_bipartition(p, t.rank());
    const auto strides = t.strides();
    auto offsets = [&](const std::vector<int> &side) {
        std::vector<std::size_t> offs{0};
        for (int leg : side) {
            std::vector<std::size_t> next;
            const int d = t.legs()[leg - 1].dim();
            for (std::size_t o : offs) {
                for (int i = 0; i < d; ++i) {
                    next.push_back(o + i * strides[leg - 1]);
                }
            }
            offs = std::move(next);
        }
        return offs;
    };
    const auto oa = offsets(p.a), ob = offsets(p.b);
    Eigen::MatrixXcd m(ob.size(), oa.size());
    for (std::size_t c = 0; c < oa.size(); ++c) {
        for (std::size_t r = 0; r < ob.size(); ++r) {
            m(r, c) = t[oa[c] + ob[r]];
        }
    }
    return m;
}

Eigen::MatrixXcd gram(const LabeledTensor &t, const Bipartition &p) {
    validate_bipartition(p, t.rank());
    if (p.a.size() > p.b.size()) {
        throw Error(ErrorCode::bad_bipartition, "gram needs |A| <= |B|, got '" + p.to_string() + "'");
    }
    Eigen::MatrixXcd m = as_map(t, p);
    return m.adjoint() * m;
}

DefectResult isometry_defect(const LabeledTensor &t, const Bipartition &p) {
    Eigen::MatrixXcd g = gram(t, p);
    if (t.is_zero()) {
        throw Error(ErrorCode::zero_tensor, "isometry defect of the zero tensor");
    }
    DefectResult r;
    r.lambda_est = g.trace().real() / static_cast<double>(g.rows());
    Eigen::MatrixXcd diff = g - r.lambda_est * Eigen::MatrixXcd::Identity(g.rows(), g.cols());
    r.defect = diff.norm() / g.norm();
    return r;
}

Eigen::MatrixXcd reduced_density(const LabeledTensor &t, const std::vector<int> &a) {
    if (t.is_zero()) {
        throw Error(ErrorCode::zero_tensor, "reduced density of the zero tensor");
    }
    Eigen::MatrixXcd m = as_map(t, make_bipartition(static_cast<int>(t.rank()), a));
    return (m.adjoint() * m).transpose() / t.norm_squared();
}

Eigen::MatrixXcd total_generator(const std::vector<Spin> &legs, int axis) {
    Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(1, 1);
    for (Spin s : legs) {
        const Eigen::MatrixXcd g = generators(s).axis(axis);
        const Eigen::Index da = total.rows(), db = g.rows();
        Eigen::MatrixXcd next = Eigen::MatrixXcd::Zero(da * db, da * db);
        for (Eigen::Index i = 0; i < da; ++i) {
            for (Eigen::Index j = 0; j < da; ++j) {
                next.block(i * db, j * db, db, db) += total(i, j) * Eigen::MatrixXcd::Identity(db, db);
            }
            next.block(i * db, i * db, db, db) += g;
        }
        total = std::move(next);
    }
    return total;
}

double invariance_defect(const LabeledTensor &t) {
    const double nrm = t.norm();
    if (nrm == 0) {
        throw Error(ErrorCode::zero_tensor, "invariance defect of the zero tensor");
    }
    double worst = 0;
    for (int axis = 0; axis < 3; ++axis) {
        LabeledTensor sum(t.legs());
        for (std::size_t leg = 1; leg <= t.rank(); ++leg) {
            sum += apply_on_leg(t, static_cast<int>(leg), generators(t.legs()[leg - 1]).axis(axis));
        }
        worst = std::max(worst, sum.norm() / nrm);
    }
    return worst;
}

std::vector<int> coupling_multiplicities(const std::vector<Spin> &legs) {
    std::map<int, int> current{{0, 1}};
    for (Spin s : legs) {
        std::map<int, int> next;
        for (auto [j, mult] : current) {
            for (int l = std::abs(j - s.twice()); l <= j + s.twice(); l += 2) {
                next[l] += mult;
            }
        }
        current = std::move(next);
    }
    std::vector<int> out(current.rbegin()->first + 1, 0);
    for (auto [j, mult] : current) {
        out[j] = mult;
    }
    return out;
}

SchurSpectrum schur_spectrum(const LabeledTensor &t, const Bipartition &p, double tolerance) {
    validate_bipartition(p, t.rank());
    if (p.a.size() > p.b.size()) {
        throw Error(ErrorCode::bad_bipartition, "schur spectrum needs |A| <= |B|");
    }
    if (invariance_defect(t) >= tolerance) {
        throw Error(ErrorCode::not_invariant, "schur spectrum of a non-invariant tensor");
    }
    std::vector<Spin> a_legs;
    for (int i : p.a) {
        a_legs.push_back(t.legs()[i - 1]);
    }
    Eigen::MatrixXcd casimir = Eigen::MatrixXcd::Zero(1, 1);
    for (int axis = 0; axis < 3; ++axis) {
        Eigen::MatrixXcd g = total_generator(a_legs, axis);
        casimir = axis == 0 ? Eigen::MatrixXcd(g * g) : Eigen::MatrixXcd(casimir + g * g);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(casimir);
    std::map<int, std::vector<Eigen::Index>> sectors;
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
        double c = std::max(0.0, eig.eigenvalues()(i));
        int twice_j = static_cast<int>(std::lround(std::sqrt(1 + 4 * c) - 1));
        sectors[twice_j].push_back(i);
    }
    const Eigen::MatrixXcd m = as_map(t, p);
    SchurSpectrum out;
    for (auto it = sectors.rbegin(); it != sectors.rend(); ++it) {
        const int twice_j = it->first;
        const auto &cols = it->second;
        Eigen::MatrixXcd q(m.cols(), cols.size());
        for (std::size_t k = 0; k < cols.size(); ++k) {
            q.col(k) = eig.eigenvectors().col(cols[k]);
        }
        Eigen::MatrixXcd mq = m * q;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> block(mq.adjoint() * mq);
        std::vector<double> values(block.eigenvalues().data(),
                                   block.eigenvalues().data() + block.eigenvalues().size());
        std::sort(values.rbegin(), values.rend());
        SchurEntry e;
        e.total = Spin::from_twice(twice_j);
        const int width = twice_j + 1;
        e.multiplicity = static_cast<int>(values.size()) / width;
        for (int copy = 0; copy < e.multiplicity; ++copy) {
            double s = 0;
            for (int k = 0; k < width; ++k) {
                s += values[copy * width + k];
            }
            e.moduli.push_back(std::sqrt(std::max(0.0, s / width)));
        }
        e.modulus = e.moduli.empty() ? 0.0 : e.moduli.front();
        out.entries.push_back(std::move(e));
    }
    return out;
}

}  // namespace ipt
