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

#include "ipt/rational.hpp"

#include <cmath>
#include <sstream>

#include "ipt/errors.hpp"

namespace ipt {

std::string to_string(const Rational &r) {
    if (denominator(r) == 1) {
        return numerator(r).str();
    }
    return numerator(r).str() + "/" + denominator(r).str();
}

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        negative = text[i] == '-';
        ++i;
    }
    if (i == text.size()) {
        throw Error(ErrorCode::parse_error, "bad rational '" + std::string(whole) + "'");
    }
    Integer v = 0;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c < '0' || c > '9') {
            throw Error(ErrorCode::parse_error, "bad rational '" + std::string(whole) + "'");
        }
        v = v * 10 + (c - '0');
    }
    return negative ? Integer(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_integer(text, text));
    }
    Integer p = parse_integer(text.substr(0, slash), text);
    Integer q = parse_integer(text.substr(slash + 1), text);
    if (q <= 0) {
        throw Error(ErrorCode::parse_error, "bad denominator in '" + std::string(text) + "'");
    }
    return Rational(p, q);
}

double to_double(const Rational &r) {
    return r.convert_to<double>();
}

Rational factorial(int n) {
    Integer r = 1;
    for (int k = 2; k <= n; ++k) {
        r *= k;
    }
    return Rational(r);
}

double SignedSqrt::value() const {
    return sign * std::sqrt(to_double(square));
}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {
}

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto &row : rows) {
        if (row.size() != cols_) {
            throw Error(ErrorCode::invalid_argument, "ragged matrix literal");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1;
    }
    return m;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix &other) const {
    if (cols_ != other.rows_) {
        throw Error(ErrorCode::invalid_argument, "matrix shape mismatch");
    }
    RationalMatrix out(rows_, other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational &a = (*this)(r, k);
            if (a == 0) {
                continue;
            }
            for (std::size_t c = 0; c < other.cols_; ++c) {
                out(r, c) += a * other(k, c);
            }
        }
    }
    return out;
}

RationalMatrix RationalMatrix::operator-() const {
    RationalMatrix out = *this;
    for (auto &v : out.data_) {
        v = -v;
    }
    return out;
}

RationalMatrix RationalMatrix::operator*(const Rational &s) const {
    RationalMatrix out = *this;
    for (auto &v : out.data_) {
        v *= s;
    }
    return out;
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            out(c, r) = (*this)(r, c);
        }
    }
    return out;
}

bool RationalMatrix::is_identity() const {
    return rows_ == cols_ && *this == identity(rows_);
}

Eigen::MatrixXd RationalMatrix::to_eigen() const {
    Eigen::MatrixXd m(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            m(r, c) = to_double((*this)(r, c));
        }
    }
    return m;
}

std::string RationalMatrix::to_string() const {
    std::ostringstream out;
    for (std::size_t r = 0; r < rows_; ++r) {
        out << "[";
        for (std::size_t c = 0; c < cols_; ++c) {
            out << (c ? ", " : "") << ipt::to_string((*this)(r, c));
        }
        out << "]\n";
    }
    return out.str();
}

}  // namespace ipt
