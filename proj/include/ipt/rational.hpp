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

#ifndef IPT_RATIONAL_HPP
#define IPT_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace ipt {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Prints "p" for integers and "p/q" otherwise.
std::string to_string(const Rational &r);
Rational parse_rational(std::string_view text);
double to_double(const Rational &r);
Rational factorial(int n);

/// sign * sqrt(square), kept exact.
struct SignedSqrt {
    int sign = 0;
    Rational square = 0;

    double value() const;
    bool operator==(const SignedSqrt &) const = default;
};

/// Small dense matrix of exact rationals, row major.
class RationalMatrix {
   public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols);
    RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static RationalMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    RationalMatrix operator*(const RationalMatrix &other) const;
    RationalMatrix operator-() const;
    RationalMatrix operator*(const Rational &s) const;
    bool operator==(const RationalMatrix &other) const = default;

    RationalMatrix transpose() const;
    bool is_identity() const;
    Eigen::MatrixXd to_eigen() const;
    std::string to_string() const;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

}  // namespace ipt

#endif
