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

#ifndef IPT_SPIN_HPP
#define IPT_SPIN_HPP

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "ipt/errors.hpp"

namespace ipt {

/// Half-integer irrep label stored as twice its value.
class Spin {
   public:
    constexpr Spin() = default;
    static constexpr Spin from_twice(int twice_j) {
        if (twice_j < 0) {
            throw Error(ErrorCode::invalid_argument, "negative spin");
        }
        Spin s;
        s.twice_ = twice_j;
        return s;
    }

    constexpr int twice() const { return twice_; }
    constexpr int dim() const { return twice_ + 1; }
    double value() const { return twice_ / 2.0; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }

    constexpr auto operator<=>(const Spin &) const = default;

   private:
    int twice_ = 0;
};

inline constexpr Spin half_spin = Spin::from_twice(1);

int dim(Spin j);
bool admissible_triple(Spin j, Spin k, Spin l);

std::string to_string(Spin j);
Spin parse_spin(std::string_view text);
std::vector<Spin> parse_spin_list(std::string_view text);
std::string to_string(const std::vector<Spin> &spins);

/// Twice a magnetic number, printed as "p/2" or an integer.
std::string twice_to_string(int twice_value);

}  // namespace ipt

#endif
