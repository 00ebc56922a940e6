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

#ifndef IPT_ERRORS_HPP
#define IPT_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace ipt {

enum class ErrorCode {
    parse_error,
    inadmissible_triple,
    spin_mismatch,
    bad_bipartition,
    zero_tensor,
    not_invariant,
    invalid_step,
    inadmissible_label,
    calibration_failure,
    label_mismatch,
    crosses_bridge,
    projection_residual,
    odd_valence,
    even_valence,
    empty_invariant_space,
    invalid_argument,
};

std::string_view error_name(ErrorCode code);

/// All library failures are reported through this type.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message);
    ErrorCode code() const noexcept { return code_; }

   private:
    ErrorCode code_;
};

}  // namespace ipt

#endif
