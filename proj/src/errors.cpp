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

#include "ipt/errors.hpp"

namespace ipt {

std::string_view error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::parse_error: return "ParseError";
        case ErrorCode::inadmissible_triple: return "InadmissibleTriple";
        case ErrorCode::spin_mismatch: return "SpinMismatch";
        case ErrorCode::bad_bipartition: return "BadBipartition";
        case ErrorCode::zero_tensor: return "ZeroTensor";
        case ErrorCode::not_invariant: return "NotInvariant";
        case ErrorCode::invalid_step: return "InvalidStep";
        case ErrorCode::inadmissible_label: return "InadmissibleLabel";
        case ErrorCode::calibration_failure: return "CalibrationFailure";
        case ErrorCode::label_mismatch: return "LabelMismatch";
        case ErrorCode::crosses_bridge: return "CrossesBridge";
        case ErrorCode::projection_residual: return "ProjectionResidual";
        case ErrorCode::odd_valence: return "OddValence";
        case ErrorCode::even_valence: return "EvenValence";
        case ErrorCode::empty_invariant_space: return "EmptyInvariantSpace";
        case ErrorCode::invalid_argument: return "InvalidArgument";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {
}

}  // namespace ipt
