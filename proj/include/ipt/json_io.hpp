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

#ifndef IPT_JSON_IO_HPP
#define IPT_JSON_IO_HPP

#include <string>

#include <nlohmann/json.hpp>

#include "ipt/bridge.hpp"
#include "ipt/certify.hpp"
#include "ipt/master.hpp"
#include "ipt/repart.hpp"
#include "ipt/tensor.hpp"

namespace ipt {

using Json = nlohmann::ordered_json;

/// {"legs": ["1/2", ...], "data": [[re, im], ...]}, row major, leg 1 slowest.
Json tensor_to_json(const LabeledTensor &t);
LabeledTensor tensor_from_json(const Json &j);
LabeledTensor read_tensor_file(const std::string &path);
void write_tensor_file(const LabeledTensor &t, const std::string &path);

Json to_json(const Complex &z);
Json to_json(const std::vector<Spin> &legs);
Json to_json(const RationalMatrix &m);
Json to_json(const CoefficientVector &c);
Json to_json(const RationalCoefficients &c);
Json to_json(const MasterSystem &s);
Json to_json(const SolutionFamily &f);
Json to_json(const RepartitionMatrix &r);
Json to_json(const NumericRepartition &r);
Json to_json(const ShiftCheck &s);
Json to_json(const FeasibilityTrace &t);
Json to_json(const SchurSpectrum &s);
Json to_json(const CertReport &r);
Json to_json(const LayoutVerdict &v);
Json to_json(const PhaseWalkReport &r);
Json to_json(const SearchResult &r);

}  // namespace ipt

#endif
