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

#include "ipt/json_io.hpp"

#include <fstream>
#include <sstream>

#include "ipt/errors.hpp"

namespace ipt {

Json tensor_to_json(const LabeledTensor &t) {
    Json j;
    j["legs"] = to_json(t.legs());
    Json data = Json::array();
    for (const auto &z : t.data()) {
        data.push_back(to_json(z));
    }
    j["data"] = std::move(data);
    return j;
}

LabeledTensor tensor_from_json(const Json &j) {
    if (!j.is_object() || !j.contains("legs") || !j.contains("data") || !j["legs"].is_array() ||
        !j["data"].is_array()) {
        throw Error(ErrorCode::parse_error, "tensor JSON needs 'legs' and 'data' arrays");
    }
    std::vector<Spin> legs;
    for (const auto &s : j["legs"]) {
        if (!s.is_string()) {
            throw Error(ErrorCode::parse_error, "spins are written as strings such as \"1/2\"");
        }
        legs.push_back(parse_spin(s.get<std::string>()));
    }
    std::vector<Complex> data;
    for (const auto &z : j["data"]) {
        if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
            throw Error(ErrorCode::parse_error, "entries are written as [re, im]");
        }
        data.emplace_back(z[0].get<double>(), z[1].get<double>());
    }
    return LabeledTensor(legs, data);
}

LabeledTensor read_tensor_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::parse_error, "cannot open " + path);
    }
    try {
        return tensor_from_json(Json::parse(in));
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorCode::parse_error, path + ": " + e.what());
    }
}

void write_tensor_file(const LabeledTensor &t, const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorCode::invalid_argument, "cannot write " + path);
    }
    out << tensor_to_json(t).dump(2) << "\n";
}

Json to_json(const Complex &z) {
    return Json::array({z.real(), z.imag()});
}

Json to_json(const std::vector<Spin> &legs) {
    Json j = Json::array();
    for (Spin s : legs) {
        j.push_back(to_string(s));
    }
    return j;
}

Json to_json(const RationalMatrix &m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            row.push_back(to_string(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

Json label_list(const std::vector<BridgeLabel> &labels) {
    Json j = Json::array();
    for (const auto &l : labels) {
        j.push_back(l.to_string());
    }
    return j;
}

Json real_matrix(const Eigen::MatrixXd &m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(m(r, c));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

Json to_json(const CoefficientVector &c) {
    Json j = Json::object();
    for (std::size_t i = 0; i < c.labels.size(); ++i) {
        j[c.labels[i].to_string()] = to_json(c.values[i]);
    }
    return j;
}

Json to_json(const RationalCoefficients &c) {
    Json j = Json::object();
    for (std::size_t i = 0; i < c.labels.size(); ++i) {
        j[c.labels[i].to_string()] = to_string(c.values[i]);
    }
    return j;
}

Json to_json(const MasterSystem &s) {
    Json j;
    j["valence"] = s.valence;
    j["labels"] = label_list(s.labels);
    Json eqs = Json::array();
    for (const auto &eq : s.equations) {
        Json e;
        e["j"] = eq.j.to_string();
        e["j_prime"] = eq.j_prime.to_string();
        Json terms = Json::array();
        for (const auto &t : eq.terms) {
            terms.push_back({{"left", t.left.to_string()}, {"right", t.right.to_string()},
                             {"weight", to_string(t.weight)}});
        }
        e["terms"] = std::move(terms);
        e["rhs"] = to_string(eq.rhs);
        e["text"] = eq.normalized().to_string();
        eqs.push_back(std::move(e));
    }
    j["equations"] = std::move(eqs);
    return j;
}

Json to_json(const SolutionFamily &f) {
    Json j;
    j["valence"] = f.valence;
    j["free_amplitudes"] = f.free_amplitudes;
    j["free_phases"] = f.free_phases;
    Json entries = Json::array();
    for (const auto &e : f.bound_entries) {
        entries.push_back({{"label", e.label.to_string()}, {"short", e.label.short_name()}, {"value", e.expression}});
    }
    j["entries"] = std::move(entries);
    Json cons = Json::array();
    for (const auto &c : f.constraints) {
        cons.push_back(c.expression);
    }
    j["constraints"] = std::move(cons);
    return j;
}

Json to_json(const RepartitionMatrix &r) {
    Json j;
    j["valence"] = r.valence;
    j["word"] = to_string(r.word);
    j["convention"] = convention_name(r.convention);
    j["labels"] = label_list(r.labels);
    j["matrix"] = to_json(r.matrix);
    return j;
}

Json to_json(const NumericRepartition &r) {
    Json j;
    j["valence"] = r.valence;
    j["permutation"] = r.permutation;
    j["convention"] = "swap";
    j["labels"] = label_list(r.labels);
    j["matrix"] = real_matrix(r.matrix);
    j["max_residual"] = r.max_residual;
    return j;
}

Json to_json(const ShiftCheck &s) {
    Json j;
    j["before"] = s.before.to_string();
    j["verdict"] = shift_verdict_name(s.verdict);
    if (s.verdict == ShiftVerdict::no_op) {
        return j;
    }
    j["after"] = s.after.to_string();
    j["moved_leg"] = s.moved_leg;
    j["lambda_before"] = s.lambda_before;
    j["lambda_after"] = s.lambda_after;
    j["defect_before"] = s.defect_before;
    j["defect_after"] = s.defect_after;
    j["lambda_ratio"] = s.lambda_ratio;
    j["expected_ratio"] = s.expected_ratio;
    return j;
}

Json to_json(const FeasibilityTrace &t) {
    Json j;
    j["valence"] = t.valence;
    j["exact"] = t.exact;
    j["feasible"] = t.feasible;
    Json steps = Json::array();
    for (const auto &s : t.steps) {
        steps.push_back({{"action", s.action}, {"constraint", s.constraint}, {"origin", s.origin}});
    }
    j["steps"] = std::move(steps);
    j["contradiction"] = t.contradiction;
    j["surviving_family"] = t.surviving_family;
    if (!t.note.empty()) {
        j["note"] = t.note;
    }
    if (!t.exact) {
        j["numeric_min_defect"] = t.numeric_min_defect;
    }
    return j;
}

Json to_json(const SchurSpectrum &s) {
    Json j = Json::array();
    for (const auto &e : s.entries) {
        j.push_back({{"total_spin", to_string(e.total)},
                     {"multiplicity", e.multiplicity},
                     {"modulus", e.modulus},
                     {"moduli", e.moduli}});
    }
    return j;
}

Json to_json(const CertReport &r) {
    Json j;
    j["verdict"] = verdict_name(r.verdict);
    j["tolerance"] = r.tolerance;
    j["rule"] = r.rule == PerfectnessRule::particle_count ? "particle_count" : "dimension_count";
    j["invariance_defect"] = r.invariance;
    j["max_defect"] = r.max_defect();
    Json parts = Json::array();
    for (const auto &p : r.per_bipartition) {
        Json e;
        e["bipartition"] = p.bipartition.to_string();
        e["lambda_est"] = p.lambda_est;
        e["defect"] = p.defect;
        if (p.has_spectrum) {
            e["schur"] = to_json(p.spectrum);
        }
        parts.push_back(std::move(e));
    }
    j["bipartitions"] = std::move(parts);
    return j;
}

Json to_json(const LayoutVerdict &v) {
    return {{"rule", v.rule}, {"pass", v.pass}, {"reason", v.reason}};
}

Json to_json(const PhaseWalkReport &r) {
    Json j;
    j["x"] = r.x;
    j["window_a"] = {r.interval_a[0], r.interval_a[1]};
    j["window_b"] = {r.interval_b[0], r.interval_b[1]};
    j["disjoint"] = r.disjoint;
    j["inequality_holds"] = r.inequality_holds;
    j["grid_points"] = r.grid_points;
    j["grid_min_residual"] = r.grid_min_residual;
    j["grid_argmin_dphi"] = r.grid_argmin_dphi;
    return j;
}

Json to_json(const SearchResult &r) {
    Json j;
    j["legs"] = to_json(r.legs);
    j["basis"] = r.basis;
    j["basis_labels"] = r.basis_labels;
    j["objective"] = r.objective == SearchObjective::summed_defect ? "sum" : "max";
    j["restarts"] = r.restarts;
    j["seed"] = r.seed;
    j["evaluations"] = r.evaluations;
    j["best_defect"] = r.best_defect;
    j["best_sum_defect"] = r.best_sum_defect;
    j["best_max_defect"] = r.best_max_defect;
    Json c = Json::array();
    for (const auto &z : r.best_coefficients) {
        c.push_back(to_json(z));
    }
    j["best_coefficients"] = std::move(c);
    return j;
}

}  // namespace ipt
