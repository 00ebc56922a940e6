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

#include "ipt/cli.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <iostream>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>

#include "ipt/bridge.hpp"
#include "ipt/certify.hpp"
#include "ipt/errors.hpp"
#include "ipt/json_io.hpp"
#include "ipt/master.hpp"
#include "ipt/repart.hpp"

namespace ipt {

namespace {

constexpr const char *tool_version = "0.1.0";

struct Options {
    bool json = false;
    bool no_meta = false;
    int valence = 0;
    std::string split;
    std::string path;
    std::string path2;
    std::string file;
    std::string legs;
    std::string strand = "1/2";
    std::string word = "P*";
    std::string convention = "swap";
    std::string objective = "sum";
    int restarts = 0;
    std::uint64_t seed = 1;
    double tolerance = default_tolerance;
    int grid = 200;
    int local_dim = 0;
    bool numeric = false;
    bool dimension_rule = false;
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string timestamp() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

class Report {
   public:
    Report(const Options &o, std::string command, Json config) : o_(o) {
        config["command"] = std::move(command);
        body_["config"] = std::move(config);
        if (!o.no_meta) {
            body_["meta"] = {{"tool", "ipt"}, {"version", tool_version}, {"timestamp", timestamp()}};
        }
    }
    Json &body() { return body_; }
    std::ostringstream &text() { return text_; }

    void emit(std::ostream &out) const {
        if (o_.json) {
            out << body_.dump(2) << "\n";
            return;
        }
        out << "# ipt " << body_["config"]["command"].get<std::string>();
        for (const auto &[k, v] : body_["config"].items()) {
            if (k != "command") {
                out << " " << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump());
            }
        }
        out << "\n";
        if (body_.contains("meta")) {
            out << "# generated " << body_["meta"]["timestamp"].get<std::string>() << " by ipt " << tool_version
                << "\n";
        }
        out << text_.str();
    }

   private:
    const Options &o_;
    Json body_;
    std::ostringstream text_;
};

int cmd_theta(const Options &o, std::ostream &out) {
    Spin strand = parse_spin(o.strand);
    CouplingPath j = CouplingPath::parse(o.path, strand);
    Json config = {{"path", j.to_string()}, {"strand", to_string(strand)}};
    Rational value;
    if (o.path2.empty()) {
        value = path_theta(j.steps());
    } else {
        CouplingPath k = CouplingPath::parse(o.path2, strand);
        config["path2"] = k.to_string();
        value = theta(j, k);
    }
    Report r(o, "theta", config);
    r.body()["theta"] = to_string(value);
    r.text() << to_string(value) << "\n";
    r.emit(out);
    return 0;
}

int cmd_basis(const Options &o, std::ostream &out) {
    Spin strand = parse_spin(o.strand);
    const int n1 = o.split.empty() ? o.valence / 2 : std::stoi(o.split);
    Report r(o, "basis", {{"valence", o.valence}, {"split", n1}, {"strand", to_string(strand)}});
    auto labels = bridge_basis(o.valence, n1, strand);
    Json list = Json::array();
    for (const auto &l : labels) {
        list.push_back({{"label", l.to_string()}, {"short", l.short_name()}, {"theta", to_string(label_theta(l))}});
        r.text() << l.to_string() << "  " << l.short_name() << "  theta=" << to_string(label_theta(l)) << "\n";
    }
    r.body()["labels"] = std::move(list);
    r.body()["count"] = labels.size();
    r.text() << "count: " << labels.size() << "\n";
    r.emit(out);
    return 0;
}

int cmd_master(const Options &o, std::ostream &out) {
    Report r(o, "master", {{"valence", o.valence}});
    MasterSystem s = build_master_system(o.valence);
    r.body()["system"] = to_json(s);
    for (const auto &eq : s.equations) {
        r.text() << eq.normalized().to_string() << "\n";
    }
    std::optional<SolutionFamily> family;
    switch (o.valence) {
        case 2: family = solve_qubit_valence2(); break;
        case 4: family = solve_qubit_valence4(); break;
        case 6: family = solve_qubit_valence6(); break;
        default: break;
    }
    if (family) {
        r.body()["family"] = to_json(*family);
        r.text() << "family:\n";
        for (const auto &e : family->bound_entries) {
            r.text() << "  c" << e.label.short_name() << " = " << e.expression << "\n";
        }
        for (const auto &c : family->constraints) {
            r.text() << "  with " << c.expression << "\n";
        }
    }
    r.emit(out);
    return 0;
}

int cmd_repart(const Options &o, std::ostream &out) {
    SignConvention c = parse_convention(o.convention);
    Word w = parse_word(o.word);
    Report r(o, "repart",
             {{"valence", o.valence}, {"word", to_string(w)}, {"convention", convention_name(c)}, {"numeric", o.numeric}});
    RepartitionMatrix m = compose(o.valence, w, c);
    r.body()["repartition"] = to_json(m);
    r.body()["involution"] = (m.matrix * m.matrix).is_identity();
    r.body()["inverse_check"] = (m.matrix * reversed(m).matrix).is_identity();
    r.text() << "basis:";
    for (const auto &l : m.labels) {
        r.text() << " " << l.short_name();
    }
    r.text() << "\n" << m.matrix.to_string();
    r.text() << "squares to identity: " << ((m.matrix * m.matrix).is_identity() ? "yes" : "no") << "\n";
    if (o.numeric) {
        Eigen::MatrixXd product = Eigen::MatrixXd::Identity(m.labels.size(), m.labels.size());
        double residual = 0;
        for (const auto &move : w) {
            std::vector<int> perm(o.valence);
            std::iota(perm.begin(), perm.end(), 1);
            const int p = move.pstar ? o.valence / 2 : move.position;
            std::swap(perm[p - 1], perm[p]);
            NumericRepartition n = numeric_repart_matrix(o.valence, perm);
            residual = std::max(residual, n.max_residual);
            product = product * n.matrix;
        }
        auto sign = global_sign(m.matrix, product, 1e-10);
        Json nj;
        nj["matrix"] = Json::array();
        for (Eigen::Index i = 0; i < product.rows(); ++i) {
            Json row = Json::array();
            for (Eigen::Index k = 0; k < product.cols(); ++k) {
                row.push_back(product(i, k));
            }
            nj["matrix"].push_back(row);
        }
        nj["max_residual"] = residual;
        nj["global_sign"] = sign ? Json(*sign) : Json(nullptr);
        r.body()["numeric"] = std::move(nj);
        r.text() << "numeric projection agrees up to global sign: "
                 << (sign ? (*sign > 0 ? "+1" : "-1") : std::string("no")) << "\n";
    }
    r.emit(out);
    return 0;
}

int cmd_nogo(const Options &o, std::ostream &out) {
    Algorithm1Options a;
    a.convention = parse_convention(o.convention);
    a.numeric_restarts = o.restarts > 0 ? o.restarts : 20;
    a.seed = o.seed;
    Json config = {{"valence", o.valence}, {"convention", convention_name(a.convention)}};
    if (o.valence > 6 && o.valence % 2 == 0) {
        config["restarts"] = a.numeric_restarts;
        config["seed"] = a.seed;
    }
    Report r(o, "nogo", config);
    FeasibilityTrace t = algorithm1_run(o.valence, a);
    r.body()["trace"] = to_json(t);
    if (!t.exact) {
        r.text() << "*** " << t.note << " ***\n";
    }
    r.text() << "verdict: " << (t.feasible ? "feasible" : "infeasible") << (t.exact ? " (exact)" : " (numerical)")
             << "\n";
    if (!t.surviving_family.empty()) {
        r.text() << "family: " << t.surviving_family << "\n";
    }
    if (t.contradiction.size() == 2) {
        r.text() << "contradiction: " << t.contradiction[0] << "  versus  " << t.contradiction[1] << "\n";
    }
    int k = 0;
    for (const auto &s : t.steps) {
        r.text() << ++k << ". [" << s.origin << "] " << s.action << ": " << s.constraint << "\n";
    }
    r.emit(out);
    return t.feasible ? 0 : 1;
}

int cmd_certify(const Options &o, std::ostream &out) {
    LabeledTensor t = read_tensor_file(o.file);
    PerfectnessRule rule = o.dimension_rule ? PerfectnessRule::dimension_count : PerfectnessRule::particle_count;
    Json config = {{"file", o.file}, {"tolerance", o.tolerance},
                   {"rule", o.dimension_rule ? "dimension_count" : "particle_count"}};
    if (!o.split.empty()) {
        config["split"] = o.split;
    }
    Report r(o, "certify", config);
    CertReport c = certify_perfect(t, o.tolerance, rule);
    r.body()["report"] = to_json(c);
    r.text() << "legs: " << to_string(t.legs()) << "\n";
    r.text() << "invariance defect: " << num(c.invariance) << "\n";
    for (const auto &p : c.per_bipartition) {
        r.text() << p.bipartition.to_string() << "  lambda=" << num(p.lambda_est) << "  defect=" << num(p.defect);
        if (p.has_spectrum) {
            r.text() << "  schur:";
            for (const auto &e : p.spectrum.entries) {
                r.text() << " J=" << to_string(e.total) << "(x" << e.multiplicity << ")|" << num(e.modulus) << "|";
            }
        }
        r.text() << "\n";
    }
    bool ok = c.verdict == Verdict::perfect;
    if (!o.split.empty()) {
        ShiftCheck s = unbalanced_shift_check(t, parse_bipartition(o.split), o.tolerance);
        r.body()["shift"] = to_json(s);
        r.text() << "shift " << s.before.to_string() << ": " << shift_verdict_name(s.verdict);
        if (s.verdict != ShiftVerdict::no_op) {
            r.text() << " (ratio " << num(s.lambda_ratio) << ", expected " << num(s.expected_ratio) << ")";
        }
        r.text() << "\n";
        ok = ok && s.verdict != ShiftVerdict::fail;
    }
    r.text() << "verdict: " << verdict_name(c.verdict) << "\n";
    r.emit(out);
    return ok ? 0 : 1;
}

int cmd_search(const Options &o, std::ostream &out) {
    std::vector<Spin> legs =
        o.legs.empty() ? std::vector<Spin>(o.valence, half_spin) : parse_spin_list(o.legs);
    if (o.objective != "sum" && o.objective != "max") {
        throw Error(ErrorCode::parse_error, "objective must be 'sum' or 'max'");
    }
    SearchObjective objective = o.objective == "sum" ? SearchObjective::summed_defect : SearchObjective::max_defect;
    const int restarts = o.restarts > 0 ? o.restarts : 100;
    Report r(o, "search", {{"legs", to_string(legs)}, {"restarts", restarts}, {"seed", o.seed},
                           {"objective", o.objective}, {"tolerance", o.tolerance}});
    SearchResult s = search_min_defect(legs, restarts, o.seed, objective);
    r.body()["result"] = to_json(s);
    r.text() << "basis: " << s.basis << " (" << s.basis_labels.size() << " states)\n";
    r.text() << "best objective: " << num(s.best_defect) << "\n";
    r.text() << "summed defect at best: " << num(s.best_sum_defect) << "\n";
    r.text() << "max defect at best: " << num(s.best_max_defect) << "\n";
    const bool perfect = s.best_max_defect < o.tolerance;
    r.text() << "verdict: " << (perfect ? "perfect tensor found" : "no perfect tensor found") << "\n";
    r.emit(out);
    return perfect ? 0 : 1;
}

int cmd_layout(const Options &o, std::ostream &out) {
    Json config = Json::object();
    std::vector<Spin> legs;
    if (!o.legs.empty()) {
        legs = parse_spin_list(o.legs);
        config["legs"] = to_string(legs);
    }
    const int valence = o.valence > 0 ? o.valence : static_cast<int>(legs.size());
    if (o.local_dim > 0) {
        config["local_dim"] = o.local_dim;
        config["valence"] = valence;
    }
    if (legs.empty() && o.local_dim == 0) {
        throw Error(ErrorCode::invalid_argument, "layout needs --legs or --local-dim");
    }
    Report r(o, "layout", config);
    bool pass = true;
    Json checks = Json::array();
    if (!legs.empty()) {
        LayoutVerdict v = layout_check(legs);
        checks.push_back(to_json(v));
        r.text() << v.rule << ": " << (v.pass ? "pass" : "reject") << " (" << v.reason << ")\n";
        pass = pass && v.pass;
    }
    if (o.local_dim > 0) {
        LayoutVerdict v = scott_bound(o.local_dim, valence);
        checks.push_back(to_json(v));
        r.text() << v.rule << ": " << (v.pass ? "pass" : "reject") << " (" << v.reason << ")\n";
        pass = pass && v.pass;
    }
    r.body()["checks"] = std::move(checks);
    r.body()["pass"] = pass;
    r.emit(out);
    return pass ? 0 : 1;
}

int cmd_walk(const Options &o, std::ostream &out) {
    Report r(o, "walk", {{"grid", o.grid}});
    PhaseWalkReport w = phase_walk_feasibility(o.grid);
    r.body()["walk"] = to_json(w);
    r.text() << "x = arccos(7/9) = " << num(w.x) << "\n";
    r.text() << "window A: [" << num(w.interval_a[0]) << ", " << num(w.interval_a[1]) << "]\n";
    r.text() << "window B: [" << num(w.interval_b[0]) << ", " << num(w.interval_b[1]) << "]\n";
    r.text() << "1/2 < 49/81: " << (w.inequality_holds ? "true" : "false") << "\n";
    r.text() << "windows disjoint: " << (w.disjoint ? "yes" : "no") << "\n";
    r.text() << "grid " << w.grid_points << "^3 minimum joint residual: " << num(w.grid_min_residual) << " at dphi = "
             << num(w.grid_argmin_dphi) << "\n";
    r.emit(out);
    return w.disjoint ? 1 : 0;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    Options o;
    CLI::App app{"SU(2) invariant perfect tensor toolkit", "ipt"};
    app.require_subcommand(1);
    app.add_flag("--json", o.json, "emit JSON");
    app.add_flag("--no-meta", o.no_meta, "omit the timestamp block");

    auto *theta_cmd = app.add_subcommand("theta", "theta value of a coupling path");
    theta_cmd->add_option("--path", o.path, "coupling path, e.g. 1/2,1,1/2")->required();
    theta_cmd->add_option("--path2", o.path2, "second path of the pairing");
    theta_cmd->add_option("--strand", o.strand, "strand spin");

    auto *basis_cmd = app.add_subcommand("basis", "bridge basis labels");
    basis_cmd->add_option("--valence", o.valence)->required();
    basis_cmd->add_option("--split", o.split, "length of the j path");
    basis_cmd->add_option("--strand", o.strand, "strand spin");

    auto *master_cmd = app.add_subcommand("master", "master equations and their solution");
    master_cmd->add_option("--valence", o.valence)->required();

    auto *repart_cmd = app.add_subcommand("repart", "repartition matrix of a permutation word");
    repart_cmd->add_option("--valence", o.valence)->required();
    repart_cmd->add_option("--word", o.word, "e.g. \"P34 P* P34\"");
    repart_cmd->add_option("--convention", o.convention)->check(CLI::IsMember({"binor", "swap"}));
    repart_cmd->add_flag("--numeric", o.numeric, "cross-check by numeric projection");

    auto *nogo_cmd = app.add_subcommand("nogo", "feasibility replay of invariant perfect qubit tensors");
    nogo_cmd->add_option("--valence", o.valence)->required();
    nogo_cmd->add_option("--convention", o.convention)->check(CLI::IsMember({"binor", "swap"}));
    nogo_cmd->add_option("--restarts", o.restarts, "restarts of the numerical fallback");
    nogo_cmd->add_option("--seed", o.seed);

    auto *certify_cmd = app.add_subcommand("certify", "perfectness verdict for a tensor file");
    certify_cmd->add_option("--file", o.file)->required();
    certify_cmd->add_option("--tolerance", o.tolerance);
    certify_cmd->add_option("--split", o.split, "bipartition for the leg shift check, e.g. 1,2|3,4,5");
    certify_cmd->add_flag("--dimension-rule", o.dimension_rule, "use dimension counting for bipartitions");

    auto *search_cmd = app.add_subcommand("search", "minimise the isometry defect over invariant tensors");
    search_cmd->add_option("--legs", o.legs, "spins, e.g. 1/2,1/2,1");
    search_cmd->add_option("--valence", o.valence, "number of spin-1/2 legs");
    search_cmd->add_option("--restarts", o.restarts);
    search_cmd->add_option("--seed", o.seed);
    search_cmd->add_option("--objective", o.objective)->check(CLI::IsMember({"sum", "max"}));
    search_cmd->add_option("--tolerance", o.tolerance);

    auto *layout_cmd = app.add_subcommand("layout", "leg layout and dimension bound gates");
    layout_cmd->add_option("--legs", o.legs);
    layout_cmd->add_option("--local-dim", o.local_dim);
    layout_cmd->add_option("--valence", o.valence);

    auto *walk_cmd = app.add_subcommand("walk", "phase walk feasibility");
    walk_cmd->add_option("--grid", o.grid);

    for (auto *sub : app.get_subcommands({})) {
        sub->fallthrough();
    }

    std::vector<const char *> argv{"ipt"};
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError &e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (theta_cmd->parsed()) return cmd_theta(o, out);
        if (basis_cmd->parsed()) return cmd_basis(o, out);
        if (master_cmd->parsed()) return cmd_master(o, out);
        if (repart_cmd->parsed()) return cmd_repart(o, out);
        if (nogo_cmd->parsed()) return cmd_nogo(o, out);
        if (certify_cmd->parsed()) return cmd_certify(o, out);
        if (search_cmd->parsed()) return cmd_search(o, out);
        if (layout_cmd->parsed()) return cmd_layout(o, out);
        if (walk_cmd->parsed()) return cmd_walk(o, out);
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument &e) {
        err << "error: bad number: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

int run(int argc, const char *const *argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace ipt
