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

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <sys/wait.h>

#include "ipt/cli.hpp"
#include "ipt/json_io.hpp"
#include "ipt/su2.hpp"

using namespace ipt;

namespace {

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;

    std::string last_line() const {
        std::string s = out;
        while (!s.empty() && s.back() == '\n') s.pop_back();
        return s.substr(s.rfind('\n') + 1);
    }
};

Outcome call(std::vector<std::string> args) {
    std::ostringstream out, err;
    Outcome o;
    o.code = run(args, out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

std::string temp_file(const std::string &name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

Outcome shell(const std::string &args) {
    Outcome o;
    FILE *pipe = popen((std::string(IPT_CLI_PATH) + " " + args + " 2>/dev/null").c_str(), "r");
    if (!pipe) return o;
    std::array<char, 512> buf{};
    while (fgets(buf.data(), buf.size(), pipe)) o.out += buf.data();
    int status = pclose(pipe);
    o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return o;
}

}  // namespace

TEST(cli, theta_value) {
    Outcome o = call({"--no-meta", "theta", "--path", "1/2,0,1/2"});
    EXPECT_EQ(o.code, 0);
    EXPECT_EQ(o.last_line(), "4");
    EXPECT_EQ(call({"theta", "--path", "1/2,1,1/2", "--path2", "1/2,0,1/2"}).last_line(), "0");
    EXPECT_EQ(call({"theta", "--path", "1/2,1,3/2"}).last_line(), "4");
}

TEST(cli, echoes_configuration) {
    Outcome o = call({"--no-meta", "search", "--legs", "1/2,1/2,1", "--restarts", "2", "--seed", "9"});
    EXPECT_EQ(o.out.rfind("# ipt search legs=1/2,1/2,1 restarts=2 seed=9", 0), 0u) << o.out;
    Json j = Json::parse(call({"--json", "theta", "--path", "1/2,1"}).out);
    EXPECT_EQ(j["config"]["path"], "1/2,1");
    EXPECT_EQ(j["config"]["command"], "theta");
    EXPECT_EQ(j["theta"], "3");
    EXPECT_TRUE(j.contains("meta"));
    EXPECT_FALSE(Json::parse(call({"--json", "--no-meta", "theta", "--path", "1/2,1"}).out).contains("meta"));
}

TEST(cli, byte_identical_reruns) {
    std::vector<std::string> args{"--json", "--no-meta", "search", "--valence", "4", "--restarts", "3", "--seed", "5"};
    Outcome a = call(args), b = call(args);
    EXPECT_EQ(a.out, b.out);
    EXPECT_FALSE(a.out.empty());
    std::vector<std::string> nogo{"--json", "--no-meta", "nogo", "--valence", "6"};
    EXPECT_EQ(call(nogo).out, call(nogo).out);
}

TEST(cli, nogo_exit_codes) {
    Outcome six = call({"--no-meta", "nogo", "--valence", "6"});
    EXPECT_EQ(six.code, 1);
    const std::string tail = "λ = 0";
    EXPECT_EQ(six.last_line().substr(six.last_line().size() - tail.size()), tail);
    Outcome four = call({"nogo", "--valence", "4"});
    EXPECT_EQ(four.code, 1);
    EXPECT_NE(four.out.find("Δφ = 0 (mod 2π)  versus  Δφ = π (mod 2π)"), std::string::npos);
    Outcome two = call({"nogo", "--valence", "2"});
    EXPECT_EQ(two.code, 0);
    EXPECT_NE(two.out.find("identity"), std::string::npos);
    Outcome binor = call({"nogo", "--valence", "4", "--convention", "binor"});
    EXPECT_EQ(binor.code, 1);
}

TEST(cli, certify_files) {
    LabeledTensor v = vertex(half_spin, half_spin, Spin::from_twice(2));
    const std::string good = temp_file("ipt_cli_vertex.json");
    write_tensor_file(v, good);
    Outcome o = call({"certify", "--file", good});
    EXPECT_EQ(o.code, 0) << o.out << o.err;
    EXPECT_NE(o.out.find("perfect"), std::string::npos);

    const std::string bad = temp_file("ipt_cli_identity.json");
    LabeledTensor one = contract(epsilon_tensor(), epsilon_tensor(), {});
    write_tensor_file(permute_legs(one, {1, 3, 2, 4}), bad);
    EXPECT_EQ(call({"certify", "--file", bad}).code, 1);
    EXPECT_EQ(call({"certify", "--file", temp_file("ipt_cli_missing.json")}).code, 2);
    std::filesystem::remove(good);
    std::filesystem::remove(bad);
}

TEST(cli, layout_and_walk) {
    EXPECT_EQ(call({"layout", "--legs", "1/2,1/2,1/2,1/2,2"}).code, 1);
    EXPECT_EQ(call({"layout", "--legs", "1,1,1,1,1"}).code, 0);
    EXPECT_EQ(call({"layout", "--legs", "1/2,1/2,1,1"}).code, 1);
    EXPECT_EQ(call({"layout", "--local-dim", "2", "--valence", "8"}).code, 1);
    EXPECT_EQ(call({"layout", "--local-dim", "2", "--valence", "6"}).code, 0);
    Outcome w = call({"--json", "walk", "--grid", "30"});
    EXPECT_EQ(w.code, 1);
    EXPECT_TRUE(Json::parse(w.out)["walk"]["disjoint"].get<bool>());
}

TEST(cli, rationals_printed_exactly) {
    Outcome m = call({"master", "--valence", "4"});
    EXPECT_NE(m.out.find("|c(0)|² = λ/4"), std::string::npos);
    Outcome r = call({"--no-meta", "repart", "--valence", "4", "--word", "P34 P* P34"});
    EXPECT_NE(r.out.find("[3/4, 1/2]"), std::string::npos) << r.out;
    Json j = Json::parse(call({"--json", "repart", "--valence", "4"}).out);
    EXPECT_EQ(j["repartition"]["matrix"][1][0], "-3/4");
}

TEST(cli, usage_errors) {
    EXPECT_EQ(call({}).code, 2);
    EXPECT_EQ(call({"frobnicate"}).code, 2);
    EXPECT_EQ(call({"theta"}).code, 2);
    EXPECT_EQ(call({"theta", "--path", "0.5"}).code, 2);
    EXPECT_EQ(call({"theta", "--path", "1/2,1", "--bogus"}).code, 2);
    EXPECT_EQ(call({"repart", "--valence", "4", "--convention", "other"}).code, 2);
    Outcome o = call({"theta", "--path", ""});
    EXPECT_EQ(o.code, 2);
    EXPECT_FALSE(o.err.empty());
}

TEST(cli, executable) {
    Outcome o = shell("--no-meta theta --path 1/2,0,1/2");
    EXPECT_EQ(o.code, 0);
    EXPECT_EQ(o.last_line(), "4");
    EXPECT_EQ(shell("nogo --valence 6").code, 1);
    EXPECT_EQ(shell("theta --path 0.5").code, 2);
}
