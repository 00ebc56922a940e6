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

#include "ipt/spin.hpp"

#include <cstdlib>

#include "ipt/errors.hpp"

namespace ipt {

int dim(Spin j) {
    return j.dim();
}

bool admissible_triple(Spin j, Spin k, Spin l) {
    int a = j.twice(), b = k.twice(), c = l.twice();
    if ((a + b + c) % 2 != 0) {
        return false;
    }
    return std::abs(a - b) <= c && c <= a + b;
}

std::string twice_to_string(int twice_value) {
    if (twice_value % 2 == 0) {
        return std::to_string(twice_value / 2);
    }
    return std::to_string(twice_value) + "/2";
}

std::string to_string(Spin j) {
    return twice_to_string(j.twice());
}

namespace {

[[noreturn]] void fail(std::string_view text, std::size_t pos, std::string_view what) {
    throw Error(ErrorCode::parse_error,
                std::string(what) + " at position " + std::to_string(pos) + " in '" + std::string(text) + "'");
}

int parse_digits(std::string_view whole, std::size_t offset, std::string_view digits) {
    if (digits.empty()) {
        fail(whole, offset, "expected digits");
    }
    if (digits.size() > 6) {
        fail(whole, offset, "spin too large");
    }
    int v = 0;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        char c = digits[i];
        if (c < '0' || c > '9') {
            fail(whole, offset + i, "unexpected character");
        }
        v = v * 10 + (c - '0');
    }
    return v;
}

Spin parse_token(std::string_view whole, std::size_t offset, std::string_view token) {
    auto slash = token.find('/');
    if (slash == std::string_view::npos) {
        return Spin::from_twice(2 * parse_digits(whole, offset, token));
    }
    int p = parse_digits(whole, offset, token.substr(0, slash));
    int q = parse_digits(whole, offset + slash + 1, token.substr(slash + 1));
    if (q != 2 || p % 2 == 0) {
        fail(whole, offset, "spin must be an integer or an odd numerator over 2");
    }
    return Spin::from_twice(p);
}

}  // namespace

Spin parse_spin(std::string_view text) {
    return parse_token(text, 0, text);
}

std::vector<Spin> parse_spin_list(std::string_view text) {
    if (text.empty()) {
        fail(text, 0, "empty spin list");
    }
    std::vector<Spin> out;
    std::size_t start = 0;
    while (true) {
        auto comma = text.find(',', start);
        auto end = comma == std::string_view::npos ? text.size() : comma;
        std::string_view token = text.substr(start, end - start);
        while (!token.empty() && token.front() == ' ') {
            token.remove_prefix(1);
            ++start;
        }
        while (!token.empty() && token.back() == ' ') {
            token.remove_suffix(1);
        }
        out.push_back(parse_token(text, start, token));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

std::string to_string(const std::vector<Spin> &spins) {
    std::string out;
    for (std::size_t i = 0; i < spins.size(); ++i) {
        out += (i ? "," : "") + to_string(spins[i]);
    }
    return out;
}

}  // namespace ipt
