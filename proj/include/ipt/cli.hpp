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

#ifndef IPT_CLI_HPP
#define IPT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace ipt {

/// Exit codes: 0 success or positive verdict, 1 negative verdict, 2 usage error.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
int run(int argc, const char *const *argv);

}  // namespace ipt

#endif
