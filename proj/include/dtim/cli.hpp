// Copyright 2026 The DTIM Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DTIM_CLI_HPP_
#define DTIM_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace dtim::cli {

inline constexpr const char* kEnvPrefix = "DTIM_";

// Exit status: 0 success, 1 inner error, 2 usage error.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);
int Run(int argc, char** argv);

}  // namespace dtim::cli

#endif  // DTIM_CLI_HPP_
