// Copyright 2026 The finitepop Authors.
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

#pragma once

#include <ostream>

#include "json.hpp"

#include "finitepop/edgelaw.hpp"
#include "finitepop/pa.hpp"

namespace finitepop::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitDegenerate = 3;
inline constexpr int kExitNumerical = 4;

/// Entry point shared by the executable and the tests. Subcommands:
/// pa, simulate-null, edge, tw, spectrum.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

nlohmann::json to_json(const edge::EdgeParams& ep);
nlohmann::json to_json(const pa::PaResult& r);
nlohmann::json to_json(const pa::NullTable& t);

/// CSV rendering of a null table: header "percentile,empirical,tw_law".
std::string null_table_csv(const pa::NullTable& t);

}  // namespace finitepop::cli
