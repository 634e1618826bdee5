// Copyright 2026 The Authors.
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

#ifndef CURVSUB_FUNCTION_PARSER_H_
#define CURVSUB_FUNCTION_PARSER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "curvsub/oracle.h"

namespace curvsub {

// Textual function specs used by the CLI:
//
//   modular:w=1,2,3
//   truncation:n=10:alpha=3
//   hidden:n=10:alpha=3:beta=1:r=0,4,7      (or :seed=<u64> for random R)
//   com:n=8:a=0.5[:w=<list>]...[:lambda=<list>]
//   sqrtmod:w=4,9
//   table:v=0,1,1,1.5
//
// Any spec may end with :modulate=<kappa>. `n` may be omitted when
// default_n is supplied (for example, the edge count of a graph).
ValueOracle ParseFunctionSpec(const std::string& text,
                              std::optional<int> default_n = std::nullopt);

std::vector<double> ParseDoubleList(const std::string& text);
std::vector<int> ParseIntList(const std::string& text);

}  // namespace curvsub

#endif  // CURVSUB_FUNCTION_PARSER_H_
