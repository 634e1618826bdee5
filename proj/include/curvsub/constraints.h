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

#ifndef CURVSUB_CONSTRAINTS_H_
#define CURVSUB_CONSTRAINTS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "curvsub/graph.h"
#include "curvsub/subset.h"

namespace curvsub {

enum class FamilyKind {
  kCardinalityLB,
  kSpanningTree,
  kSTPath,
  kSTCut,
  kPerfectMatching,
};

std::string FamilyName(FamilyKind kind);

// A combinatorial family of feasible sets. Graph families use edge ids as the
// ground set; s-t families use the graph's terminals.
class ConstraintFamily {
 public:
  // {X : |X| >= k}, 1 <= k <= n.
  static ConstraintFamily CardinalityLB(int n, int k);
  static ConstraintFamily SpanningTree(Graph graph);
  static ConstraintFamily STPath(Graph graph);
  static ConstraintFamily STCut(Graph graph);
  // Requires an even node count.
  static ConstraintFamily PerfectMatching(Graph graph);

  FamilyKind kind() const { return kind_; }
  // Size of the ground set: n for cardinality, edge count otherwise.
  int ground_size() const { return ground_size_; }
  int k() const { return k_; }
  // Only valid for graph families.
  const Graph& graph() const;

 private:
  ConstraintFamily(FamilyKind kind, int ground_size, int k,
                   std::optional<Graph> graph);

  FamilyKind kind_;
  int ground_size_;
  int k_;
  std::optional<Graph> graph_;
};

// Independent membership test.
bool IsFeasible(const ConstraintFamily& family, const Subset& x);

// Exact minimizer of w(X) over the family, w >= 0. Ties go to the lowest
// index (cardinality, tree) or to the solver's deterministic order. Throws
// kInfeasible when the family is empty. The cut solver rounds capacities to
// integers at a relative resolution of 1e-9 of the largest weight.
Subset SolveModular(const ConstraintFamily& family, const std::vector<double>& w);

// Masks of all feasible sets, increasing. Limits: n <= 20 for cardinality,
// at most 16 edges for graph families.
std::vector<uint64_t> FeasibleMasks(const ConstraintFamily& family);

// Lexicographic comparison of masks as big integers.
bool MaskLess(const Subset& a, const Subset& b);

}  // namespace curvsub

#endif  // CURVSUB_CONSTRAINTS_H_
