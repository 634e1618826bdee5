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

#ifndef CURVSUB_MINIMIZE_H_
#define CURVSUB_MINIMIZE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "curvsub/approx.h"
#include "curvsub/constraints.h"
#include "curvsub/curvature.h"
#include "curvsub/oracle.h"

namespace curvsub {

enum class Method { kMub, kEa, kBruteForce };

std::string MethodName(Method method);

struct SolveResult {
  Subset solution;
  double true_value = 0.0;
  // MUB: sum of singletons; EA: the corrected square-root surrogate;
  // brute force: f itself.
  double surrogate_value = 0.0;
  bool feasible = false;
  // A-priori factor for the method and family at the measured curvature.
  double bound = 1.0;
  Method method = Method::kMub;
  double kappa = 0.0;
};

// Closed-form worst-case factor. `size` is k for cardinality, the node count
// for tree, path and matching, and the edge count for cut. EA entries use
// max(1, sqrt(p) ln p) as the leading term, with p = n for cardinality and
// p = edge count for graph families.
double AprioriBound(FamilyKind family, Method method, int size, double kappa);

// The size argument AprioriBound expects for this family and method.
int BoundSize(const ConstraintFamily& family, Method method);

// Minimizes the singleton sum over the family.
SolveResult MinimizeMub(const ValueOracle& oracle, const ConstraintFamily& family,
                        QuerySession& session);

// Minimizes kappa * sqrt(w(X)) + (1 - kappa) * m(X) by a parametric sweep over
// modular problems, then keeps the better of that and the MUB solution.
// `fit` approximates decomposed.normalized.
SolveResult MinimizeEa(const ValueOracle& oracle, const ConstraintFamily& family,
                       const DecomposedFunction& decomposed,
                       const SqrtModularFit& fit, QuerySession& session);

// Decomposes f, fits the normalized part with `fit_options`, then runs the
// sweep above.
SolveResult MinimizeEa(const ValueOracle& oracle, const ConstraintFamily& family,
                       const ScanOptions& fit_options, QuerySession& session);

// Exact minimizer over the feasible masks (lowest mask on ties).
SolveResult BruteForceMin(const ValueOracle& oracle, const ConstraintFamily& family);
SolveResult BruteForceMin(const ValueOracle& oracle, const ConstraintFamily& family,
                          const std::vector<uint64_t>& feasible_masks);

}  // namespace curvsub

#endif  // CURVSUB_MINIMIZE_H_
