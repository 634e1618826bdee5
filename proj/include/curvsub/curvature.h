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

#ifndef CURVSUB_CURVATURE_H_
#define CURVSUB_CURVATURE_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "curvsub/oracle.h"
#include "curvsub/subset.h"

namespace curvsub {

struct CurvatureReport {
  double total = 0.0;
  // Lowest index attaining min_j f(j | V \ j) / f(j).
  int argmin_element = 0;
  int64_t queries_used = 0;
};

// kappa_f = 1 - min_j f(j | V \ j) / f(j), using exactly 2n + 1 queries.
CurvatureReport TotalCurvature(const ValueOracle& oracle, QuerySession& session);

// kappa_f(S) = 1 - min_{j in S} f(j | S \ j) / f(j).
double SetCurvature(const ValueOracle& oracle, const Subset& s,
                    QuerySession& session);

// Averaged variant: 1 - sum_{j in S} f(j | S \ j) / sum_{j in S} f(j).
double HatCurvature(const ValueOracle& oracle, const Subset& s,
                    QuerySession& session);

// 1 - min_T [f(T | S) + sum_{j in S & T} f(j | (S | T) \ j)] / f(T), over all
// T with f(T) > 0. Exhaustive; n must not exceed limit.
double TildeCurvature(const ValueOracle& oracle, const Subset& s,
                      int limit = kDefaultTableLimit);

// f = kappa * normalized + (1 - kappa) * sum of singletons.
struct DecomposedFunction {
  double kappa;
  ValueOracle normalized;
  std::vector<double> singletons;
};

// Splits f into its unit-curvature part and a modular part. An override must
// be an upper bound on the true curvature. With kappa = 0 the normalized part
// is identically zero.
DecomposedFunction CurveNormalize(const ValueOracle& oracle,
                                  std::optional<double> kappa_override = {});

// Total curvature from tabulated values. Requires every singleton, every
// V \ j and V itself among the samples.
double EstimateCurvatureFromSamples(int n, const std::vector<Sample>& samples);

}  // namespace curvsub

#endif  // CURVSUB_CURVATURE_H_
