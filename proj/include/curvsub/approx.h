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

#ifndef CURVSUB_APPROX_H_
#define CURVSUB_APPROX_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "curvsub/curvature.h"
#include "curvsub/oracle.h"
#include "curvsub/subset.h"

namespace curvsub {

// alpha / (1 + (alpha - 1)(1 - kappa)): the factor left after correcting an
// alpha-approximation of the normalized part by curvature kappa.
double CorrectionFactor(double alpha, double kappa);

// Sum of singleton values as a modular oracle (an upper bound on f).
ValueOracle ModularUpperBound(const ValueOracle& oracle);

// Worst-case ratio of the modular upper bound to f on a set of the given
// size with averaged curvature hat_kappa.
double ModularBoundFactor(int size, double hat_kappa);

enum class ScanMode { kExhaustive, kSampled };

struct ScanOptions {
  ScanMode mode = ScanMode::kExhaustive;
  // Sampled mode: random subsets drawn on top of all singletons and V.
  int sample_count = 4096;
  uint64_t seed = 0;
  int limit = kDefaultTableLimit;
};

// The subsets a scan visits: every nonempty subset, or singletons + V +
// sample_count uniform draws (deduplicated, first occurrence order).
std::vector<Subset> ScanSubsets(int n, const ScanOptions& options);

// sqrt(w(X)) <= g(X) <= gamma * sqrt(w(X)) on every constrained subset.
struct SqrtModularFit {
  std::vector<double> w;
  double gamma = 1.0;
  ScanMode mode = ScanMode::kExhaustive;
  int sample_count = 0;
  uint64_t seed = 0;
  int constraint_sets = 0;
};

// Best fit of the form sqrt(w(X)) with the smallest certified gamma.
// Exhaustive mode guarantees gamma <= sqrt(n) for monotone submodular g.
SqrtModularFit FitSqrtModular(const ValueOracle& g, const ScanOptions& options = {});

double EvaluateFit(const SqrtModularFit& fit, const Subset& s);

enum class Direction { kLower, kUpper };

// kappa * inner(X) + (1 - kappa) * sum_{j in X} singletons[j], where inner
// approximates the normalized part within inner_factor. Upper surrogates are
// the lower one multiplied by factor().
class CorrectedSurrogate {
 public:
  // inner = m(X) / n with inner_factor n, built from singletons only.
  static CorrectedSurrogate FromModular(const DecomposedFunction& decomposed,
                                        Direction direction = Direction::kLower);
  // inner = sqrt(w(X)) with inner_factor gamma.
  static CorrectedSurrogate FromSqrtFit(const DecomposedFunction& decomposed,
                                        const SqrtModularFit& fit,
                                        Direction direction = Direction::kLower);

  double Evaluate(const Subset& s) const;
  double operator()(const Subset& s) const { return Evaluate(s); }

  double kappa() const { return kappa_; }
  double inner_factor() const { return inner_factor_; }
  double factor() const { return CorrectionFactor(inner_factor_, kappa_); }
  Direction direction() const { return direction_; }
  const std::vector<double>& singletons() const { return singletons_; }

 private:
  CorrectedSurrogate(double kappa, std::vector<double> singletons,
                     std::vector<double> inner_weights, bool inner_sqrt,
                     double inner_factor, Direction direction);

  double kappa_;
  std::vector<double> singletons_;
  std::vector<double> inner_weights_;
  bool inner_sqrt_;
  double inner_factor_;
  Direction direction_;
};

struct FactorReport {
  double worst_ratio = 1.0;
  Subset witness;
  ScanMode mode = ScanMode::kExhaustive;
  int64_t scanned = 0;
};

// Worst f / f_hat (lower) or f_hat / f (upper) over the scanned subsets.
// Subsets where both are zero are skipped. A surrogate on the wrong side of f
// by more than 1e-9 relative raises a certification failure.
FactorReport ApproximationFactor(
    const ValueOracle& f, const std::function<double(const Subset&)>& surrogate,
    Direction direction, const ScanOptions& options = {});

}  // namespace curvsub

#endif  // CURVSUB_APPROX_H_
