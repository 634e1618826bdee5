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

#ifndef CURVSUB_PMAC_H_
#define CURVSUB_PMAC_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "curvsub/oracle.h"
#include "curvsub/rng.h"
#include "curvsub/subset.h"

namespace curvsub {

// Sampling distribution over subsets: uniform over 2^V, or each element
// independently with probability p.
struct Distribution {
  enum class Kind { kUniform, kProduct };
  Kind kind = Kind::kUniform;
  double p = 0.5;

  // "uniform" or "product:<p>".
  static Distribution Parse(const std::string& text);
  std::string Name() const;
  Subset Draw(int n, Rng& rng) const;
};

struct Dataset {
  int n = 0;
  Distribution distribution;
  uint64_t seed = 0;
  std::vector<Sample> samples;
};

Dataset SampleDataset(const ValueOracle& oracle, const Distribution& distribution,
                      int m, uint64_t seed);

// Training point for the separator: label +1 wants w(X) > z * value, label -1
// wants w(X) < z * value.
struct LabeledPoint {
  Subset set;
  double value = 0.0;
  int label = 1;
};

struct SeparatorProblem {
  int n = 0;
  std::vector<LabeledPoint> points;
  // Elements whose weight must be zero (they occur in zero-valued samples).
  Subset zero_set;
};

// Each sample with f(X) > 0 yields (X, f(X), +1) and (X, (alpha(X) + 1) f(X),
// -1); zero-valued samples only add their elements to the zero set.
SeparatorProblem ReduceToSeparator(
    int n, const std::vector<Sample>& samples,
    const std::function<double(const Subset&)>& alpha);

struct Separator {
  std::vector<double> w;
  double z = 1.0;
  // Smallest relative margin over the training points.
  double margin = 0.0;
  bool from_perceptron = false;
};

// Largest-margin separator by linear programming, with a margin perceptron
// (capped at 1e6 updates) as fallback. Throws kLearningFailure when neither
// separates the points.
Separator LearnSeparator(const SeparatorProblem& problem);

// w(j) = f(j) + delta off the zero set, delta = (min positive value) / (2n),
// z = 1. Separates every reduction built with a valid modular-bound alpha.
Separator ExplicitSeparator(const SeparatorProblem& problem,
                            const std::vector<double>& singletons,
                            double min_positive_value);

// Number of training points the separator classifies correctly.
int CountCorrect(const Separator& separator, const SeparatorProblem& problem);

enum class PmacMode { kDirect, kCurvature };

struct LearnedModel {
  PmacMode mode = PmacMode::kDirect;
  int n = 0;
  std::vector<double> w;
  double z = 1.0;
  Subset zero_set;
  // Direct mode: the per-set factor alpha(X) used in the reduction.
  std::function<double(const Subset&)> alpha;
  // Curvature mode: curvature bound and singleton weights.
  std::optional<double> kappa;
  std::vector<double> singletons;

  // w(X) / z.
  double Raw(const Subset& x) const;
  // Lower-bounding prediction: f_hat <= f <= Factor(X) * f_hat on sets where
  // the learned sandwich holds.
  double Predict(const Subset& x) const;
  double Factor(const Subset& x) const;
};

// alpha(X) = |X| / (1 + (|X| - 1)(1 - kappa_hat_upper(|X|))).
double ModularBoundAlpha(int size, double kappa_hat_upper);

// Learns f itself with per-set factor alpha(X) + 1.
LearnedModel PmacLearnDirect(const Dataset& dataset,
                             const std::function<double(int)>& kappa_hat_upper);

// Learns the curve-normalized part of f through squared values, then adds
// back the modular part. Claimed factor:
// sqrt(n + 1) / (1 + (sqrt(n + 1) - 1)(1 - kappa_upper)).
LearnedModel PmacLearnCurvature(const Dataset& dataset,
                                const std::vector<double>& singletons,
                                double kappa_upper);

double CurvatureClaimedFactor(int n, double kappa);

// Largest curvature lower bound the samples certify: max 1 - f(X) / m(X).
double CurvatureLowerBoundFromSamples(const Dataset& dataset,
                                      const std::vector<double>& singletons);

struct PmacReport {
  double success_fraction = 0.0;
  // The constant factor tested, or the largest per-set factor seen.
  double factor = 1.0;
  int test_count = 0;
};

// Fraction of fresh draws with f_hat <= f <= factor * f_hat. Without
// `factor`, each set is tested at the model's own Factor(X).
PmacReport EvaluatePmac(const ValueOracle& oracle, const LearnedModel& model,
                        const Distribution& distribution, int test_count,
                        uint64_t seed, std::optional<double> factor = {});

// "z" on the first line, then "j w_j" per element.
void WriteModel(const LearnedModel& model, const std::string& path);

}  // namespace curvsub

#endif  // CURVSUB_PMAC_H_
