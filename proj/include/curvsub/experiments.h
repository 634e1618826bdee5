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

#ifndef CURVSUB_EXPERIMENTS_H_
#define CURVSUB_EXPERIMENTS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "curvsub/constraints.h"
#include "curvsub/minimize.h"
#include "curvsub/oracle.h"

namespace curvsub {

// Size of the hidden set: a fixed integer, n/<d> or n^<e>, rounded.
struct AlphaRule {
  enum class Kind { kFixed, kDivide, kPower };
  Kind kind = Kind::kFixed;
  double value = 0.0;

  static AlphaRule Parse(const std::string& text);
  int Evaluate(int n) const;
};

// alpha = round(n^(1/2 + eps)) capped at n; beta = round(n^(2 eps)) floored at 1.
int HiddenAlpha(int n, double epsilon);
int HiddenBeta(int n, double epsilon);

struct Instance {
  ValueOracle oracle;
  ConstraintFamily constraint;
  double optimum;
  int alpha;
  int beta;
  Subset hidden;
};

// kappa * f^R + (1 - kappa) |X| with a uniformly drawn hidden set R of size
// alpha, under |X| >= alpha. The optimum is f(R) = kappa beta + (1 - kappa)
// alpha; for n <= 20 it is cross-checked by enumeration.
Instance MakeInstance(int n, double kappa, double epsilon,
                      std::optional<AlphaRule> alpha_override,
                      std::optional<int> beta_override, uint64_t seed);

enum class CurveKind { kMubCard, kEaCard, kHardness };

// kMubCard: a = k. kEaCard: a = n. kHardness: a = alpha, b = beta.
double TheoreticalCurve(CurveKind kind, double kappa, int a, int b = 0);

struct ExperimentConfig {
  std::vector<int> n_list;
  std::vector<double> kappa_list{1.0};
  std::vector<double> epsilon_list{0.1};
  std::optional<AlphaRule> alpha_override;
  std::optional<int> beta_override;
  int trials = 20;
  uint64_t base_seed = 0;
  std::vector<Method> methods{Method::kMub};
  // 0 uses the hardware concurrency.
  int threads = 0;
  // Random subsets for the EA fit above the exhaustive limit.
  int ea_samples = 4096;
};

// Flat key=value text; '#' starts a comment line. Keys: n, kappa, epsilon,
// alpha, beta, trials, seed, methods, threads, ea_samples.
ExperimentConfig ParseExperimentConfig(const std::string& text);
ExperimentConfig ReadExperimentConfig(const std::string& path);

struct ResultRow {
  std::string constraint = "cardinality";
  Method method = Method::kMub;
  int n = 0;
  double kappa = 0.0;
  // NaN when alpha and beta are both overridden.
  double epsilon = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  int trials = 0;
  double empirical_mean = 0.0;
  double empirical_std = 0.0;
  double theoretical_bound = 0.0;
  // Per-trial factors f(X_hat) / optimum.
  std::vector<double> factors;
  // Non-empty when the cell failed; numeric fields are then NaN.
  std::string error;
};

// Runs every (n, kappa, epsilon, method) cell. Trial t of instance cell c uses
// seed DeriveSeed(base_seed, c, t), so all methods see the same draws. A
// failing cell yields an error row and the rest of the grid still runs.
std::vector<ResultRow> RunExperiment(const ExperimentConfig& config);

extern const char kCsvHeader[];

std::string FormatCsv(const std::vector<ResultRow>& rows);
void EmitCsv(const std::vector<ResultRow>& rows, const std::string& path);

}  // namespace curvsub

#endif  // CURVSUB_EXPERIMENTS_H_
