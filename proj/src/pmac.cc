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

#include "curvsub/pmac.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>

#include "curvsub/approx.h"
#include "curvsub/curvature.h"
#include "curvsub/errors.h"
#include "curvsub/lp.h"

namespace curvsub {
namespace {

constexpr int kPerceptronCap = 1000000;
constexpr int kInitialPoints = 200;
constexpr double kTolerance = 1e-9;

bool Correct(const std::vector<double>& w, double z, const LabeledPoint& point) {
  const double wx = ModularValue(w, point.set);
  return point.label > 0 ? wx > z * point.value : wx < z * point.value;
}

double RelativeMargin(const std::vector<double>& w, double z,
                      const std::vector<LabeledPoint>& points) {
  double margin = std::numeric_limits<double>::infinity();
  for (const LabeledPoint& p : points) {
    const double r = ModularValue(w, p.set) / (z * p.value);
    margin = std::min(margin, p.label > 0 ? r - 1.0 : 1.0 - r);
  }
  return points.empty() ? 0.0 : margin;
}

// Maximize delta subject to w(X) / y >= 1 + delta (label +1),
// w(X) / y <= 1 - delta (label -1), w >= 0, delta <= 1, with z = 1.
std::optional<Separator> SeparateByLp(const SeparatorProblem& problem) {
  const int n = problem.n;
  LinearProgram lp(n + 1);
  lp.objective[n] = 1.0;
  std::vector<int> initial;
  for (size_t i = 0; i < problem.points.size(); ++i) {
    const LabeledPoint& p = problem.points[i];
    std::vector<double> row(n + 1, 0.0);
    const double sign = p.label > 0 ? -1.0 : 1.0;
    p.set.ForEach([&](int j) { row[j] = sign / p.value; });
    row[n] = 1.0;
    if (i < 2 * kInitialPoints) initial.push_back(static_cast<int>(lp.rows.size()));
    lp.AddRow(std::move(row), sign);
  }
  problem.zero_set.ForEach([&](int j) {
    std::vector<double> row(n + 1, 0.0);
    row[j] = 1.0;
    initial.push_back(static_cast<int>(lp.rows.size()));
    lp.AddRow(std::move(row), 0.0);
  });
  std::vector<double> cap(n + 1, 0.0);
  cap[n] = 1.0;
  initial.push_back(static_cast<int>(lp.rows.size()));
  lp.AddRow(std::move(cap), 1.0);

  const LpResult result = SolveLpLazily(lp, initial);
  if (result.status != LpStatus::kOptimal || result.x[n] <= kTolerance) {
    return std::nullopt;
  }
  Separator separator;
  separator.w.assign(result.x.begin(), result.x.begin() + n);
  problem.zero_set.ForEach([&](int j) { separator.w[j] = 0.0; });
  separator.z = 1.0;
  return separator;
}

std::optional<Separator> SeparateByPerceptron(const SeparatorProblem& problem) {
  const int n = problem.n;
  std::vector<double> w(n, 0.0);
  double z = 1.0;
  int updates = 0;
  while (updates < kPerceptronCap) {
    bool clean = true;
    for (const LabeledPoint& p : problem.points) {
      const double score = ModularValue(w, p.set) / p.value - z;
      if (p.label * score > 0.0) continue;
      clean = false;
      p.set.ForEach([&](int j) {
        w[j] = std::max(0.0, w[j] + p.label / p.value);
      });
      problem.zero_set.ForEach([&](int j) { w[j] = 0.0; });
      z = std::max(1e-12, z - p.label);
      if (++updates >= kPerceptronCap) break;
    }
    if (clean) {
      Separator separator;
      separator.w = std::move(w);
      separator.z = z;
      separator.from_perceptron = true;
      return separator;
    }
  }
  return std::nullopt;
}

void RequireSamples(int n, const std::vector<Sample>& samples) {
  for (const Sample& s : samples) {
    if (s.set.n() != n) {
      throw Error(ErrorCode::kInvalidDataset, "sample dimension mismatch");
    }
    if (!(s.value >= 0.0) || !std::isfinite(s.value)) {
      throw Error(ErrorCode::kInvalidDataset,
                  "sample value " + std::to_string(s.value) + " at " +
                      s.set.ToHex() + " is negative or not finite");
    }
  }
}

}  // namespace

Distribution Distribution::Parse(const std::string& text) {
  if (text == "uniform") return Distribution{};
  const std::string prefix = "product:";
  if (text.rfind(prefix, 0) == 0) {
    Distribution d;
    d.kind = Kind::kProduct;
    try {
      size_t used = 0;
      d.p = std::stod(text.substr(prefix.size()), &used);
      if (used != text.size() - prefix.size()) throw std::invalid_argument("tail");
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, "bad product probability: " + text);
    }
    if (!(d.p >= 0.0 && d.p <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "product probability outside [0, 1]");
    }
    return d;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown distribution: " + text);
}

std::string Distribution::Name() const {
  if (kind == Kind::kUniform) return "uniform";
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "product:%.6g", p);
  return buffer;
}

Subset Distribution::Draw(int n, Rng& rng) const {
  return kind == Kind::kUniform ? rng.UniformSubset(n) : rng.ProductSubset(n, p);
}

Dataset SampleDataset(const ValueOracle& oracle, const Distribution& distribution,
                      int m, uint64_t seed) {
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "sample count must be >= 1");
  Dataset dataset;
  dataset.n = oracle.n();
  dataset.distribution = distribution;
  dataset.seed = seed;
  dataset.samples.reserve(m);
  Rng rng(seed);
  for (int i = 0; i < m; ++i) {
    Subset x = distribution.Draw(oracle.n(), rng);
    const double value = oracle.Evaluate(x);
    dataset.samples.push_back(Sample{std::move(x), value});
  }
  return dataset;
}

SeparatorProblem ReduceToSeparator(
    int n, const std::vector<Sample>& samples,
    const std::function<double(const Subset&)>& alpha) {
  RequireSamples(n, samples);
  SeparatorProblem problem;
  problem.n = n;
  problem.zero_set = Subset(n);
  for (const Sample& s : samples) {
    if (s.value == 0.0) {
      problem.zero_set = problem.zero_set | s.set;
      continue;
    }
    const double a = alpha(s.set);
    if (!(a >= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "factor below 1 at " + s.set.ToHex());
    }
    problem.points.push_back(LabeledPoint{s.set, s.value, +1});
    problem.points.push_back(LabeledPoint{s.set, (a + 1.0) * s.value, -1});
  }
  return problem;
}

Separator LearnSeparator(const SeparatorProblem& problem) {
  std::optional<Separator> separator = SeparateByLp(problem);
  if (!separator || CountCorrect(*separator, problem) !=
                        static_cast<int>(problem.points.size())) {
    separator = SeparateByPerceptron(problem);
  }
  if (!separator) {
    throw Error(ErrorCode::kLearningFailure,
                "no separator for " + std::to_string(problem.points.size()) +
                    " points within " + std::to_string(kPerceptronCap) +
                    " perceptron updates");
  }
  separator->margin = RelativeMargin(separator->w, separator->z, problem.points);
  return *separator;
}

Separator ExplicitSeparator(const SeparatorProblem& problem,
                            const std::vector<double>& singletons,
                            double min_positive_value) {
  if (static_cast<int>(singletons.size()) != problem.n) {
    throw Error(ErrorCode::kContractViolation, "singleton vector length mismatch");
  }
  const double delta = min_positive_value / (2.0 * problem.n);
  Separator separator;
  separator.w.assign(problem.n, 0.0);
  for (int j = 0; j < problem.n; ++j) {
    if (!problem.zero_set.contains(j)) separator.w[j] = singletons[j] + delta;
  }
  separator.margin = RelativeMargin(separator.w, 1.0, problem.points);
  return separator;
}

int CountCorrect(const Separator& separator, const SeparatorProblem& problem) {
  int correct = 0;
  for (const LabeledPoint& p : problem.points) {
    if (Correct(separator.w, separator.z, p)) ++correct;
  }
  return correct;
}

double LearnedModel::Raw(const Subset& x) const { return ModularValue(w, x) / z; }

double LearnedModel::Predict(const Subset& x) const {
  if (mode == PmacMode::kDirect) return Raw(x) / (alpha(x) + 1.0);
  const double k = kappa.value_or(1.0);
  const double inner = k > 0.0 ? std::sqrt(Raw(x) / (n + 1.0)) : 0.0;
  return k * inner + (1.0 - k) * ModularValue(singletons, x);
}

double LearnedModel::Factor(const Subset& x) const {
  if (mode == PmacMode::kDirect) return alpha(x) + 1.0;
  return CurvatureClaimedFactor(n, kappa.value_or(1.0));
}

double ModularBoundAlpha(int size, double kappa_hat_upper) {
  if (size <= 1) return 1.0;
  return CorrectionFactor(size, std::clamp(kappa_hat_upper, 0.0, 1.0));
}

double CurvatureClaimedFactor(int n, double kappa) {
  return CorrectionFactor(std::sqrt(n + 1.0), kappa);
}

LearnedModel PmacLearnDirect(const Dataset& dataset,
                             const std::function<double(int)>& kappa_hat_upper) {
  auto alpha = [kappa_hat_upper](const Subset& x) {
    return ModularBoundAlpha(x.size(), kappa_hat_upper(x.size()));
  };
  const SeparatorProblem problem = ReduceToSeparator(dataset.n, dataset.samples, alpha);
  const Separator separator = LearnSeparator(problem);
  LearnedModel model;
  model.mode = PmacMode::kDirect;
  model.n = dataset.n;
  model.w = separator.w;
  model.z = separator.z;
  model.zero_set = problem.zero_set;
  model.alpha = alpha;
  return model;
}

double CurvatureLowerBoundFromSamples(const Dataset& dataset,
                                      const std::vector<double>& singletons) {
  double bound = 0.0;
  for (const Sample& s : dataset.samples) {
    const double m = ModularValue(singletons, s.set);
    if (m > 0.0) bound = std::max(bound, 1.0 - s.value / m);
  }
  return bound;
}

LearnedModel PmacLearnCurvature(const Dataset& dataset,
                                const std::vector<double>& singletons,
                                double kappa_upper) {
  const int n = dataset.n;
  RequireSamples(n, dataset.samples);
  if (static_cast<int>(singletons.size()) != n) {
    throw Error(ErrorCode::kContractViolation, "singleton vector length mismatch");
  }
  if (!(kappa_upper >= 0.0 && kappa_upper <= 1.0)) {
    throw Error(ErrorCode::kInvalidParameter, "curvature bound outside [0, 1]");
  }
  double certified = CurvatureLowerBoundFromSamples(dataset, singletons);
  try {
    certified = std::max(certified, EstimateCurvatureFromSamples(n, dataset.samples));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kIncompleteSample) throw;
  }
  if (kappa_upper < certified - kTolerance) {
    throw Error(ErrorCode::kInvalidOverride,
                "curvature bound " + std::to_string(kappa_upper) +
                    " is below the curvature the samples certify (" +
                    std::to_string(certified) + ")");
  }

  LearnedModel model;
  model.mode = PmacMode::kCurvature;
  model.n = n;
  model.kappa = kappa_upper;
  model.singletons = singletons;
  model.w.assign(n, 0.0);
  model.zero_set = Subset(n);
  if (kappa_upper == 0.0) return model;  // f is the modular part exactly

  std::vector<Sample> squared;
  squared.reserve(dataset.samples.size());
  for (const Sample& s : dataset.samples) {
    double g = (s.value - (1.0 - kappa_upper) * ModularValue(singletons, s.set)) /
               kappa_upper;
    if (g < 0.0) g = 0.0;
    squared.push_back(Sample{s.set, g * g});
  }
  const double n_factor = n;
  const SeparatorProblem problem =
      ReduceToSeparator(n, squared, [n_factor](const Subset&) { return n_factor; });
  const Separator separator = LearnSeparator(problem);
  model.w = separator.w;
  model.z = separator.z;
  model.zero_set = problem.zero_set;
  return model;
}

PmacReport EvaluatePmac(const ValueOracle& oracle, const LearnedModel& model,
                        const Distribution& distribution, int test_count,
                        uint64_t seed, std::optional<double> factor) {
  if (factor && !(*factor >= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "PMAC factor must be >= 1");
  }
  PmacReport report;
  report.test_count = test_count;
  report.factor = factor.value_or(1.0);
  Rng rng(seed);
  int successes = 0;
  for (int i = 0; i < test_count; ++i) {
    const Subset x = distribution.Draw(oracle.n(), rng);
    const double f = oracle.Evaluate(x);
    const double predicted = model.Predict(x);
    const double a = factor ? *factor : model.Factor(x);
    if (!factor) report.factor = std::max(report.factor, a);
    const bool below = predicted <= f * (1.0 + kTolerance) + 1e-12;
    const bool within = f <= a * predicted * (1.0 + kTolerance) + 1e-12;
    if (below && within) ++successes;
  }
  report.success_fraction =
      test_count > 0 ? static_cast<double>(successes) / test_count : 0.0;
  return report;
}

void WriteModel(const LearnedModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path);
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g\n", model.z);
  out << buffer;
  for (int j = 0; j < model.n; ++j) {
    std::snprintf(buffer, sizeof(buffer), "%d %.17g\n", j, model.w[j]);
    out << buffer;
  }
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

}  // namespace curvsub
