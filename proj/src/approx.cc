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

#include "curvsub/approx.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "curvsub/errors.h"
#include "curvsub/lp.h"
#include "curvsub/rng.h"

namespace curvsub {
namespace {

constexpr double kZero = 1e-12;
constexpr double kSideTolerance = 1e-9;

}  // namespace

double CorrectionFactor(double alpha, double kappa) {
  return alpha / (1.0 + (alpha - 1.0) * (1.0 - kappa));
}

ValueOracle ModularUpperBound(const ValueOracle& oracle) {
  QuerySession session;
  return MakeModular(SingletonVector(oracle, session));
}

double ModularBoundFactor(int size, double hat_kappa) {
  if (size <= 1) return 1.0;
  return CorrectionFactor(size, hat_kappa);
}

std::vector<Subset> ScanSubsets(int n, const ScanOptions& options) {
  std::vector<Subset> sets;
  if (options.mode == ScanMode::kExhaustive) {
    RequireEnumerable(n, options.limit, "exhaustive scan");
    sets.reserve((size_t{1} << n) - 1);
    ForEachMask(n, [&](uint64_t mask) {
      if (mask) sets.push_back(Subset::FromMask(n, mask));
    });
    return sets;
  }
  std::unordered_set<Subset> seen;
  auto add = [&](Subset s) {
    if (!s.empty() && seen.insert(s).second) sets.push_back(std::move(s));
  };
  for (int j = 0; j < n; ++j) add(Subset(n).With(j));
  add(Subset::Full(n));
  Rng rng(options.seed);
  for (int i = 0; i < options.sample_count; ++i) add(rng.UniformSubset(n));
  return sets;
}

SqrtModularFit FitSqrtModular(const ValueOracle& g, const ScanOptions& options) {
  const int n = g.n();
  SqrtModularFit fit;
  fit.mode = options.mode;
  fit.sample_count = options.mode == ScanMode::kSampled ? options.sample_count : 0;
  fit.seed = options.seed;
  fit.w.assign(n, 0.0);

  const std::vector<Subset> sets = ScanSubsets(n, options);
  fit.constraint_sets = static_cast<int>(sets.size());
  std::vector<double> target(sets.size());
  double scale = 0.0;
  for (size_t i = 0; i < sets.size(); ++i) {
    const double v = g.Evaluate(sets[i]);
    target[i] = v * v;
    scale = std::max(scale, target[i]);
  }
  if (scale <= kZero) return fit;  // g vanishes on every constrained set

  // Variables w_0..w_{n-1}, t. Maximize t subject to
  // w(X) <= g(X)^2 and t * g(X)^2 <= w(X); gamma = 1 / sqrt(t).
  LinearProgram lp(n + 1);
  lp.objective[n] = 1.0;
  std::vector<int> initial;
  for (size_t i = 0; i < sets.size(); ++i) {
    const double u = target[i] / scale;
    const bool anchor = sets[i].size() == 1 || sets[i].size() == n;
    std::vector<double> upper(n + 1, 0.0);
    sets[i].ForEach([&](int j) { upper[j] = 1.0; });
    if (anchor) initial.push_back(static_cast<int>(lp.rows.size()));
    lp.AddRow(upper, u);
    if (u <= kZero) continue;
    std::vector<double> lower(n + 1, 0.0);
    sets[i].ForEach([&](int j) { lower[j] = -1.0; });
    lower[n] = u;
    if (anchor) initial.push_back(static_cast<int>(lp.rows.size()));
    lp.AddRow(std::move(lower), 0.0);
  }
  std::vector<double> cap(n + 1, 0.0);
  cap[n] = 1.0;
  initial.push_back(static_cast<int>(lp.rows.size()));
  lp.AddRow(std::move(cap), 1.0);

  const LpResult result = SolveLpLazily(lp, initial);
  if (result.status != LpStatus::kOptimal) {
    throw Error(ErrorCode::kInternal, "square-root fit LP did not reach optimality");
  }
  for (int j = 0; j < n; ++j) fit.w[j] = result.x[j] * scale;

  // Elements of zero-valued sets carry no weight.
  for (size_t i = 0; i < sets.size(); ++i) {
    if (target[i] <= kZero) sets[i].ForEach([&](int j) { fit.w[j] = 0.0; });
  }
  // Restore w(X) <= g(X)^2 exactly, then certify gamma on every set.
  double excess = 0.0;
  for (size_t i = 0; i < sets.size(); ++i) {
    if (target[i] > kZero) {
      excess = std::max(excess, ModularValue(fit.w, sets[i]) / target[i]);
    }
  }
  if (excess > 1.0) {
    for (double& x : fit.w) x /= excess;
  }
  double gamma = 1.0;
  for (size_t i = 0; i < sets.size(); ++i) {
    if (target[i] <= kZero) continue;
    const double wx = ModularValue(fit.w, sets[i]);
    if (wx <= 0.0) {
      throw Error(ErrorCode::kInternal,
                  "fit assigns zero weight to " + sets[i].ToString());
    }
    gamma = std::max(gamma, std::sqrt(target[i] / wx));
  }
  fit.gamma = gamma;
  if (options.mode == ScanMode::kExhaustive &&
      gamma > std::sqrt(static_cast<double>(n)) * (1.0 + 1e-6)) {
    throw Error(ErrorCode::kInternal,
                "fitted factor " + std::to_string(gamma) +
                    " exceeds sqrt(n); input is not submodular");
  }
  return fit;
}

double EvaluateFit(const SqrtModularFit& fit, const Subset& s) {
  return std::sqrt(ModularValue(fit.w, s));
}

CorrectedSurrogate::CorrectedSurrogate(double kappa, std::vector<double> singletons,
                                       std::vector<double> inner_weights,
                                       bool inner_sqrt, double inner_factor,
                                       Direction direction)
    : kappa_(kappa),
      singletons_(std::move(singletons)),
      inner_weights_(std::move(inner_weights)),
      inner_sqrt_(inner_sqrt),
      inner_factor_(inner_factor),
      direction_(direction) {}

CorrectedSurrogate CorrectedSurrogate::FromModular(
    const DecomposedFunction& decomposed, Direction direction) {
  const int n = static_cast<int>(decomposed.singletons.size());
  // max_{j in X} f(j) <= f^kappa(X) <= m(X), so m(X) / n is within factor n.
  std::vector<double> inner = decomposed.singletons;
  for (double& v : inner) v /= n;
  return CorrectedSurrogate(decomposed.kappa, decomposed.singletons,
                            std::move(inner), false, n, direction);
}

CorrectedSurrogate CorrectedSurrogate::FromSqrtFit(
    const DecomposedFunction& decomposed, const SqrtModularFit& fit,
    Direction direction) {
  if (fit.w.size() != decomposed.singletons.size()) {
    throw Error(ErrorCode::kContractViolation, "fit dimension mismatch");
  }
  return CorrectedSurrogate(decomposed.kappa, decomposed.singletons, fit.w, true,
                            fit.gamma, direction);
}

double CorrectedSurrogate::Evaluate(const Subset& s) const {
  double inner = ModularValue(inner_weights_, s);
  if (inner_sqrt_) inner = std::sqrt(inner);
  const double lower = kappa_ * inner + (1.0 - kappa_) * ModularValue(singletons_, s);
  return direction_ == Direction::kLower ? lower : factor() * lower;
}

FactorReport ApproximationFactor(
    const ValueOracle& f, const std::function<double(const Subset&)>& surrogate,
    Direction direction, const ScanOptions& options) {
  FactorReport report;
  report.mode = options.mode;
  report.witness = Subset(f.n());
  bool any = false;
  for (const Subset& x : ScanSubsets(f.n(), options)) {
    const double fx = f.Evaluate(x);
    const double hx = surrogate(x);
    ++report.scanned;
    const double below = direction == Direction::kLower ? hx : fx;
    const double above = direction == Direction::kLower ? fx : hx;
    if (below > above * (1.0 + kSideTolerance) + kZero) {
      throw Error(ErrorCode::kCertificationFailure,
                  "surrogate on the wrong side of f at " + x.ToHex() +
                      ": f=" + std::to_string(fx) + " f_hat=" + std::to_string(hx));
    }
    if (above <= kZero && below <= kZero) continue;
    if (below <= kZero) {
      throw Error(ErrorCode::kCertificationFailure,
                  "unbounded ratio at " + x.ToHex() + ": f=" + std::to_string(fx) +
                      " f_hat=" + std::to_string(hx));
    }
    const double ratio = above / below;
    if (!any || ratio > report.worst_ratio) {
      report.worst_ratio = ratio;
      report.witness = x;
      any = true;
    }
  }
  return report;
}

}  // namespace curvsub
