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

#include "curvsub/minimize.h"

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>

#include "curvsub/errors.h"

namespace curvsub {
namespace {

constexpr double kTieTolerance = 1e-12;
constexpr int kGridPoints = 64;
constexpr int kMaxRefineDepth = 48;

void RequireMatchingDimension(const ValueOracle& oracle,
                              const ConstraintFamily& family) {
  if (oracle.n() != family.ground_size()) {
    throw Error(ErrorCode::kContractViolation,
                "function over " + std::to_string(oracle.n()) +
                    " elements but constraint ground set has " +
                    std::to_string(family.ground_size()));
  }
}

// Curvature for the a-priori bound. Zero singletons leave curvature
// undefined; the bound is then reported at kappa = 1, its largest value.
double CurvatureForBound(const ValueOracle& oracle, QuerySession& session) {
  try {
    return TotalCurvature(oracle, session).total;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kZeroSingleton) throw;
    return 1.0;
  }
}

struct SweepPoint {
  Subset set;
  double a = 0.0;  // w(X)
  double b = 0.0;  // (1 - kappa) m(X)
};

}  // namespace

std::string MethodName(Method method) {
  switch (method) {
    case Method::kMub: return "mub";
    case Method::kEa: return "ea";
    case Method::kBruteForce: return "brute";
  }
  return "unknown";
}

double AprioriBound(FamilyKind family, Method method, int size, double kappa) {
  if (!(kappa >= 0.0 && kappa <= 1.0)) {
    throw Error(ErrorCode::kInvalidParameter, "kappa outside [0, 1]");
  }
  if (size < 1) throw Error(ErrorCode::kInvalidArgument, "bound size must be >= 1");
  const double p = size;
  if (method == Method::kEa) {
    const double lead = std::max(1.0, std::sqrt(p) * std::log(p));
    return CorrectionFactor(lead, kappa);
  }
  if (method != Method::kMub) {
    throw Error(ErrorCode::kInvalidArgument, "no a-priori bound for brute force");
  }
  if (family == FamilyKind::kPerfectMatching) {
    if (size < 2) return 1.0;
    return p / (2.0 + (p - 2.0) * (1.0 - kappa));
  }
  return CorrectionFactor(p, kappa);
}

int BoundSize(const ConstraintFamily& family, Method method) {
  switch (family.kind()) {
    case FamilyKind::kCardinalityLB:
      return method == Method::kEa ? family.ground_size() : family.k();
    case FamilyKind::kSpanningTree:
    case FamilyKind::kSTPath:
    case FamilyKind::kPerfectMatching:
      return method == Method::kEa ? family.ground_size()
                                   : family.graph().node_count();
    case FamilyKind::kSTCut:
      return family.ground_size();
  }
  return family.ground_size();
}

SolveResult MinimizeMub(const ValueOracle& oracle, const ConstraintFamily& family,
                        QuerySession& session) {
  RequireMatchingDimension(oracle, family);
  SolveResult result;
  result.method = Method::kMub;
  result.kappa = CurvatureForBound(oracle, session);
  const std::vector<double> singletons = SingletonVector(oracle, session);
  result.solution = SolveModular(family, singletons);
  result.true_value = oracle.Evaluate(result.solution, session);
  result.surrogate_value = ModularValue(singletons, result.solution);
  result.feasible = IsFeasible(family, result.solution);
  result.bound = AprioriBound(family.kind(), Method::kMub,
                             BoundSize(family, Method::kMub), result.kappa);
  return result;
}

SolveResult MinimizeEa(const ValueOracle& oracle, const ConstraintFamily& family,
                       const DecomposedFunction& decomposed,
                       const SqrtModularFit& fit, QuerySession& session) {
  RequireMatchingDimension(oracle, family);
  const int n = oracle.n();
  if (static_cast<int>(fit.w.size()) != n ||
      static_cast<int>(decomposed.singletons.size()) != n) {
    throw Error(ErrorCode::kContractViolation, "fit dimension mismatch");
  }
  const double kappa = decomposed.kappa;
  const SolveResult mub = MinimizeMub(oracle, family, session);
  auto surrogate = [&](const Subset& x) {
    return kappa * std::sqrt(ModularValue(fit.w, x)) +
           (1.0 - kappa) * ModularValue(decomposed.singletons, x);
  };

  SolveResult result = mub;
  result.method = Method::kEa;
  result.bound = AprioriBound(family.kind(), Method::kEa,
                             BoundSize(family, Method::kEa), mub.kappa);
  result.surrogate_value = surrogate(mub.solution);

  double w_total = 0.0;
  double s_total = 0.0;
  for (int j = 0; j < n; ++j) {
    w_total += fit.w[j];
    s_total += decomposed.singletons[j];
  }
  if (kappa == 0.0 || w_total <= 0.0) return result;  // degenerate: MUB

  std::vector<double> modular(n);
  for (int j = 0; j < n; ++j) modular[j] = (1.0 - kappa) * decomposed.singletons[j];
  std::unordered_map<Subset, SweepPoint> candidates;
  auto solve = [&](double lambda) {
    std::vector<double> weights(n);
    for (int j = 0; j < n; ++j) weights[j] = lambda * fit.w[j] + modular[j];
    SweepPoint p;
    p.set = SolveModular(family, weights);
    p.a = ModularValue(fit.w, p.set);
    p.b = ModularValue(modular, p.set);
    candidates.emplace(p.set, p);
    return p;
  };

  // Breakpoint search between two parametric optima: a new optimum strictly
  // below the line through both is a further hull vertex.
  std::function<void(const SweepPoint&, const SweepPoint&, int)> refine =
      [&](const SweepPoint& left, const SweepPoint& right, int depth) {
        if (depth > kMaxRefineDepth) return;
        const double da = left.a - right.a;
        if (da <= kTieTolerance * (1.0 + left.a)) return;
        const double lambda = (right.b - left.b) / da;
        if (!(lambda > 0.0) || !std::isfinite(lambda)) return;
        const SweepPoint mid = solve(lambda);
        const double line = lambda * left.a + left.b;
        if (lambda * mid.a + mid.b < line - kTieTolerance * (1.0 + std::abs(line))) {
          refine(left, mid, depth + 1);
          refine(mid, right, depth + 1);
        }
      };

  const double scale = (s_total > 0.0 ? s_total : w_total) / w_total;
  SweepPoint previous = solve(0.0);
  for (int i = 0; i < kGridPoints; ++i) {
    const double lambda = scale * std::pow(10.0, -6.0 + 12.0 * i / (kGridPoints - 1));
    const SweepPoint current = solve(lambda);
    if (!(current.set == previous.set)) refine(previous, current, 0);
    previous = current;
  }
  std::vector<double> pure_w = fit.w;
  SweepPoint last;
  last.set = SolveModular(family, pure_w);
  last.a = ModularValue(fit.w, last.set);
  last.b = ModularValue(modular, last.set);
  candidates.emplace(last.set, last);

  std::optional<Subset> best;
  double best_value = 0.0;
  for (const auto& [set, point] : candidates) {
    const double value = kappa * std::sqrt(point.a) + point.b;
    if (!best || value < best_value - kTieTolerance ||
        (value <= best_value + kTieTolerance && MaskLess(set, *best))) {
      best = set;
      best_value = value;
    }
  }
  const double ea_value = oracle.Evaluate(*best, session);
  if (ea_value <= mub.true_value + kTieTolerance) {
    result.solution = *best;
    result.true_value = ea_value;
    result.surrogate_value = best_value;
    result.feasible = IsFeasible(family, *best);
  }
  return result;
}

SolveResult MinimizeEa(const ValueOracle& oracle, const ConstraintFamily& family,
                       const ScanOptions& fit_options, QuerySession& session) {
  const DecomposedFunction decomposed = CurveNormalize(oracle);
  const SqrtModularFit fit = FitSqrtModular(decomposed.normalized, fit_options);
  return MinimizeEa(oracle, family, decomposed, fit, session);
}

SolveResult BruteForceMin(const ValueOracle& oracle, const ConstraintFamily& family) {
  return BruteForceMin(oracle, family, FeasibleMasks(family));
}

SolveResult BruteForceMin(const ValueOracle& oracle, const ConstraintFamily& family,
                          const std::vector<uint64_t>& feasible_masks) {
  RequireMatchingDimension(oracle, family);
  if (feasible_masks.empty()) {
    throw Error(ErrorCode::kInfeasible, "constraint family is empty");
  }
  const int n = oracle.n();
  SolveResult result;
  result.method = Method::kBruteForce;
  bool first = true;
  for (uint64_t mask : feasible_masks) {
    const Subset x = Subset::FromMask(n, mask);
    const double value = oracle.Evaluate(x);
    if (first || value < result.true_value - kTieTolerance) {
      result.solution = x;
      result.true_value = value;
      first = false;
    }
  }
  result.surrogate_value = result.true_value;
  result.feasible = IsFeasible(family, result.solution);
  result.bound = 1.0;
  return result;
}

}  // namespace curvsub
