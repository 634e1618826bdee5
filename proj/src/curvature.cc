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

#include "curvsub/curvature.h"

#include <cmath>
#include <string>
#include <unordered_map>

#include "curvsub/errors.h"

namespace curvsub {
namespace {

constexpr double kRangeSlack = 1e-9;
constexpr double kSnap = 1e-12;

// Range check with slack, then clamp. Values within kSnap of 0 or 1 are
// snapped so exact-curvature instances report exact values.
double ClampCurvature(double kappa, const char* what) {
  if (!(kappa >= -kRangeSlack && kappa <= 1.0 + kRangeSlack)) {
    throw Error(ErrorCode::kNonSubmodular,
                std::string(what) + " = " + std::to_string(kappa) +
                    " lies outside [0, 1]");
  }
  if (kappa < kSnap) return 0.0;
  if (kappa > 1.0 - kSnap) return 1.0;
  return kappa;
}

void RequirePositive(double value, int j) {
  if (!(value > 0.0)) {
    throw Error(ErrorCode::kZeroSingleton,
                "f({" + std::to_string(j) + "}) = " + std::to_string(value) +
                    "; prune zero-valued elements first");
  }
}

// min_j gains[j] / singletons[j], lowest index on ties.
CurvatureReport FromGains(const std::vector<double>& singletons,
                          const std::vector<double>& gains) {
  CurvatureReport report;
  double best = 0.0;
  for (size_t j = 0; j < singletons.size(); ++j) {
    RequirePositive(singletons[j], static_cast<int>(j));
    const double ratio = gains[j] / singletons[j];
    if (j == 0 || ratio < best) {
      best = ratio;
      report.argmin_element = static_cast<int>(j);
    }
  }
  report.total = ClampCurvature(1.0 - best, "total curvature");
  return report;
}

void RequireNonempty(const Subset& s) {
  if (s.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "set curvature of the empty set");
  }
}

}  // namespace

CurvatureReport TotalCurvature(const ValueOracle& oracle, QuerySession& session) {
  const int n = oracle.n();
  const int64_t start = session.count();
  const Subset full = Subset::Full(n);
  std::vector<double> singletons = SingletonVector(oracle, session);
  std::vector<double> co_singletons(n);
  for (int j = 0; j < n; ++j) {
    co_singletons[j] = oracle.Evaluate(full.Without(j), session);
  }
  const double f_full = oracle.Evaluate(full, session);
  std::vector<double> gains(n);
  for (int j = 0; j < n; ++j) gains[j] = f_full - co_singletons[j];
  CurvatureReport report = FromGains(singletons, gains);
  report.queries_used = session.count() - start;
  return report;
}

double SetCurvature(const ValueOracle& oracle, const Subset& s,
                    QuerySession& session) {
  RequireNonempty(s);
  const double f_s = oracle.Evaluate(s, session);
  double best = 0.0;
  bool first = true;
  s.ForEach([&](int j) {
    const double single = oracle.Evaluate(Subset(s.n()).With(j), session);
    RequirePositive(single, j);
    const double ratio = (f_s - oracle.Evaluate(s.Without(j), session)) / single;
    if (first || ratio < best) best = ratio;
    first = false;
  });
  return ClampCurvature(1.0 - best, "set curvature");
}

double HatCurvature(const ValueOracle& oracle, const Subset& s,
                    QuerySession& session) {
  RequireNonempty(s);
  const double f_s = oracle.Evaluate(s, session);
  double gains = 0.0;
  double singles = 0.0;
  s.ForEach([&](int j) {
    const double single = oracle.Evaluate(Subset(s.n()).With(j), session);
    RequirePositive(single, j);
    singles += single;
    gains += f_s - oracle.Evaluate(s.Without(j), session);
  });
  return ClampCurvature(1.0 - gains / singles, "averaged curvature");
}

double TildeCurvature(const ValueOracle& oracle, const Subset& s, int limit) {
  const int n = oracle.n();
  RequireEnumerable(n, limit, "tilde curvature");
  if (s.n() != n) {
    throw Error(ErrorCode::kContractViolation, "subset dimension mismatch");
  }
  const ValueOracle table = Tabulate(oracle, limit);
  const auto& values = std::get<TabulatedSpec>(table.spec().kind).values;
  const uint64_t s_mask = s.ToMask();
  double best = 0.0;
  bool found = false;
  ForEachMask(n, [&](uint64_t t) {
    if (values[t] <= kSnap) return;
    const uint64_t u = s_mask | t;
    double numerator = values[u] - values[s_mask];
    for (uint64_t rest = s_mask & t; rest; rest &= rest - 1) {
      const uint64_t bit = rest & (~rest + 1);
      numerator += values[u] - values[u ^ bit];
    }
    const double ratio = numerator / values[t];
    if (!found || ratio < best) best = ratio;
    found = true;
  });
  if (!found) {
    throw Error(ErrorCode::kZeroSingleton, "function is identically zero");
  }
  return ClampCurvature(1.0 - best, "tilde curvature");
}

DecomposedFunction CurveNormalize(const ValueOracle& oracle,
                                  std::optional<double> kappa_override) {
  QuerySession session;
  const double kappa_f = TotalCurvature(oracle, session).total;
  std::vector<double> singletons = SingletonVector(oracle, session);
  double kappa = kappa_f;
  if (kappa_override) {
    const double k = *kappa_override;
    if (!(k >= 0.0 && k <= 1.0)) {
      throw Error(ErrorCode::kInvalidParameter, "kappa override outside [0, 1]");
    }
    if (k < kappa_f - kRangeSlack) {
      throw Error(ErrorCode::kInvalidOverride,
                  "override " + std::to_string(k) +
                      " is below the computed curvature " +
                      std::to_string(kappa_f));
    }
    kappa = k;
  }
  if (kappa == 0.0) {
    return DecomposedFunction{
        0.0, MakeModular(std::vector<double>(oracle.n(), 0.0)), singletons};
  }
  ValueOracle normalized = MakeCurveNormalized(oracle, kappa, singletons);
  return DecomposedFunction{kappa, std::move(normalized), std::move(singletons)};
}

double EstimateCurvatureFromSamples(int n, const std::vector<Sample>& samples) {
  std::unordered_map<Subset, double> by_set;
  for (const Sample& sample : samples) {
    if (sample.set.n() != n) {
      throw Error(ErrorCode::kContractViolation, "sample dimension mismatch");
    }
    by_set.emplace(sample.set, sample.value);
  }
  auto lookup = [&](const Subset& x) {
    auto it = by_set.find(x);
    if (it == by_set.end()) {
      throw Error(ErrorCode::kIncompleteSample,
                  "missing sample for subset " + x.ToHex() + " " + x.ToString());
    }
    return it->second;
  };
  const Subset full = Subset::Full(n);
  std::vector<double> singletons(n);
  std::vector<double> gains(n);
  for (int j = 0; j < n; ++j) singletons[j] = lookup(Subset(n).With(j));
  const double f_full = lookup(full);
  for (int j = 0; j < n; ++j) gains[j] = f_full - lookup(full.Without(j));
  return FromGains(singletons, gains).total;
}

}  // namespace curvsub
