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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "curvsub/approx.h"
#include "curvsub/curvature.h"
#include "curvsub/errors.h"
#include "curvsub/oracle.h"
#include "curvsub/rng.h"
#include "zoo.h"

namespace curvsub {
namespace {

constexpr double kTol = 1e-9;

ErrorCode CodeOf(const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::kInternal;
}

double HatAt(const ValueOracle& f, const Subset& x) {
  QuerySession session;
  return HatCurvature(f, x, session);
}

TEST(CorrectionFactorTest, Values) {
  EXPECT_EQ(CorrectionFactor(1.0, 0.3), 1.0);
  EXPECT_EQ(CorrectionFactor(7.0, 0.0), 1.0);
  EXPECT_EQ(CorrectionFactor(7.0, 1.0), 7.0);
  EXPECT_DOUBLE_EQ(CorrectionFactor(4.0, 0.5), 1.6);
  EXPECT_DOUBLE_EQ(ModularBoundFactor(4, 0.5), 1.6);
}

TEST(ModularUpperBoundTest, SquareRootOfCardinality) {
  const ValueOracle f = MakeCardinalityPower(4, 0.5);
  const ValueOracle m = ModularUpperBound(f);
  const Subset v = Subset::Full(4);
  EXPECT_DOUBLE_EQ(m(v), 4.0);
  EXPECT_DOUBLE_EQ(m(v) / f(v), 2.0);
  const double bound = ModularBoundFactor(4, HatAt(f, v));
  EXPECT_NEAR(bound, 4 / (1 + 3 * (2 - std::sqrt(3.0))), kTol);  // 2.21748...
  EXPECT_GE(bound, 2.0);
}

TEST(ModularUpperBoundTest, ModularIsExact) {
  const ValueOracle f = MakeModular({0.5, 2, 3});
  const ValueOracle m = ModularUpperBound(f);
  ForEachMask(3, [&](uint64_t s) {
    EXPECT_EQ(m(Subset::FromMask(3, s)), f(Subset::FromMask(3, s)));
  });
}

TEST(ModularUpperBoundTest, TightnessWitnessAttainsBoundAtEveryCardinality) {
  for (double kappa : {0.25, 0.5, 0.9, 1.0}) {
    const int n = 8;
    const ValueOracle f = MakeModulated(MakeTruncation(n, 1), kappa);
    const ValueOracle m = ModularUpperBound(f);
    for (int k = 1; k <= n; ++k) {
      Subset x(n);
      for (int j = 0; j < k; ++j) x = x.With(j);
      EXPECT_NEAR(m(x) / f(x), k / (1 + (k - 1) * (1 - kappa)), kTol);
      EXPECT_NEAR(m(x) / f(x), ModularBoundFactor(k, HatAt(f, x)), kTol);
    }
  }
  const ValueOracle half = MakeModulated(MakeTruncation(4, 1), 0.5);
  EXPECT_DOUBLE_EQ(half(Subset::Full(4)), 2.5);
}

TEST(ModularUpperBoundProperty, BoundHoldsWithHatCurvature) {
  Rng rng(31);
  for (int instance = 0; instance < 35; ++instance) {
    const int n = 5 + instance % 5;
    const ValueOracle f = testing::RandomZooMember(n, instance, rng);
    const ValueOracle m = ModularUpperBound(f);
    ForEachMask(n, [&](uint64_t s) {
      if (!s) return;
      const Subset x = Subset::FromMask(n, s);
      const double fx = f(x);
      ASSERT_LE(fx, m(x) + kTol);
      ASSERT_LE(m(x), ModularBoundFactor(x.size(), HatAt(f, x)) * fx * (1 + kTol) + kTol)
          << f.Describe() << " " << x.ToHex();
    });
  }
}

TEST(FitSqrtModularTest, RepresentableFunctionIsExact) {
  const std::vector<double> w0 = {0.5, 1.0, 2.0, 0.25, 3.0};
  const SqrtModularFit fit = FitSqrtModular(MakeSqrtModular(w0));
  EXPECT_NEAR(fit.gamma, 1.0, 1e-6);
  for (size_t j = 0; j < w0.size(); ++j) EXPECT_NEAR(fit.w[j], w0[j], 1e-6);
}

TEST(FitSqrtModularTest, SingleElementTruncation) {
  const SqrtModularFit fit = FitSqrtModular(MakeTruncation(2, 1));
  EXPECT_NEAR(fit.gamma, std::sqrt(2.0), 1e-6);
  EXPECT_NEAR(fit.w[0], 0.5, 1e-6);
  EXPECT_NEAR(fit.w[1], 0.5, 1e-6);
  EXPECT_EQ(fit.mode, ScanMode::kExhaustive);
  EXPECT_EQ(fit.constraint_sets, 3);
}

TEST(FitSqrtModularTest, SampledModeIsFlagged) {
  ScanOptions options;
  options.mode = ScanMode::kSampled;
  options.sample_count = 300;
  options.seed = 5;
  const ValueOracle g = MakeTruncation(30, 6);
  const SqrtModularFit fit = FitSqrtModular(g, options);
  EXPECT_EQ(fit.mode, ScanMode::kSampled);
  EXPECT_EQ(fit.sample_count, 300);
  EXPECT_EQ(fit.seed, 5u);
  for (const Subset& x : ScanSubsets(30, options)) {
    ASSERT_LE(EvaluateFit(fit, x), g(x) * (1 + kTol) + kTol);
    ASSERT_LE(g(x), fit.gamma * EvaluateFit(fit, x) * (1 + kTol) + kTol);
  }
}

TEST(FitSqrtModularTest, ExhaustiveNeedsATable) {
  EXPECT_EQ(CodeOf([] { FitSqrtModular(MakeTruncation(13, 2)); }), ErrorCode::kScale);
}

TEST(FitSqrtModularProperty, SandwichAndSquareRootCeiling) {
  Rng rng(32);
  for (int instance = 0; instance < 28; ++instance) {
    const int n = 3 + instance % 7;
    const ValueOracle g = testing::RandomZooMember(n, instance, rng);
    const SqrtModularFit fit = FitSqrtModular(g);
    EXPECT_GE(fit.gamma, 1.0);
    EXPECT_LE(fit.gamma, std::sqrt(static_cast<double>(n)) * (1 + 1e-6)) << g.Describe();
    for (double wj : fit.w) EXPECT_GE(wj, 0.0);
    ForEachMask(n, [&](uint64_t s) {
      const Subset x = Subset::FromMask(n, s);
      const double inner = EvaluateFit(fit, x);
      ASSERT_LE(inner, g(x) * (1 + kTol) + kTol) << g.Describe() << " " << x.ToHex();
      ASSERT_LE(g(x), fit.gamma * inner * (1 + kTol) + kTol)
          << g.Describe() << " " << x.ToHex();
    });
  }
}

TEST(CorrectedSurrogateTest, ModularInputIsExact) {
  const ValueOracle f = MakeModular({1, 2, 4});
  const CorrectedSurrogate s = CorrectedSurrogate::FromModular(CurveNormalize(f));
  EXPECT_EQ(s.kappa(), 0.0);
  EXPECT_EQ(s.factor(), 1.0);
  ForEachMask(3, [&](uint64_t m) {
    EXPECT_DOUBLE_EQ(s(Subset::FromMask(3, m)), f(Subset::FromMask(3, m)));
  });
}

TEST(CorrectedSurrogateTest, FullCurvatureIsTheInnerFit) {
  const ValueOracle f = MakeTruncation(5, 2);
  const DecomposedFunction d = CurveNormalize(f);
  const SqrtModularFit fit = FitSqrtModular(d.normalized);
  const CorrectedSurrogate s = CorrectedSurrogate::FromSqrtFit(d, fit);
  EXPECT_EQ(s.kappa(), 1.0);
  EXPECT_DOUBLE_EQ(s.factor(), fit.gamma);
  ForEachMask(5, [&](uint64_t m) {
    const Subset x = Subset::FromMask(5, m);
    EXPECT_DOUBLE_EQ(s(x), EvaluateFit(fit, x));
  });
}

TEST(CorrectedSurrogateTest, ModulatedTruncationMeetsCorrectedFactor) {
  const ValueOracle f = MakeModulated(MakeTruncation(6, 2), 0.5);
  const DecomposedFunction d = CurveNormalize(f);
  const SqrtModularFit fit = FitSqrtModular(d.normalized);
  const CorrectedSurrogate s = CorrectedSurrogate::FromSqrtFit(d, fit);
  const double factor = fit.gamma / (1 + (fit.gamma - 1) * 0.5);
  EXPECT_NEAR(s.factor(), factor, kTol);
  const FactorReport report = ApproximationFactor(f, s, Direction::kLower);
  EXPECT_LE(report.worst_ratio, factor * (1 + kTol));
  EXPECT_GE(report.worst_ratio, 1.0);
  EXPECT_EQ(report.scanned, 63);
}

TEST(CorrectedSurrogateTest, UpperDirectionScalesTheLowerSurrogate) {
  const ValueOracle f = MakeModulated(MakeTruncation(6, 3), 0.7);
  const DecomposedFunction d = CurveNormalize(f);
  const CorrectedSurrogate lower = CorrectedSurrogate::FromModular(d);
  const CorrectedSurrogate upper = CorrectedSurrogate::FromModular(d, Direction::kUpper);
  EXPECT_EQ(upper.direction(), Direction::kUpper);
  ForEachMask(6, [&](uint64_t m) {
    const Subset x = Subset::FromMask(6, m);
    EXPECT_NEAR(upper(x), lower.factor() * lower(x), kTol);
  });
  const FactorReport report = ApproximationFactor(f, upper, Direction::kUpper);
  EXPECT_LE(report.worst_ratio, upper.factor() * (1 + kTol));
}

// f_hat <= f <= factor * f_hat <= f_hat / (1 - kappa).
TEST(CorrectedSurrogateProperty, SandwichChainForBothInnerSurrogates) {
  Rng rng(33);
  int checked = 0;
  for (int instance = 0; checked < 50; ++instance) {
    const int n = 4 + instance % 7;
    const ValueOracle f = Tabulate(testing::RandomZooMember(n, instance, rng));
    QuerySession session;
    const double kappa = TotalCurvature(f, session).total;
    if (kappa >= 1.0) continue;
    ++checked;
    const DecomposedFunction d = CurveNormalize(f);
    const SqrtModularFit fit = FitSqrtModular(d.normalized);
    for (const CorrectedSurrogate& s :
         {CorrectedSurrogate::FromModular(d), CorrectedSurrogate::FromSqrtFit(d, fit)}) {
      const double factor = s.factor();
      ASSERT_LE(factor, 1 / (1 - kappa) * (1 + kTol));
      ForEachMask(n, [&](uint64_t m) {
        const Subset x = Subset::FromMask(n, m);
        const double fx = f(x);
        const double lo = s(x);
        ASSERT_LE(lo, fx * (1 + kTol) + kTol) << f.Describe() << " " << x.ToHex();
        ASSERT_LE(fx, factor * lo * (1 + kTol) + kTol) << f.Describe() << " " << x.ToHex();
        ASSERT_LE(factor * lo, lo / (1 - kappa) * (1 + kTol) + kTol);
      });
    }
  }
}

TEST(ConcaveOverModularProperty, ModularBoundWithinPowerOfCardinality) {
  Rng rng(34);
  for (int instance = 0; instance < 20; ++instance) {
    const int n = 6 + instance % 7;
    const double a = std::vector<double>{0.25, 0.5, 0.75}[instance % 3];
    std::vector<ConcaveTerm> terms(1 + instance % 3);
    for (ConcaveTerm& t : terms) {
      t.lambda = rng.Uniform(0.5, 2.0);
      t.weights.resize(n);
      for (double& w : t.weights) w = rng.Uniform(0.1, 1.0);
    }
    const ValueOracle f = Tabulate(MakeConcaveOverModular(n, terms, a));
    const ValueOracle m = ModularUpperBound(f);
    ForEachMask(n, [&](uint64_t s) {
      if (!s) return;
      const Subset x = Subset::FromMask(n, s);
      ASSERT_LE(m(x), std::pow(x.size(), 1 - a) * f(x) * (1 + kTol));
    });
  }
}

TEST(ApproximationFactorTest, IdenticalSurrogateHasFactorOne) {
  const ValueOracle f = MakeTruncation(5, 3);
  const FactorReport report =
      ApproximationFactor(f, [&](const Subset& x) { return f(x); }, Direction::kLower);
  EXPECT_EQ(report.worst_ratio, 1.0);
  EXPECT_EQ(report.mode, ScanMode::kExhaustive);
}

TEST(ApproximationFactorTest, PerSetModularBoundPeaksAtGroundSet) {
  const ValueOracle f = MakeCardinalityPower(4, 0.5);
  const ValueOracle m = ModularUpperBound(f);
  auto lower = [&](const Subset& x) { return m(x) / ModularBoundFactor(x.size(), HatAt(f, x)); };
  const FactorReport report = ApproximationFactor(f, lower, Direction::kLower);
  const Subset v = Subset::Full(4);
  EXPECT_EQ(report.witness, v);
  EXPECT_NEAR(report.worst_ratio, ModularBoundFactor(4, HatAt(f, v)) * f(v) / m(v), kTol);
}

TEST(ApproximationFactorTest, HiddenSetWithFittedSurrogate) {
  const ValueOracle f = MakeHiddenSet(8, 4, 1, Subset::FromElements(8, {0, 2, 4, 6}));
  const DecomposedFunction d = CurveNormalize(f);
  const SqrtModularFit fit = FitSqrtModular(d.normalized);
  const CorrectedSurrogate s = CorrectedSurrogate::FromSqrtFit(d, fit);
  const FactorReport report = ApproximationFactor(f, s, Direction::kLower);
  EXPECT_GE(report.worst_ratio, 1.0);
  EXPECT_LE(report.worst_ratio, s.factor() * (1 + kTol));
  EXPECT_EQ(report.scanned, 255);
}

TEST(ApproximationFactorTest, RejectsWrongSideAndZeroSurrogate) {
  const ValueOracle f = MakeTruncation(4, 2);
  EXPECT_EQ(CodeOf([&] {
              ApproximationFactor(f, [&](const Subset& x) { return 1.1 * f(x); },
                                  Direction::kLower);
            }),
            ErrorCode::kCertificationFailure);
  EXPECT_EQ(CodeOf([&] {
              ApproximationFactor(f, [&](const Subset& x) { return 0.9 * f(x); },
                                  Direction::kUpper);
            }),
            ErrorCode::kCertificationFailure);
  EXPECT_EQ(CodeOf([&] {
              ApproximationFactor(f, [](const Subset&) { return 0.0; }, Direction::kLower);
            }),
            ErrorCode::kCertificationFailure);
}

TEST(ApproximationFactorTest, SampledScanCoversSingletonsAndGroundSet) {
  ScanOptions options;
  options.mode = ScanMode::kSampled;
  options.sample_count = 50;
  options.seed = 9;
  const std::vector<Subset> sets = ScanSubsets(40, options);
  EXPECT_EQ(sets.size(), 40u + 1u + 50u);
  EXPECT_EQ(sets, ScanSubsets(40, options));
  const ValueOracle f = MakeTruncation(40, 5);
  const FactorReport report =
      ApproximationFactor(f, [&](const Subset& x) { return f(x); }, Direction::kLower, options);
  EXPECT_EQ(report.mode, ScanMode::kSampled);
}

}  // namespace
}  // namespace curvsub
