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

#ifndef CURVSUB_ORACLE_H_
#define CURVSUB_ORACLE_H_

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "curvsub/subset.h"

namespace curvsub {

// Counts oracle evaluations for one caller. Not shared between threads.
class QuerySession {
 public:
  void Tick() { ++count_; }
  int64_t count() const { return count_; }

 private:
  int64_t count_ = 0;
};

struct FunctionSpec;

// w(X) = sum of weights.
struct ModularSpec {
  std::vector<double> weights;
};

// h(X) = min(|X|, alpha).
struct TruncationSpec {
  int n;
  int alpha;
};

// f^R(X) = min(|X \ R| + beta, |X|, alpha), the hidden-set family.
struct HiddenSetSpec {
  Subset hidden;
  int alpha;
  int beta;
};

struct ConcaveTerm {
  double lambda;
  std::vector<double> weights;
};

// sum_i lambda_i * (w_i(X))^exponent.
struct ConcaveOverModularSpec {
  int n;
  std::vector<ConcaveTerm> terms;
  double exponent;
};

// kappa * base(X) + (1 - kappa) * |X|.
struct ModulatedSpec {
  std::shared_ptr<const FunctionSpec> base;
  double kappa;
};

// sqrt(w(X)).
struct SqrtModularSpec {
  std::vector<double> weights;
};

// Explicit value per mask, index = mask.
struct TabulatedSpec {
  int n;
  std::vector<double> values;
};

// (base(X) - (1 - kappa) * sum_{j in X} singletons[j]) / kappa.
struct CurveNormalizedSpec {
  std::shared_ptr<const FunctionSpec> base;
  double kappa;
  std::vector<double> singletons;
};

struct FunctionSpec {
  std::variant<ModularSpec, TruncationSpec, HiddenSetSpec,
               ConcaveOverModularSpec, ModulatedSpec, SqrtModularSpec,
               TabulatedSpec, CurveNormalizedSpec>
      kind;
};

int SpecDimension(const FunctionSpec& spec);
double EvaluateSpec(const FunctionSpec& spec, const Subset& s);
std::string DescribeSpec(const FunctionSpec& spec);

// Immutable value oracle over a ground set of n elements. Safe to share
// across threads; all counting happens in the caller's QuerySession.
class ValueOracle {
 public:
  explicit ValueOracle(FunctionSpec spec);

  int n() const { return n_; }
  const FunctionSpec& spec() const { return *spec_; }
  std::shared_ptr<const FunctionSpec> shared_spec() const { return spec_; }

  // Counts one query in session.
  double Evaluate(const Subset& s, QuerySession& session) const;
  // Uncounted evaluation for surrogate construction and test scans.
  double Evaluate(const Subset& s) const;
  double operator()(const Subset& s) const { return Evaluate(s); }

  // Marginal gain f(j | s), uncounted.
  double Gain(int j, const Subset& s) const;

  std::string Describe() const { return DescribeSpec(*spec_); }

 private:
  std::shared_ptr<const FunctionSpec> spec_;
  int n_;
};

ValueOracle MakeModular(std::vector<double> weights);
ValueOracle MakeTruncation(int n, int alpha);
// Requires |hidden| == alpha, beta >= 1, alpha <= n.
ValueOracle MakeHiddenSet(int n, int alpha, int beta, const Subset& hidden);
ValueOracle MakeConcaveOverModular(int n, std::vector<ConcaveTerm> terms,
                                   double exponent);
// Single all-ones term: |X|^exponent.
ValueOracle MakeCardinalityPower(int n, double exponent);
ValueOracle MakeModulated(const ValueOracle& base, double kappa);
ValueOracle MakeSqrtModular(std::vector<double> weights);
ValueOracle MakeTabulated(int n, std::vector<double> values);
ValueOracle MakeCurveNormalized(const ValueOracle& base, double kappa,
                                std::vector<double> singletons);

// Evaluates oracle on every mask; requires n <= limit.
ValueOracle Tabulate(const ValueOracle& oracle,
                     int limit = kDefaultTableLimit);

// (f({0}), ..., f({n-1})) using exactly n queries.
std::vector<double> SingletonVector(const ValueOracle& oracle,
                                    QuerySession& session);

double ModularValue(const std::vector<double>& weights, const Subset& s);

// One observed (set, value) pair.
struct Sample {
  Subset set;
  double value = 0.0;
};

}  // namespace curvsub

#endif  // CURVSUB_ORACLE_H_
