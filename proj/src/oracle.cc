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

#include "curvsub/oracle.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <type_traits>

#include "curvsub/errors.h"

namespace curvsub {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void RequireNonnegative(const std::vector<double>& w, const char* what) {
  for (double v : w) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidParameter,
                  std::string(what) + " weights must be finite and >= 0");
    }
  }
}

void RequireDimension(const Subset& s, int n) {
  if (s.n() != n) {
    throw Error(ErrorCode::kContractViolation,
                "subset over " + std::to_string(s.n()) +
                    " elements passed to oracle over " + std::to_string(n));
  }
}

std::string JoinWeights(const std::vector<double>& w) {
  std::ostringstream out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) out << ",";
    out << w[i];
  }
  return out.str();
}

}  // namespace

double ModularValue(const std::vector<double>& weights, const Subset& s) {
  double total = 0.0;
  s.ForEach([&](int j) { total += weights[j]; });
  return total;
}

int SpecDimension(const FunctionSpec& spec) {
  return std::visit(
      Overloaded{
          [](const ModularSpec& m) { return static_cast<int>(m.weights.size()); },
          [](const TruncationSpec& t) { return t.n; },
          [](const HiddenSetSpec& h) { return h.hidden.n(); },
          [](const ConcaveOverModularSpec& c) { return c.n; },
          [](const ModulatedSpec& m) { return SpecDimension(*m.base); },
          [](const SqrtModularSpec& s) {
            return static_cast<int>(s.weights.size());
          },
          [](const TabulatedSpec& t) { return t.n; },
          [](const CurveNormalizedSpec& c) { return SpecDimension(*c.base); },
      },
      spec.kind);
}

double EvaluateSpec(const FunctionSpec& spec, const Subset& s) {
  return std::visit(
      Overloaded{
          [&](const ModularSpec& m) { return ModularValue(m.weights, s); },
          [&](const TruncationSpec& t) {
            return static_cast<double>(std::min(s.size(), t.alpha));
          },
          [&](const HiddenSetSpec& h) {
            const int outside = (s - h.hidden).size();
            return static_cast<double>(
                std::min({outside + h.beta, s.size(), h.alpha}));
          },
          [&](const ConcaveOverModularSpec& c) {
            double total = 0.0;
            for (const ConcaveTerm& term : c.terms) {
              const double inner = ModularValue(term.weights, s);
              if (inner > 0.0) {
                total += term.lambda * std::pow(inner, c.exponent);
              }
            }
            return total;
          },
          [&](const ModulatedSpec& m) {
            return m.kappa * EvaluateSpec(*m.base, s) +
                   (1.0 - m.kappa) * static_cast<double>(s.size());
          },
          [&](const SqrtModularSpec& q) {
            return std::sqrt(ModularValue(q.weights, s));
          },
          [&](const TabulatedSpec& t) { return t.values[s.ToMask()]; },
          [&](const CurveNormalizedSpec& c) {
            const double raw = (EvaluateSpec(*c.base, s) -
                                (1.0 - c.kappa) * ModularValue(c.singletons, s)) /
                               c.kappa;
            // Rounding can leave -1e-16 where the exact value is 0.
            return (raw < 0.0 && raw > -1e-9) ? 0.0 : raw;
          },
      },
      spec.kind);
}

std::string DescribeSpec(const FunctionSpec& spec) {
  return std::visit(
      Overloaded{
          [](const ModularSpec& m) {
            return "modular:w=" + JoinWeights(m.weights);
          },
          [](const TruncationSpec& t) {
            return "truncation:n=" + std::to_string(t.n) +
                   ":alpha=" + std::to_string(t.alpha);
          },
          [](const HiddenSetSpec& h) {
            std::string r;
            for (int j : h.hidden.Elements()) {
              r += (r.empty() ? "" : ",") + std::to_string(j);
            }
            return "hidden:n=" + std::to_string(h.hidden.n()) +
                   ":alpha=" + std::to_string(h.alpha) +
                   ":beta=" + std::to_string(h.beta) + ":r=" + r;
          },
          [](const ConcaveOverModularSpec& c) {
            std::ostringstream out;
            out << "com:n=" << c.n << ":a=" << c.exponent;
            for (const ConcaveTerm& t : c.terms) {
              out << ":term=" << t.lambda << "/" << JoinWeights(t.weights);
            }
            return out.str();
          },
          [](const ModulatedSpec& m) {
            std::ostringstream out;
            out << DescribeSpec(*m.base) << ":modulate=" << m.kappa;
            return out.str();
          },
          [](const SqrtModularSpec& s) {
            return "sqrtmod:w=" + JoinWeights(s.weights);
          },
          [](const TabulatedSpec& t) {
            return "table:v=" + JoinWeights(t.values);
          },
          [](const CurveNormalizedSpec& c) {
            std::ostringstream out;
            out << "normalized(" << DescribeSpec(*c.base) << ", kappa=" << c.kappa
                << ")";
            return out.str();
          },
      },
      spec.kind);
}

ValueOracle::ValueOracle(FunctionSpec spec)
    : spec_(std::make_shared<const FunctionSpec>(std::move(spec))),
      n_(SpecDimension(*spec_)) {
  if (n_ < 1 || n_ > kMaxElements) {
    throw Error(ErrorCode::kInvalidParameter,
                "oracle dimension out of range: " + std::to_string(n_));
  }
}

double ValueOracle::Evaluate(const Subset& s, QuerySession& session) const {
  session.Tick();
  return Evaluate(s);
}

double ValueOracle::Evaluate(const Subset& s) const {
  RequireDimension(s, n_);
  if (s.empty()) return 0.0;
  return EvaluateSpec(*spec_, s);
}

double ValueOracle::Gain(int j, const Subset& s) const {
  return Evaluate(s.With(j)) - Evaluate(s);
}

ValueOracle MakeModular(std::vector<double> weights) {
  RequireNonnegative(weights, "modular");
  return ValueOracle(FunctionSpec{ModularSpec{std::move(weights)}});
}

ValueOracle MakeTruncation(int n, int alpha) {
  if (alpha < 0) {
    throw Error(ErrorCode::kInvalidParameter, "truncation alpha must be >= 0");
  }
  return ValueOracle(FunctionSpec{TruncationSpec{n, alpha}});
}

ValueOracle MakeHiddenSet(int n, int alpha, int beta, const Subset& hidden) {
  if (hidden.n() != n) {
    throw Error(ErrorCode::kContractViolation, "hidden set dimension != n");
  }
  if (hidden.size() != alpha || beta < 1 || alpha > n) {
    throw Error(ErrorCode::kInvalidInstance,
                "hidden set needs |R| = alpha <= n and beta >= 1 (|R|=" +
                    std::to_string(hidden.size()) +
                    ", alpha=" + std::to_string(alpha) +
                    ", beta=" + std::to_string(beta) + ")");
  }
  return ValueOracle(FunctionSpec{HiddenSetSpec{hidden, alpha, beta}});
}

ValueOracle MakeConcaveOverModular(int n, std::vector<ConcaveTerm> terms,
                                   double exponent) {
  if (!(exponent > 0.0 && exponent <= 1.0)) {
    throw Error(ErrorCode::kInvalidParameter,
                "concave exponent must lie in (0, 1]");
  }
  for (const ConcaveTerm& t : terms) {
    if (!(t.lambda >= 0.0)) {
      throw Error(ErrorCode::kInvalidParameter, "lambda must be >= 0");
    }
    if (static_cast<int>(t.weights.size()) != n) {
      throw Error(ErrorCode::kInvalidParameter, "term weight length != n");
    }
    RequireNonnegative(t.weights, "concave term");
  }
  return ValueOracle(
      FunctionSpec{ConcaveOverModularSpec{n, std::move(terms), exponent}});
}

ValueOracle MakeCardinalityPower(int n, double exponent) {
  return MakeConcaveOverModular(
      n, {ConcaveTerm{1.0, std::vector<double>(n, 1.0)}}, exponent);
}

ValueOracle MakeModulated(const ValueOracle& base, double kappa) {
  if (!(kappa >= 0.0 && kappa <= 1.0)) {
    throw Error(ErrorCode::kInvalidParameter, "kappa must lie in [0, 1]");
  }
  return ValueOracle(FunctionSpec{ModulatedSpec{base.shared_spec(), kappa}});
}

ValueOracle MakeSqrtModular(std::vector<double> weights) {
  RequireNonnegative(weights, "sqrt-modular");
  return ValueOracle(FunctionSpec{SqrtModularSpec{std::move(weights)}});
}

ValueOracle MakeTabulated(int n, std::vector<double> values) {
  if (n < 1 || n > 30 || values.size() != (size_t{1} << n)) {
    throw Error(ErrorCode::kInvalidParameter,
                "table needs exactly 2^n values with 1 <= n <= 30");
  }
  if (values[0] != 0.0) {
    throw Error(ErrorCode::kInvalidParameter, "table value at empty set != 0");
  }
  for (double v : values) {
    if (!(v >= 0.0)) {
      throw Error(ErrorCode::kInvalidParameter, "table values must be >= 0");
    }
  }
  return ValueOracle(FunctionSpec{TabulatedSpec{n, std::move(values)}});
}

ValueOracle MakeCurveNormalized(const ValueOracle& base, double kappa,
                                std::vector<double> singletons) {
  if (!(kappa > 0.0 && kappa <= 1.0)) {
    throw Error(ErrorCode::kInvalidParameter,
                "curve normalization needs kappa in (0, 1]");
  }
  if (static_cast<int>(singletons.size()) != base.n()) {
    throw Error(ErrorCode::kContractViolation, "singleton vector length != n");
  }
  return ValueOracle(FunctionSpec{
      CurveNormalizedSpec{base.shared_spec(), kappa, std::move(singletons)}});
}

ValueOracle Tabulate(const ValueOracle& oracle, int limit) {
  const int n = oracle.n();
  RequireEnumerable(n, std::min(limit, 30), "tabulation");
  if (std::holds_alternative<TabulatedSpec>(oracle.spec().kind)) return oracle;
  std::vector<double> values(size_t{1} << n);
  ForEachMask(n, [&](uint64_t mask) {
    values[mask] = oracle(Subset::FromMask(n, mask));
  });
  return ValueOracle(FunctionSpec{TabulatedSpec{n, std::move(values)}});
}

std::vector<double> SingletonVector(const ValueOracle& oracle,
                                    QuerySession& session) {
  std::vector<double> out(oracle.n());
  Subset s(oracle.n());
  for (int j = 0; j < oracle.n(); ++j) {
    out[j] = oracle.Evaluate(s.With(j), session);
  }
  return out;
}

}  // namespace curvsub
