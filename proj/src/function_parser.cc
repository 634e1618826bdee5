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

#include "curvsub/function_parser.h"

#include <cmath>
#include <map>
#include <sstream>

#include "curvsub/errors.h"
#include "curvsub/rng.h"

namespace curvsub {
namespace {

[[noreturn]] void Fail(const std::string& msg) {
  throw Error(ErrorCode::kParse, msg);
}

double ToDouble(const std::string& s) {
  try {
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) Fail("bad number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    Fail("bad number '" + s + "'");
  }
}

long long ToInt(const std::string& s) {
  try {
    size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) Fail("bad integer '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    Fail("bad integer '" + s + "'");
  }
}

std::vector<std::string> Split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

}  // namespace

std::vector<double> ParseDoubleList(const std::string& text) {
  std::vector<double> out;
  for (const std::string& item : Split(text, ',')) out.push_back(ToDouble(item));
  if (out.empty()) Fail("empty list");
  return out;
}

std::vector<int> ParseIntList(const std::string& text) {
  std::vector<int> out;
  for (const std::string& item : Split(text, ',')) {
    out.push_back(static_cast<int>(ToInt(item)));
  }
  return out;
}

ValueOracle ParseFunctionSpec(const std::string& text,
                              std::optional<int> default_n) {
  const std::vector<std::string> parts = Split(text, ':');
  if (parts.empty() || parts[0].empty()) Fail("empty function spec");
  const std::string& kind = parts[0];

  std::multimap<std::string, std::string> kv;
  for (size_t i = 1; i < parts.size(); ++i) {
    const size_t eq = parts[i].find('=');
    if (eq == std::string::npos) Fail("expected key=value, got '" + parts[i] + "'");
    kv.emplace(parts[i].substr(0, eq), parts[i].substr(eq + 1));
  }
  auto single = [&](const std::string& key) -> std::optional<std::string> {
    auto [lo, hi] = kv.equal_range(key);
    if (lo == hi) return std::nullopt;
    if (std::next(lo) != hi) Fail("key '" + key + "' given twice");
    return lo->second;
  };
  auto required = [&](const std::string& key) {
    auto v = single(key);
    if (!v) Fail(kind + " spec needs '" + key + "'");
    return *v;
  };
  auto dimension = [&]() -> int {
    if (auto v = single("n")) return static_cast<int>(ToInt(*v));
    if (default_n) return *default_n;
    Fail(kind + " spec needs 'n'");
  };
  auto check_keys = [&](std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : kv) {
      bool ok = key == "modulate";
      for (const char* a : allowed) ok = ok || key == a;
      if (!ok) Fail("unknown key '" + key + "' for " + kind);
    }
  };

  std::optional<ValueOracle> base;
  if (kind == "modular") {
    check_keys({"w"});
    base = MakeModular(ParseDoubleList(required("w")));
  } else if (kind == "truncation") {
    check_keys({"n", "alpha"});
    base = MakeTruncation(dimension(), static_cast<int>(ToInt(required("alpha"))));
  } else if (kind == "hidden") {
    check_keys({"n", "alpha", "beta", "r", "seed"});
    const int n = dimension();
    const int alpha = static_cast<int>(ToInt(required("alpha")));
    const int beta = static_cast<int>(ToInt(required("beta")));
    Subset hidden(n);
    if (auto r = single("r")) {
      for (int j : ParseIntList(*r)) {
        if (j < 0 || j >= n) Fail("hidden element out of range");
        hidden.insert(j);
      }
    } else {
      const uint64_t seed = static_cast<uint64_t>(ToInt(required("seed")));
      if (alpha < 0 || alpha > n) Fail("alpha out of range");
      Rng rng(seed);
      hidden = rng.SampleWithoutReplacement(n, alpha);
    }
    base = MakeHiddenSet(n, alpha, beta, hidden);
  } else if (kind == "com") {
    check_keys({"n", "a", "w", "lambda"});
    const int n = dimension();
    const double a = ToDouble(required("a"));
    std::vector<ConcaveTerm> terms;
    auto [lo, hi] = kv.equal_range("w");
    for (auto it = lo; it != hi; ++it) {
      terms.push_back(ConcaveTerm{1.0, ParseDoubleList(it->second)});
    }
    if (terms.empty()) terms.push_back(ConcaveTerm{1.0, std::vector<double>(n, 1.0)});
    if (auto lambdas = single("lambda")) {
      const std::vector<double> l = ParseDoubleList(*lambdas);
      if (l.size() != terms.size()) Fail("lambda count differs from term count");
      for (size_t i = 0; i < l.size(); ++i) terms[i].lambda = l[i];
    }
    base = MakeConcaveOverModular(n, std::move(terms), a);
  } else if (kind == "sqrtmod") {
    check_keys({"w"});
    base = MakeSqrtModular(ParseDoubleList(required("w")));
  } else if (kind == "table") {
    check_keys({"v"});
    std::vector<double> v = ParseDoubleList(required("v"));
    const int n = static_cast<int>(std::lround(std::log2(v.size())));
    base = MakeTabulated(n, std::move(v));
  } else {
    Fail("unknown function kind '" + kind + "'");
  }

  if (auto kappa = single("modulate")) {
    return MakeModulated(*base, ToDouble(*kappa));
  }
  return *base;
}

}  // namespace curvsub
