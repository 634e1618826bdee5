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

#include "curvsub/experiments.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include "curvsub/approx.h"
#include "curvsub/curvature.h"
#include "curvsub/errors.h"
#include "curvsub/function_parser.h"
#include "curvsub/rng.h"

namespace curvsub {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kBruteForceCheckLimit = 20;

std::string Trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double ParseNumber(const std::string& text, const std::string& what) {
  try {
    size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::kParse, "bad " + what + ": '" + text + "'");
}

int ParseInteger(const std::string& text, const std::string& what) {
  const double v = ParseNumber(text, what);
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw Error(ErrorCode::kParse, what + " must be an integer: '" + text + "'");
  }
  return static_cast<int>(v);
}

Method ParseMethod(const std::string& text) {
  if (text == "mub") return Method::kMub;
  if (text == "ea") return Method::kEa;
  throw Error(ErrorCode::kParse, "unknown method '" + text + "' (mub, ea)");
}

struct Cell {
  int n;
  double kappa;
  double epsilon;  // NaN when unused
  int instance_index;
  Method method;
};

double SolveTrial(const Cell& cell, const ExperimentConfig& config, uint64_t seed) {
  const Instance instance = MakeInstance(cell.n, cell.kappa, cell.epsilon,
                                         config.alpha_override,
                                         config.beta_override, seed);
  QuerySession session;
  SolveResult result;
  if (cell.method == Method::kMub) {
    result = MinimizeMub(instance.oracle, instance.constraint, session);
  } else {
    ScanOptions fit_options;
    if (cell.n > kDefaultTableLimit) {
      fit_options.mode = ScanMode::kSampled;
      fit_options.sample_count = config.ea_samples;
      fit_options.seed = DeriveSeed(seed, 1);
    }
    result = MinimizeEa(instance.oracle, instance.constraint, fit_options, session);
  }
  if (!result.feasible) {
    throw Error(ErrorCode::kInternal, "solver returned an infeasible set");
  }
  return result.true_value / instance.optimum;
}

std::string FormatNumber(double v) {
  if (std::isnan(v)) return "nan";
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", v);
  return buffer;
}

}  // namespace

AlphaRule AlphaRule::Parse(const std::string& text) {
  AlphaRule rule;
  const std::string t = Trim(text);
  if (t.rfind("n/", 0) == 0) {
    rule.kind = Kind::kDivide;
    rule.value = ParseNumber(t.substr(2), "alpha divisor");
    if (!(rule.value > 0.0)) throw Error(ErrorCode::kParse, "alpha divisor must be > 0");
  } else if (t.rfind("n^", 0) == 0) {
    rule.kind = Kind::kPower;
    rule.value = ParseNumber(t.substr(2), "alpha exponent");
  } else {
    rule.kind = Kind::kFixed;
    rule.value = ParseInteger(t, "alpha");
  }
  return rule;
}

int AlphaRule::Evaluate(int n) const {
  switch (kind) {
    case Kind::kFixed: return static_cast<int>(value);
    case Kind::kDivide: return static_cast<int>(std::lround(n / value));
    case Kind::kPower: return static_cast<int>(std::lround(std::pow(n, value)));
  }
  return 0;
}

int HiddenAlpha(int n, double epsilon) {
  return std::min<int>(n, static_cast<int>(std::lround(std::pow(n, 0.5 + epsilon))));
}

int HiddenBeta(int n, double epsilon) {
  return std::max<int>(1, static_cast<int>(std::lround(std::pow(n, 2.0 * epsilon))));
}

Instance MakeInstance(int n, double kappa, double epsilon,
                      std::optional<AlphaRule> alpha_override,
                      std::optional<int> beta_override, uint64_t seed) {
  if (n < 1 || n > kMaxElements) {
    throw Error(ErrorCode::kInvalidRegime, "n=" + std::to_string(n) + " out of range");
  }
  if (!(kappa >= 0.0 && kappa <= 1.0)) {
    throw Error(ErrorCode::kInvalidParameter, "kappa outside [0, 1]");
  }
  if ((!alpha_override || !beta_override) && !(epsilon > 0.0 && epsilon < 0.5)) {
    throw Error(ErrorCode::kInvalidParameter, "epsilon must lie in (0, 1/2)");
  }
  const int alpha = alpha_override ? alpha_override->Evaluate(n) : HiddenAlpha(n, epsilon);
  const int beta = beta_override ? *beta_override : HiddenBeta(n, epsilon);
  if (alpha < 1 || alpha > n) {
    throw Error(ErrorCode::kInvalidRegime,
                "alpha=" + std::to_string(alpha) + " outside [1, n=" +
                    std::to_string(n) + "]");
  }
  if (beta < 1 || beta > alpha) {
    throw Error(ErrorCode::kInvalidRegime,
                "beta=" + std::to_string(beta) + " outside [1, alpha=" +
                    std::to_string(alpha) + "]");
  }
  Rng rng(seed);
  const Subset hidden = rng.SampleWithoutReplacement(n, alpha);
  ValueOracle oracle = MakeModulated(MakeHiddenSet(n, alpha, beta, hidden), kappa);
  ConstraintFamily constraint = ConstraintFamily::CardinalityLB(n, alpha);
  const double optimum = kappa * beta + (1.0 - kappa) * alpha;
  if (std::abs(oracle.Evaluate(hidden) - optimum) > 1e-9) {
    throw Error(ErrorCode::kInternal, "hidden set value disagrees with the optimum");
  }
  if (n <= kBruteForceCheckLimit) {
    const SolveResult exact = BruteForceMin(oracle, constraint);
    if (std::abs(exact.true_value - optimum) > 1e-9) {
      throw Error(ErrorCode::kInternal,
                  "enumerated optimum " + std::to_string(exact.true_value) +
                      " differs from " + std::to_string(optimum));
    }
  }
  return Instance{std::move(oracle), std::move(constraint), optimum, alpha, beta,
                  hidden};
}

double TheoreticalCurve(CurveKind kind, double kappa, int a, int b) {
  switch (kind) {
    case CurveKind::kMubCard:
      return AprioriBound(FamilyKind::kCardinalityLB, Method::kMub, a, kappa);
    case CurveKind::kEaCard:
      return AprioriBound(FamilyKind::kCardinalityLB, Method::kEa, a, kappa);
    case CurveKind::kHardness:
      if (a < 1 || b < 1) {
        throw Error(ErrorCode::kInvalidArgument, "hardness curve needs alpha, beta >= 1");
      }
      return a / ((1.0 - kappa) * a + kappa * b);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown curve");
}

ExperimentConfig ParseExperimentConfig(const std::string& text) {
  ExperimentConfig config;
  std::map<std::string, std::string> seen;
  std::istringstream in(text);
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    line = Trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(line_number) + ": ";
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kParse, where + "expected key=value");
    }
    const std::string key = Trim(line.substr(0, eq));
    const std::string value = Trim(line.substr(eq + 1));
    if (!seen.emplace(key, value).second) {
      throw Error(ErrorCode::kParse, where + "duplicate key '" + key + "'");
    }
    try {
      if (key == "n") {
        config.n_list = ParseIntList(value);
      } else if (key == "kappa") {
        config.kappa_list = ParseDoubleList(value);
      } else if (key == "epsilon") {
        config.epsilon_list = ParseDoubleList(value);
      } else if (key == "alpha") {
        config.alpha_override = AlphaRule::Parse(value);
      } else if (key == "beta") {
        config.beta_override = ParseInteger(value, "beta");
      } else if (key == "trials") {
        config.trials = ParseInteger(value, "trials");
      } else if (key == "seed") {
        config.base_seed = std::stoull(value);
      } else if (key == "methods") {
        config.methods.clear();
        std::istringstream items(value);
        std::string item;
        while (std::getline(items, item, ',')) config.methods.push_back(ParseMethod(Trim(item)));
      } else if (key == "threads") {
        config.threads = ParseInteger(value, "threads");
      } else if (key == "ea_samples") {
        config.ea_samples = ParseInteger(value, "ea_samples");
      } else {
        throw Error(ErrorCode::kParse, "unknown key '" + key + "'");
      }
    } catch (const Error& e) {
      throw Error(ErrorCode::kParse, where + e.what());
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParse, where + "bad value for '" + key + "'");
    }
  }
  if (config.n_list.empty()) throw Error(ErrorCode::kParse, "missing key 'n'");
  if (config.kappa_list.empty() || config.epsilon_list.empty() ||
      config.methods.empty()) {
    throw Error(ErrorCode::kParse, "empty list in config");
  }
  if (config.trials < 1) throw Error(ErrorCode::kParse, "trials must be >= 1");
  if (config.threads < 0) throw Error(ErrorCode::kParse, "threads must be >= 0");
  if (config.ea_samples < 0) throw Error(ErrorCode::kParse, "ea_samples must be >= 0");
  for (double k : config.kappa_list) {
    if (!(k >= 0.0 && k <= 1.0)) throw Error(ErrorCode::kParse, "kappa outside [0, 1]");
  }
  const bool epsilon_used = !config.alpha_override || !config.beta_override;
  for (double e : config.epsilon_list) {
    if (epsilon_used && !(e > 0.0 && e < 0.5)) {
      throw Error(ErrorCode::kParse, "epsilon outside (0, 1/2)");
    }
  }
  return config;
}

ExperimentConfig ReadExperimentConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseExperimentConfig(buffer.str());
}

std::vector<ResultRow> RunExperiment(const ExperimentConfig& config) {
  const bool epsilon_used = !config.alpha_override || !config.beta_override;
  const std::vector<double> epsilons =
      epsilon_used ? config.epsilon_list : std::vector<double>{kNaN};

  std::vector<Cell> cells;
  int instance_index = 0;
  for (int n : config.n_list) {
    for (double kappa : config.kappa_list) {
      for (double epsilon : epsilons) {
        for (Method method : config.methods) {
          cells.push_back(Cell{n, kappa, epsilon, instance_index, method});
        }
        ++instance_index;
      }
    }
  }

  const int trials = config.trials;
  const size_t total = cells.size() * trials;
  std::vector<double> factors(total, kNaN);
  std::vector<std::string> errors(total);
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t item = next++; item < total; item = next++) {
      const Cell& cell = cells[item / trials];
      const int trial = static_cast<int>(item % trials);
      try {
        factors[item] = SolveTrial(
            cell, config, DeriveSeed(config.base_seed, cell.instance_index, trial));
      } catch (const std::exception& e) {
        errors[item] = e.what();
      }
    }
  };
  int threads = config.threads > 0
                    ? config.threads
                    : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = static_cast<int>(std::min<size_t>(threads, std::max<size_t>(total, 1)));
  std::vector<std::thread> pool;
  for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<ResultRow> rows;
  for (size_t c = 0; c < cells.size(); ++c) {
    const Cell& cell = cells[c];
    ResultRow row;
    row.method = cell.method;
    row.n = cell.n;
    row.kappa = cell.kappa;
    row.epsilon = cell.epsilon;
    row.trials = trials;
    try {
      row.alpha = config.alpha_override ? config.alpha_override->Evaluate(cell.n)
                                        : HiddenAlpha(cell.n, cell.epsilon);
      row.beta = config.beta_override ? *config.beta_override
                                      : HiddenBeta(cell.n, cell.epsilon);
      row.theoretical_bound = TheoreticalCurve(
          CurveKind::kHardness, cell.kappa, static_cast<int>(row.alpha),
          static_cast<int>(row.beta));
    } catch (const std::exception&) {
      row.theoretical_bound = kNaN;
    }
    for (int t = 0; t < trials; ++t) {
      const size_t item = c * trials + t;
      if (!errors[item].empty() && row.error.empty()) row.error = errors[item];
      row.factors.push_back(factors[item]);
    }
    if (!row.error.empty()) {
      row.empirical_mean = row.empirical_std = kNaN;
    } else {
      double sum = 0.0;
      for (double f : row.factors) sum += f;
      row.empirical_mean = sum / trials;
      double squares = 0.0;
      for (double f : row.factors) squares += (f - row.empirical_mean) * (f - row.empirical_mean);
      row.empirical_std = trials > 1 ? std::sqrt(squares / (trials - 1)) : 0.0;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

const char kCsvHeader[] =
    "constraint,method,n,kappa,epsilon,alpha,beta,trials,empirical_mean,"
    "empirical_std,theoretical_bound";

std::string FormatCsv(const std::vector<ResultRow>& rows) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const ResultRow& r : rows) {
    out += r.constraint + "," + MethodName(r.method) + "," + std::to_string(r.n) +
           "," + FormatNumber(r.kappa) + "," + FormatNumber(r.epsilon) + "," +
           FormatNumber(r.alpha) + "," + FormatNumber(r.beta) + "," +
           std::to_string(r.trials) + "," + FormatNumber(r.empirical_mean) + "," +
           FormatNumber(r.empirical_std) + "," + FormatNumber(r.theoretical_bound) +
           "\n";
  }
  return out;
}

void EmitCsv(const std::vector<ResultRow>& rows, const std::string& path) {
  if (rows.empty()) throw Error(ErrorCode::kInvalidArgument, "no result rows to write");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path);
  out << FormatCsv(rows);
  out.close();
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

}  // namespace curvsub
