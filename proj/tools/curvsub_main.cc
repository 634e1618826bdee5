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

// Command-line front end: curvature, approx, minimize, learn, experiment.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "curvsub/approx.h"
#include "curvsub/constraints.h"
#include "curvsub/curvature.h"
#include "curvsub/errors.h"
#include "curvsub/experiments.h"
#include "curvsub/function_parser.h"
#include "curvsub/graph.h"
#include "curvsub/minimize.h"
#include "curvsub/pmac.h"

namespace {

using namespace curvsub;

std::string Num(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.10g", v);
  return buffer;
}

void Print(const std::string& key, const std::string& value) {
  std::cout << key << "=" << value << "\n";
}

// "exhaustive" or "sampled:<count>".
ScanOptions ParseScanMode(const std::string& text, uint64_t seed) {
  ScanOptions options;
  options.seed = seed;
  if (text == "exhaustive") return options;
  const std::string prefix = "sampled:";
  if (text.rfind(prefix, 0) == 0) {
    options.mode = ScanMode::kSampled;
    try {
      options.sample_count = std::stoi(text.substr(prefix.size()));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, "bad sample count in " + text);
    }
    if (options.sample_count < 0) {
      throw Error(ErrorCode::kInvalidArgument, "sample count must be >= 0");
    }
    return options;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "mode must be exhaustive or sampled:<count>, got " + text);
}

int RunCurvature(const std::string& function) {
  const ValueOracle f = ParseFunctionSpec(function);
  QuerySession session;
  const CurvatureReport report = TotalCurvature(f, session);
  Print("kappa", Num(report.total));
  Print("argmin", std::to_string(report.argmin_element));
  Print("queries", std::to_string(report.queries_used));
  return 0;
}

int RunApprox(const std::string& function, const std::string& method,
              const std::string& mode, uint64_t seed) {
  const ValueOracle f = ParseFunctionSpec(function);
  const ScanOptions scan = ParseScanMode(mode, seed);
  if (method == "mub") {
    const ValueOracle upper = ModularUpperBound(f);
    const FactorReport report = ApproximationFactor(
        f, [&](const Subset& x) { return upper.Evaluate(x); }, Direction::kUpper,
        scan);
    QuerySession session;
    const double hat = report.witness.empty()
                           ? 0.0
                           : HatCurvature(f, report.witness, session);
    Print("modular_bound", Num(ModularBoundFactor(report.witness.size(), hat)));
    Print("worst_ratio", Num(report.worst_ratio));
    Print("witness", report.witness.ToHex());
    return 0;
  }
  if (method == "ea") {
    const DecomposedFunction decomposed = CurveNormalize(f);
    const SqrtModularFit fit = FitSqrtModular(decomposed.normalized, scan);
    const CorrectedSurrogate surrogate =
        CorrectedSurrogate::FromSqrtFit(decomposed, fit);
    const FactorReport report = ApproximationFactor(
        f, [&](const Subset& x) { return surrogate.Evaluate(x); },
        Direction::kLower, scan);
    Print("kappa", Num(decomposed.kappa));
    Print("gamma", Num(fit.gamma));
    Print("claimed_factor", Num(surrogate.factor()));
    Print("worst_ratio", Num(report.worst_ratio));
    Print("witness", report.witness.ToHex());
    Print("mode", fit.mode == ScanMode::kExhaustive
                      ? "exhaustive"
                      : "sampled:" + std::to_string(fit.sample_count));
    return 0;
  }
  throw Error(ErrorCode::kInvalidArgument, "method must be mub or ea");
}

ConstraintFamily BuildConstraint(const std::string& constraint,
                                 const std::string& graph_path, int n,
                                 std::optional<int> source, std::optional<int> sink) {
  if (constraint.rfind("card:", 0) == 0) {
    int k = 0;
    try {
      k = std::stoi(constraint.substr(5));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, "bad cardinality bound: " + constraint);
    }
    return ConstraintFamily::CardinalityLB(n, k);
  }
  if (graph_path.empty()) {
    throw Error(ErrorCode::kInvalidArgument, constraint + " needs --graph");
  }
  Graph graph = ReadGraphFile(graph_path);
  if (source || sink) {
    graph.set_terminals(source.value_or(graph.source()), sink.value_or(graph.sink()));
  }
  if (constraint == "tree") return ConstraintFamily::SpanningTree(std::move(graph));
  if (constraint == "path") return ConstraintFamily::STPath(std::move(graph));
  if (constraint == "cut") return ConstraintFamily::STCut(std::move(graph));
  if (constraint == "matching") {
    return ConstraintFamily::PerfectMatching(std::move(graph));
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown constraint: " + constraint);
}

int RunMinimize(const std::string& constraint, const std::string& graph_path,
                const std::string& function, const std::string& method,
                const std::string& mode, uint64_t seed, std::optional<int> source,
                std::optional<int> sink) {
  std::optional<int> default_n;
  if (constraint.rfind("card:", 0) != 0 && !graph_path.empty()) {
    default_n = ReadGraphFile(graph_path).edge_count();
  }
  const ValueOracle f = ParseFunctionSpec(function, default_n);
  const ConstraintFamily family =
      BuildConstraint(constraint, graph_path, f.n(), source, sink);
  QuerySession session;
  SolveResult result;
  if (method == "mub") {
    result = MinimizeMub(f, family, session);
  } else if (method == "ea") {
    ScanOptions scan = mode.empty() ? ScanOptions{} : ParseScanMode(mode, seed);
    if (mode.empty() && f.n() > kDefaultTableLimit) {
      scan.mode = ScanMode::kSampled;
      scan.seed = seed;
    }
    result = MinimizeEa(f, family, scan, session);
  } else if (method == "brute") {
    result = BruteForceMin(f, family);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "method must be mub, ea or brute");
  }
  Print("solution", result.solution.ToHex());
  Print("elements", result.solution.ToString());
  Print("value", Num(result.true_value));
  Print("surrogate", Num(result.surrogate_value));
  Print("bound", Num(result.bound));
  Print("feasible", result.feasible ? "true" : "false");
  Print("queries", std::to_string(session.count()));
  return 0;
}

int RunLearn(const std::string& function, const std::string& dist, int m,
             const std::string& mode, std::optional<double> kappa_upper,
             int test_count, uint64_t seed, const std::string& dump_path) {
  const ValueOracle f = ParseFunctionSpec(function);
  const Distribution distribution = Distribution::Parse(dist);
  const Dataset dataset = SampleDataset(f, distribution, m, seed);
  QuerySession session;
  const std::vector<double> singletons = SingletonVector(f, session);
  const double kappa =
      kappa_upper ? *kappa_upper : TotalCurvature(f, session).total;
  LearnedModel model;
  if (mode == "curvature") {
    model = PmacLearnCurvature(dataset, singletons, kappa);
  } else if (mode == "direct") {
    model = PmacLearnDirect(dataset, [kappa](int) { return kappa; });
  } else {
    throw Error(ErrorCode::kInvalidArgument, "mode must be curvature or direct");
  }
  const PmacReport report = EvaluatePmac(f, model, distribution, test_count,
                                         DeriveSeed(seed, 1));
  int support = 0;
  for (double w : model.w) support += w > 0.0 ? 1 : 0;
  Print("success_fraction", Num(report.success_fraction));
  Print("factor", Num(report.factor));
  Print("kappa_used", Num(kappa));
  Print("model_z", Num(model.z));
  Print("model_support", std::to_string(support));
  Print("zero_set", model.zero_set.ToHex());
  if (!dump_path.empty()) WriteModel(model, dump_path);
  return 0;
}

int RunExperimentCommand(const std::string& config_path, const std::string& out) {
  const ExperimentConfig config = ReadExperimentConfig(config_path);
  const std::vector<ResultRow> rows = RunExperiment(config);
  EmitCsv(rows, out);
  int failures = 0;
  for (const ResultRow& row : rows) {
    if (!row.error.empty()) {
      ++failures;
      std::cerr << "cell n=" << row.n << " kappa=" << row.kappa
                << " method=" << MethodName(row.method) << ": " << row.error << "\n";
    }
  }
  Print("rows", std::to_string(rows.size()));
  Print("failed_cells", std::to_string(failures));
  return failures ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature-aware submodular minimization and learning"};
  app.require_subcommand(1);

  std::string function;
  std::string mode;
  uint64_t seed = 0;

  auto* curvature = app.add_subcommand("curvature", "Total curvature of a function");
  curvature->add_option("--function", function, "Function spec")->required();

  auto* approx = app.add_subcommand("approx", "Approximation factor of a surrogate");
  approx->add_option("--function", function, "Function spec")->required();
  std::string approx_method = "mub";
  approx->add_option("--method", approx_method, "mub|ea");
  std::string approx_mode = "exhaustive";
  approx->add_option("--mode", approx_mode, "exhaustive|sampled:<count>");
  approx->add_option("--seed", seed, "Sampling seed");

  auto* minimize = app.add_subcommand("minimize", "Constrained minimization");
  std::string constraint;
  std::string graph_path;
  std::optional<int> source;
  std::optional<int> sink;
  minimize->add_option("--constraint", constraint, "card:<k>|tree|path|cut|matching")
      ->required();
  minimize->add_option("--graph", graph_path, "Edge-list file");
  minimize->add_option("--function", function, "Function spec")->required();
  std::string minimize_method = "mub";
  minimize->add_option("--method", minimize_method, "mub|ea|brute");
  minimize->add_option("--mode", mode, "EA fit: exhaustive|sampled:<count>");
  minimize->add_option("--seed", seed, "Sampling seed");
  minimize->add_option("--source", source, "Source node (default 0)");
  minimize->add_option("--sink", sink, "Sink node (default n-1)");

  auto* learn = app.add_subcommand("learn", "PMAC learning from samples");
  learn->add_option("--function", function, "Function spec")->required();
  std::string dist = "uniform";
  learn->add_option("--dist", dist, "uniform|product:<p>");
  int m = 1000;
  learn->add_option("--m", m, "Training samples");
  std::string learn_mode = "curvature";
  learn->add_option("--mode", learn_mode, "curvature|direct");
  std::optional<double> kappa_upper;
  learn->add_option("--kappa-upper", kappa_upper,
                    "Curvature upper bound (default: measured)");
  int test_count = 1000;
  learn->add_option("--test", test_count, "Test draws");
  learn->add_option("--seed", seed, "Seed");
  std::string dump_path;
  learn->add_option("--dump-model", dump_path, "Write z and weights to a file");

  auto* experiment = app.add_subcommand("experiment", "Run an experiment grid");
  std::string config_path;
  std::string out_path;
  experiment->add_option("--config", config_path, "key=value config file")->required();
  experiment->add_option("--out", out_path, "CSV output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*curvature) return RunCurvature(function);
    if (*approx) return RunApprox(function, approx_method, approx_mode, seed);
    if (*minimize) {
      return RunMinimize(constraint, graph_path, function, minimize_method, mode, seed,
                         source, sink);
    }
    if (*learn) {
      return RunLearn(function, dist, m, learn_mode, kappa_upper, test_count, seed,
                      dump_path);
    }
    if (*experiment) return RunExperimentCommand(config_path, out_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
