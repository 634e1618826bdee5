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

#ifndef CURVSUB_LP_H_
#define CURVSUB_LP_H_

#include <vector>

namespace curvsub {

// Dense linear program: maximize objective . x subject to
// rows[i] . x <= rhs[i] for all i, and x >= 0.
struct LinearProgram {
  explicit LinearProgram(int num_vars)
      : num_vars(num_vars), objective(num_vars, 0.0) {}

  void AddRow(std::vector<double> coeffs, double bound) {
    rows.push_back(std::move(coeffs));
    rhs.push_back(bound);
  }

  int num_vars;
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct LpResult {
  LpStatus status = LpStatus::kIterationLimit;
  std::vector<double> x;
  // One multiplier per row; zero for rows that are not tight.
  std::vector<double> duals;
  double objective = 0.0;
  int pivots = 0;
};

struct LpOptions {
  double pivot_tolerance = 1e-9;
  double optimality_tolerance = 1e-10;
  double feasibility_tolerance = 1e-9;
  // 0 selects 50 * (rows + vars) + 1000.
  int max_pivots = 0;
};

// Two-phase primal simplex on a dense dictionary. Dantzig pricing, falling
// back to Bland's rule after a run of degenerate pivots.
LpResult SolveLp(const LinearProgram& lp, const LpOptions& options = {});

struct LazyRowOptions {
  // Rows added per round, most violated first.
  int batch = 200;
  // A row counts as violated when row . x - rhs > tolerance * (1 + |rhs|).
  double tolerance = 1e-9;
  int max_rounds = 500;
  LpOptions lp;
};

// Solves lp by row generation: starts from the rows listed in `initial` and
// adds violated rows until the working solution satisfies every row. The
// caller must make sure the initial relaxation is bounded.
LpResult SolveLpLazily(const LinearProgram& lp, const std::vector<int>& initial,
                       const LazyRowOptions& options = {});

}  // namespace curvsub

#endif  // CURVSUB_LP_H_
