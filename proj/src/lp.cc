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

#include "curvsub/lp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "curvsub/errors.h"

namespace curvsub {
namespace {

// Dictionary: basic[i] = rhs[i] + sum_j tab[i][j] * nonbasic[j];
// z = z0 + sum_j cost[j] * nonbasic[j].
class Dictionary {
 public:
  Dictionary(const LinearProgram& lp, bool with_aux)
      : rows_(static_cast<int>(lp.rows.size())),
        cols_(lp.num_vars + (with_aux ? 1 : 0)),
        tab_(static_cast<size_t>(rows_) * cols_, 0.0),
        rhs_(lp.rhs),
        cost_(cols_, 0.0),
        basic_(rows_),
        nonbasic_(cols_) {
    for (int i = 0; i < rows_; ++i) {
      basic_[i] = lp.num_vars + i;
      for (int j = 0; j < lp.num_vars; ++j) at(i, j) = -lp.rows[i][j];
      if (with_aux) at(i, cols_ - 1) = 1.0;
    }
    for (int j = 0; j < cols_; ++j) nonbasic_[j] = j;
    if (with_aux) nonbasic_[cols_ - 1] = kAux;
  }

  static constexpr int kAux = std::numeric_limits<int>::max();

  double& at(int i, int j) { return tab_[static_cast<size_t>(i) * cols_ + j]; }
  double at(int i, int j) const {
    return tab_[static_cast<size_t>(i) * cols_ + j];
  }

  void Pivot(int r, int e) {
    const double p = at(r, e);
    double* row_r = &tab_[static_cast<size_t>(r) * cols_];
    const double new_rhs = -rhs_[r] / p;
    for (int k = 0; k < cols_; ++k) row_r[k] = -row_r[k] / p;
    row_r[e] = 1.0 / p;
    rhs_[r] = new_rhs;
    for (int i = 0; i < rows_; ++i) {
      if (i == r) continue;
      double* row_i = &tab_[static_cast<size_t>(i) * cols_];
      const double coef = row_i[e];
      if (coef == 0.0) continue;
      row_i[e] = 0.0;
      for (int k = 0; k < cols_; ++k) row_i[k] += coef * row_r[k];
      rhs_[i] += coef * new_rhs;
      if (rhs_[i] < 0.0 && rhs_[i] > -1e-11) rhs_[i] = 0.0;
    }
    const double c = cost_[e];
    if (c != 0.0) {
      cost_[e] = 0.0;
      for (int k = 0; k < cols_; ++k) cost_[k] += c * row_r[k];
      z0_ += c * new_rhs;
    }
    std::swap(basic_[r], nonbasic_[e]);
  }

  // Runs simplex iterations on the current cost row.
  LpStatus Optimize(const LpOptions& opt, int& pivots, int max_pivots) {
    int degenerate_run = 0;
    while (true) {
      const bool bland = degenerate_run > 50;
      int enter = -1;
      double best = opt.optimality_tolerance;
      for (int j = 0; j < cols_; ++j) {
        if (cost_[j] <= opt.optimality_tolerance) continue;
        if (bland) {
          if (enter < 0 || nonbasic_[j] < nonbasic_[enter]) enter = j;
        } else if (cost_[j] > best) {
          best = cost_[j];
          enter = j;
        }
      }
      if (enter < 0) return LpStatus::kOptimal;

      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      double best_mag = 0.0;
      for (int i = 0; i < rows_; ++i) {
        const double a = at(i, enter);
        if (a >= -opt.pivot_tolerance) continue;
        const double ratio = std::max(rhs_[i], 0.0) / -a;
        const bool tie = std::abs(ratio - best_ratio) <= 1e-12 * (1.0 + best_ratio);
        if (leave < 0 || (ratio < best_ratio && !tie)) {
          leave = i;
          best_ratio = ratio;
          best_mag = -a;
        } else if (tie) {
          const bool better = bland ? basic_[i] < basic_[leave] : -a > best_mag;
          if (better) {
            leave = i;
            best_ratio = std::min(best_ratio, ratio);
            best_mag = -a;
          }
        }
      }
      if (leave < 0) return LpStatus::kUnbounded;
      degenerate_run = best_ratio <= 1e-12 ? degenerate_run + 1 : 0;
      Pivot(leave, enter);
      if (++pivots >= max_pivots) return LpStatus::kIterationLimit;
    }
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double rhs(int i) const { return rhs_[i]; }
  double z0() const { return z0_; }
  int basic(int i) const { return basic_[i]; }
  int nonbasic(int j) const { return nonbasic_[j]; }
  std::vector<double>& cost() { return cost_; }
  void set_z0(double z) { z0_ = z; }
  void ClampRhs(int i) { rhs_[i] = std::max(rhs_[i], 0.0); }

  // Drops column e (must be nonbasic).
  void DropColumn(int e) {
    std::vector<double> next(static_cast<size_t>(rows_) * (cols_ - 1));
    for (int i = 0; i < rows_; ++i) {
      int k2 = 0;
      for (int k = 0; k < cols_; ++k) {
        if (k == e) continue;
        next[static_cast<size_t>(i) * (cols_ - 1) + k2++] = at(i, k);
      }
    }
    tab_ = std::move(next);
    nonbasic_.erase(nonbasic_.begin() + e);
    cost_.erase(cost_.begin() + e);
    --cols_;
  }

 private:
  int rows_;
  int cols_;
  std::vector<double> tab_;
  std::vector<double> rhs_;
  std::vector<double> cost_;
  double z0_ = 0.0;
  std::vector<int> basic_;
  std::vector<int> nonbasic_;
};

LpResult SolvePrimal(const LinearProgram& lp, const LpOptions& options) {
  for (const auto& row : lp.rows) {
    if (static_cast<int>(row.size()) != lp.num_vars) {
      throw Error(ErrorCode::kContractViolation, "LP row width != num_vars");
    }
  }
  LpResult result;
  const int m = static_cast<int>(lp.rows.size());
  const int max_pivots =
      options.max_pivots > 0 ? options.max_pivots : 50 * (m + lp.num_vars) + 1000;

  int most_negative = -1;
  for (int i = 0; i < m; ++i) {
    if (lp.rhs[i] < -options.feasibility_tolerance &&
        (most_negative < 0 || lp.rhs[i] < lp.rhs[most_negative])) {
      most_negative = i;
    }
  }
  const bool phase_one = most_negative >= 0;
  Dictionary dict(lp, phase_one);
  if (!phase_one) {
    for (int i = 0; i < m; ++i) {
      // Tiny negatives within tolerance are treated as zero.
      dict.ClampRhs(i);
    }
  }

  if (phase_one) {
    const int aux_col = dict.cols() - 1;
    dict.cost()[aux_col] = -1.0;
    dict.Pivot(most_negative, aux_col);
    const LpStatus st = dict.Optimize(options, result.pivots, max_pivots);
    if (st == LpStatus::kIterationLimit) {
      result.status = st;
      return result;
    }
    if (dict.z0() < -options.feasibility_tolerance * (1.0 + std::abs(lp.rhs[most_negative]))) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
    // Move the auxiliary variable out of the basis, then drop its column.
    for (int i = 0; i < dict.rows(); ++i) {
      if (dict.basic(i) != Dictionary::kAux) continue;
      int best = -1;
      for (int j = 0; j < dict.cols(); ++j) {
        if (best < 0 || std::abs(dict.at(i, j)) > std::abs(dict.at(i, best))) {
          best = j;
        }
      }
      dict.Pivot(i, best);
      break;
    }
    for (int j = 0; j < dict.cols(); ++j) {
      if (dict.nonbasic(j) == Dictionary::kAux) {
        dict.DropColumn(j);
        break;
      }
    }
    // Re-express the real objective over the current nonbasic variables.
    std::vector<double>& cost = dict.cost();
    std::fill(cost.begin(), cost.end(), 0.0);
    double z0 = 0.0;
    for (int j = 0; j < dict.cols(); ++j) {
      const int label = dict.nonbasic(j);
      if (label < lp.num_vars) cost[j] += lp.objective[label];
    }
    for (int i = 0; i < dict.rows(); ++i) {
      const int label = dict.basic(i);
      if (label >= lp.num_vars) continue;
      const double c = lp.objective[label];
      if (c == 0.0) continue;
      z0 += c * dict.rhs(i);
      for (int j = 0; j < dict.cols(); ++j) cost[j] += c * dict.at(i, j);
    }
    dict.set_z0(z0);
  } else {
    for (int j = 0; j < lp.num_vars; ++j) dict.cost()[j] = lp.objective[j];
  }

  result.status = dict.Optimize(options, result.pivots, max_pivots);
  result.x.assign(lp.num_vars, 0.0);
  for (int i = 0; i < dict.rows(); ++i) {
    const int label = dict.basic(i);
    if (label < lp.num_vars) result.x[label] = std::max(0.0, dict.rhs(i));
  }
  result.objective = 0.0;
  for (int j = 0; j < lp.num_vars; ++j) {
    result.objective += lp.objective[j] * result.x[j];
  }
  // Row duals: minus the cost of each nonbasic slack.
  result.duals.assign(m, 0.0);
  for (int j = 0; j < dict.cols(); ++j) {
    const int label = dict.nonbasic(j);
    if (label >= lp.num_vars && label < lp.num_vars + m) {
      result.duals[label - lp.num_vars] = std::max(0.0, -dict.cost()[j]);
    }
  }
  return result;
}

// max c.x, Ax <= b, x >= 0 through its dual max -b.y, -A^T y <= -c, y >= 0.
// Tall problems have far fewer dual rows, so pivots are cheaper and fewer.
std::optional<LpResult> SolveThroughDual(const LinearProgram& lp,
                                         const LpOptions& options) {
  const int m = static_cast<int>(lp.rows.size());
  LinearProgram dual(m);
  for (int i = 0; i < m; ++i) dual.objective[i] = -lp.rhs[i];
  for (int j = 0; j < lp.num_vars; ++j) {
    std::vector<double> row(m);
    for (int i = 0; i < m; ++i) row[i] = -lp.rows[i][j];
    dual.AddRow(std::move(row), -lp.objective[j]);
  }
  const LpResult solved = SolvePrimal(dual, options);
  LpResult result;
  result.pivots = solved.pivots;
  if (solved.status == LpStatus::kUnbounded) {
    result.status = LpStatus::kInfeasible;
    return result;
  }
  if (solved.status != LpStatus::kOptimal) return std::nullopt;
  result.status = LpStatus::kOptimal;
  result.x = solved.duals;
  result.duals = solved.x;
  result.objective = 0.0;
  for (int j = 0; j < lp.num_vars; ++j) {
    result.objective += lp.objective[j] * result.x[j];
  }
  return result;
}

}  // namespace

LpResult SolveLp(const LinearProgram& lp, const LpOptions& options) {
  for (const auto& row : lp.rows) {
    if (static_cast<int>(row.size()) != lp.num_vars) {
      throw Error(ErrorCode::kContractViolation, "LP row width != num_vars");
    }
  }
  if (static_cast<int>(lp.rows.size()) > 2 * lp.num_vars) {
    if (auto result = SolveThroughDual(lp, options)) return *result;
  }
  return SolvePrimal(lp, options);
}

LpResult SolveLpLazily(const LinearProgram& lp, const std::vector<int>& initial,
                       const LazyRowOptions& options) {
  const int m = static_cast<int>(lp.rows.size());
  std::vector<char> active(m, 0);
  for (int i : initial) active[i] = 1;

  LpResult result;
  for (int round = 0; round < options.max_rounds; ++round) {
    LinearProgram sub(lp.num_vars);
    sub.objective = lp.objective;
    for (int i = 0; i < m; ++i) {
      if (active[i]) sub.AddRow(lp.rows[i], lp.rhs[i]);
    }
    result = SolveLp(sub, options.lp);
    if (result.status != LpStatus::kOptimal) return result;

    std::vector<std::pair<double, int>> violated;
    for (int i = 0; i < m; ++i) {
      if (active[i]) continue;
      const double lhs = std::inner_product(lp.rows[i].begin(), lp.rows[i].end(),
                                            result.x.begin(), 0.0);
      const double excess = lhs - lp.rhs[i];
      if (excess > options.tolerance * (1.0 + std::abs(lp.rhs[i]))) {
        violated.emplace_back(excess / (1.0 + std::abs(lp.rhs[i])), i);
      }
    }
    if (violated.empty()) return result;
    const size_t take = std::min<size_t>(violated.size(), options.batch);
    std::partial_sort(violated.begin(), violated.begin() + take, violated.end(),
                      [](const auto& a, const auto& b) {
                        return a.first > b.first ||
                               (a.first == b.first && a.second < b.second);
                      });
    for (size_t k = 0; k < take; ++k) active[violated[k].second] = 1;
  }
  result.status = LpStatus::kIterationLimit;
  return result;
}

}  // namespace curvsub
