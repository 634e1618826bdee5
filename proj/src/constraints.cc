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

#include "curvsub/constraints.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "curvsub/errors.h"
#include "curvsub/oracle.h"

namespace curvsub {
namespace {

constexpr int kMaxCardinalityEnumeration = 20;
constexpr int kMaxGraphEnumeration = 16;

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int Find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool Union(int a, int b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<int> parent_;
};

// Nodes reachable from start using edges allowed by use(edge id).
std::vector<char> Reachable(const Graph& g, int start,
                            const std::function<bool(int)>& use) {
  std::vector<char> seen(g.node_count(), 0);
  std::deque<int> queue{start};
  seen[start] = 1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int e : g.incidence()[u]) {
      if (!use(e)) continue;
      const Edge& edge = g.edge(e);
      const int v = edge.u == u ? edge.v : edge.u;
      if (!seen[v]) {
        seen[v] = 1;
        queue.push_back(v);
      }
    }
  }
  return seen;
}

void RequireWeights(const ConstraintFamily& family, const std::vector<double>& w) {
  if (static_cast<int>(w.size()) != family.ground_size()) {
    throw Error(ErrorCode::kContractViolation, "weight vector length mismatch");
  }
  for (double v : w) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument, "weights must be finite and >= 0");
    }
  }
}

std::vector<int> DegreesIn(const Graph& g, const Subset& x) {
  std::vector<int> degree(g.node_count(), 0);
  x.ForEach([&](int e) {
    ++degree[g.edge(e).u];
    ++degree[g.edge(e).v];
  });
  return degree;
}

Subset SolveCardinality(int n, int k, const std::vector<double>& w) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return w[a] < w[b]; });
  Subset x(n);
  for (int i = 0; i < k; ++i) x.insert(order[i]);
  return x;
}

Subset SolveTree(const Graph& g, const std::vector<double>& w) {
  const int m = g.edge_count();
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return w[a] < w[b]; });
  DisjointSets sets(g.node_count());
  Subset x(m);
  int joined = 0;
  for (int e : order) {
    if (sets.Union(g.edge(e).u, g.edge(e).v)) {
      x.insert(e);
      ++joined;
    }
  }
  if (joined != g.node_count() - 1) {
    throw Error(ErrorCode::kInfeasible, "graph is disconnected; no spanning tree");
  }
  return x;
}

Subset SolvePath(const Graph& g, const std::vector<double>& w) {
  const int n = g.node_count();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, inf);
  std::vector<int> via(n, -1);
  std::vector<char> done(n, 0);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[g.source()] = 0.0;
  heap.emplace(0.0, g.source());
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = 1;
    for (int e : g.incidence()[u]) {
      const Edge& edge = g.edge(e);
      const int v = edge.u == u ? edge.v : edge.u;
      if (done[v]) continue;
      if (d + w[e] < dist[v]) {
        dist[v] = d + w[e];
        via[v] = e;
        heap.emplace(dist[v], v);
      }
    }
  }
  if (!done[g.sink()]) {
    throw Error(ErrorCode::kInfeasible, "sink unreachable from source");
  }
  Subset x(g.edge_count());
  for (int v = g.sink(); v != g.source();) {
    const int e = via[v];
    x.insert(e);
    v = g.edge(e).u == v ? g.edge(e).v : g.edge(e).u;
  }
  return x;
}

Subset SolveCut(const Graph& g, const std::vector<double>& w) {
  const int m = g.edge_count();
  const int n = g.node_count();
  const auto all = [](int) { return true; };
  if (!Reachable(g, g.source(), all)[g.sink()]) return Subset(m);

  const double top = m ? *std::max_element(w.begin(), w.end()) : 0.0;
  const double scale = top > 0.0 ? 1e9 / top : 0.0;
  // Arc 2e runs u->v, arc 2e+1 runs v->u; each is the other's reverse.
  std::vector<int64_t> residual(2 * m);
  for (int e = 0; e < m; ++e) {
    residual[2 * e] = residual[2 * e + 1] = std::llround(w[e] * scale);
  }
  auto head = [&](int arc) {
    const Edge& edge = g.edge(arc / 2);
    return arc % 2 == 0 ? edge.v : edge.u;
  };
  while (true) {
    std::vector<int> via(n, -1);
    std::vector<char> seen(n, 0);
    std::deque<int> queue{g.source()};
    seen[g.source()] = 1;
    while (!queue.empty() && !seen[g.sink()]) {
      const int u = queue.front();
      queue.pop_front();
      for (int e : g.incidence()[u]) {
        const int arc = g.edge(e).u == u ? 2 * e : 2 * e + 1;
        const int v = head(arc);
        if (seen[v] || residual[arc] <= 0) continue;
        seen[v] = 1;
        via[v] = arc;
        queue.push_back(v);
      }
    }
    if (!seen[g.sink()]) {
      Subset cut(m);
      for (int e = 0; e < m; ++e) {
        if (seen[g.edge(e).u] != seen[g.edge(e).v]) cut.insert(e);
      }
      return cut;
    }
    int64_t push = std::numeric_limits<int64_t>::max();
    for (int v = g.sink(); v != g.source(); v = head(via[v] ^ 1)) {
      push = std::min(push, residual[via[v]]);
    }
    for (int v = g.sink(); v != g.source(); v = head(via[v] ^ 1)) {
      residual[via[v]] -= push;
      residual[via[v] ^ 1] += push;
    }
  }
}

// Calls visit(mask) for each perfect matching, built by matching the lowest
// free node first.
void ForEachPerfectMatching(const Graph& g,
                            const std::function<void(const Subset&)>& visit) {
  std::vector<char> matched(g.node_count(), 0);
  Subset current(g.edge_count());
  std::function<void()> recurse = [&]() {
    int u = 0;
    while (u < g.node_count() && matched[u]) ++u;
    if (u == g.node_count()) {
      visit(current);
      return;
    }
    matched[u] = 1;
    for (int e : g.incidence()[u]) {
      const Edge& edge = g.edge(e);
      const int v = edge.u == u ? edge.v : edge.u;
      if (matched[v]) continue;
      matched[v] = 1;
      current.insert(e);
      recurse();
      current.erase(e);
      matched[v] = 0;
    }
    matched[u] = 0;
  };
  recurse();
}

Subset SolveMatching(const Graph& g, const std::vector<double>& w) {
  RequireEnumerable(g.edge_count(), kMaxGraphEnumeration, "perfect matching");
  std::optional<Subset> best;
  double best_value = 0.0;
  ForEachPerfectMatching(g, [&](const Subset& x) {
    const double value = ModularValue(w, x);
    if (!best || value < best_value - 1e-12) {
      best = x;
      best_value = value;
    } else if (value <= best_value + 1e-12 && MaskLess(x, *best)) {
      best = x;
      best_value = std::min(best_value, value);
    }
  });
  if (!best) throw Error(ErrorCode::kInfeasible, "graph has no perfect matching");
  return *best;
}

}  // namespace

std::string FamilyName(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::kCardinalityLB: return "cardinality";
    case FamilyKind::kSpanningTree: return "tree";
    case FamilyKind::kSTPath: return "path";
    case FamilyKind::kSTCut: return "cut";
    case FamilyKind::kPerfectMatching: return "matching";
  }
  return "unknown";
}

ConstraintFamily::ConstraintFamily(FamilyKind kind, int ground_size, int k,
                                   std::optional<Graph> graph)
    : kind_(kind), ground_size_(ground_size), k_(k), graph_(std::move(graph)) {}

ConstraintFamily ConstraintFamily::CardinalityLB(int n, int k) {
  if (n < 1 || n > kMaxElements) {
    throw Error(ErrorCode::kInvalidArgument, "ground set size out of range");
  }
  if (k < 1 || k > n) {
    throw Error(ErrorCode::kInvalidArgument,
                "cardinality bound k=" + std::to_string(k) + " outside [1, n]");
  }
  return ConstraintFamily(FamilyKind::kCardinalityLB, n, k, std::nullopt);
}

ConstraintFamily ConstraintFamily::SpanningTree(Graph graph) {
  const int m = graph.edge_count();
  return ConstraintFamily(FamilyKind::kSpanningTree, m, 0, std::move(graph));
}

ConstraintFamily ConstraintFamily::STPath(Graph graph) {
  if (graph.source() == graph.sink()) {
    throw Error(ErrorCode::kInvalidArgument, "s-t path needs s != t");
  }
  const int m = graph.edge_count();
  return ConstraintFamily(FamilyKind::kSTPath, m, 0, std::move(graph));
}

ConstraintFamily ConstraintFamily::STCut(Graph graph) {
  if (graph.source() == graph.sink()) {
    throw Error(ErrorCode::kInvalidArgument, "s-t cut needs s != t");
  }
  const int m = graph.edge_count();
  return ConstraintFamily(FamilyKind::kSTCut, m, 0, std::move(graph));
}

ConstraintFamily ConstraintFamily::PerfectMatching(Graph graph) {
  if (graph.node_count() % 2 != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "perfect matching needs an even node count");
  }
  const int m = graph.edge_count();
  return ConstraintFamily(FamilyKind::kPerfectMatching, m, 0, std::move(graph));
}

const Graph& ConstraintFamily::graph() const {
  if (!graph_) {
    throw Error(ErrorCode::kContractViolation, "cardinality family has no graph");
  }
  return *graph_;
}

bool MaskLess(const Subset& a, const Subset& b) {
  for (int j = std::max(a.n(), b.n()) - 1; j >= 0; --j) {
    const bool in_a = j < a.n() && a.contains(j);
    const bool in_b = j < b.n() && b.contains(j);
    if (in_a != in_b) return in_b;
  }
  return false;
}

bool IsFeasible(const ConstraintFamily& family, const Subset& x) {
  if (x.n() != family.ground_size()) {
    throw Error(ErrorCode::kContractViolation, "subset dimension mismatch");
  }
  if (family.kind() == FamilyKind::kCardinalityLB) return x.size() >= family.k();

  const Graph& g = family.graph();
  switch (family.kind()) {
    case FamilyKind::kSpanningTree: {
      if (x.size() != g.node_count() - 1) return false;
      DisjointSets sets(g.node_count());
      bool acyclic = true;
      x.ForEach([&](int e) { acyclic &= sets.Union(g.edge(e).u, g.edge(e).v); });
      return acyclic;
    }
    case FamilyKind::kSTPath: {
      if (x.empty()) return false;
      const std::vector<int> degree = DegreesIn(g, x);
      for (int v = 0; v < g.node_count(); ++v) {
        const bool terminal = v == g.source() || v == g.sink();
        if (terminal ? degree[v] != 1 : (degree[v] != 0 && degree[v] != 2)) {
          return false;
        }
      }
      // Degrees rule out branching; a path plus disjoint cycles remains, so
      // require every chosen edge to be reachable from s inside X.
      const std::vector<char> seen =
          Reachable(g, g.source(), [&](int e) { return x.contains(e); });
      bool connected = true;
      x.ForEach([&](int e) { connected &= seen[g.edge(e).u] != 0; });
      return connected && seen[g.sink()];
    }
    case FamilyKind::kSTCut:
      return !Reachable(g, g.source(), [&](int e) { return !x.contains(e); })
                  [g.sink()];
    case FamilyKind::kPerfectMatching: {
      const std::vector<int> degree = DegreesIn(g, x);
      return std::all_of(degree.begin(), degree.end(),
                         [](int d) { return d == 1; });
    }
    case FamilyKind::kCardinalityLB:
      break;
  }
  return false;
}

Subset SolveModular(const ConstraintFamily& family, const std::vector<double>& w) {
  RequireWeights(family, w);
  switch (family.kind()) {
    case FamilyKind::kCardinalityLB:
      return SolveCardinality(family.ground_size(), family.k(), w);
    case FamilyKind::kSpanningTree:
      return SolveTree(family.graph(), w);
    case FamilyKind::kSTPath:
      return SolvePath(family.graph(), w);
    case FamilyKind::kSTCut:
      return SolveCut(family.graph(), w);
    case FamilyKind::kPerfectMatching:
      return SolveMatching(family.graph(), w);
  }
  throw Error(ErrorCode::kInternal, "unknown constraint family");
}

std::vector<uint64_t> FeasibleMasks(const ConstraintFamily& family) {
  const int n = family.ground_size();
  RequireEnumerable(n,
                    family.kind() == FamilyKind::kCardinalityLB
                        ? kMaxCardinalityEnumeration
                        : kMaxGraphEnumeration,
                    "feasible-set enumeration");
  std::vector<uint64_t> masks;
  if (family.kind() == FamilyKind::kCardinalityLB) {
    ForEachMask(n, [&](uint64_t mask) {
      if (std::popcount(mask) >= family.k()) masks.push_back(mask);
    });
    return masks;
  }
  ForEachMask(n, [&](uint64_t mask) {
    if (IsFeasible(family, Subset::FromMask(n, mask))) masks.push_back(mask);
  });
  return masks;
}

}  // namespace curvsub
