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

#ifndef CURVSUB_GRAPH_H_
#define CURVSUB_GRAPH_H_

#include <string>
#include <vector>

namespace curvsub {

struct Edge {
  int u;
  int v;
};

// Undirected graph whose edge ids 0..m-1 form the ground set of edge-based
// problems. s and t default to 0 and node_count - 1.
class Graph {
 public:
  Graph(int node_count, std::vector<Edge> edges);

  int node_count() const { return node_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int id) const { return edges_[id]; }

  int source() const { return source_; }
  int sink() const { return sink_; }
  void set_terminals(int s, int t);

  // Edge ids incident to each node, in increasing order.
  const std::vector<std::vector<int>>& incidence() const { return incidence_; }

 private:
  int node_count_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> incidence_;
  int source_;
  int sink_;
};

// Edge-list text: "n m" then m lines "u v" (0-based). Blank lines and lines
// starting with '#' are ignored. Errors carry the 1-based line number.
Graph ParseGraph(const std::string& text);
Graph ReadGraphFile(const std::string& path);

}  // namespace curvsub

#endif  // CURVSUB_GRAPH_H_
