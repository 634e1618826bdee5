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

#include "curvsub/graph.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "curvsub/errors.h"

namespace curvsub {

Graph::Graph(int node_count, std::vector<Edge> edges)
    : node_count_(node_count),
      edges_(std::move(edges)),
      incidence_(node_count > 0 ? node_count : 0),
      source_(0),
      sink_(node_count - 1) {
  if (node_count < 1) {
    throw Error(ErrorCode::kInvalidArgument, "graph needs at least one node");
  }
  for (int id = 0; id < edge_count(); ++id) {
    const Edge& e = edges_[id];
    if (e.u < 0 || e.u >= node_count || e.v < 0 || e.v >= node_count) {
      throw Error(ErrorCode::kInvalidArgument,
                  "edge " + std::to_string(id) + " has endpoint out of range");
    }
    if (e.u == e.v) {
      throw Error(ErrorCode::kInvalidArgument,
                  "edge " + std::to_string(id) + " is a self-loop");
    }
    incidence_[e.u].push_back(id);
    incidence_[e.v].push_back(id);
  }
}

void Graph::set_terminals(int s, int t) {
  if (s < 0 || s >= node_count_ || t < 0 || t >= node_count_) {
    throw Error(ErrorCode::kInvalidArgument, "terminal out of range");
  }
  source_ = s;
  sink_ = t;
}

Graph ParseGraph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw Error(ErrorCode::kParse,
                "line " + std::to_string(line_no) + ": " + msg);
  };
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      const size_t first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  };

  if (!next_line()) {
    line_no = std::max(line_no, 1);
    fail("missing header 'n m'");
  }
  long long n = 0, m = 0;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> n >> m) || (header >> extra)) fail("expected 'n m'");
    if (n < 1) fail("node count must be positive");
    if (m < 0) fail("edge count must be nonnegative");
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_line()) {
      ++line_no;
      fail("expected " + std::to_string(m) + " edges, got " + std::to_string(i));
    }
    std::istringstream row(line);
    long long u, v;
    std::string extra;
    if (!(row >> u >> v) || (row >> extra)) fail("expected 'u v'");
    if (u < 0 || u >= n || v < 0 || v >= n) fail("endpoint out of range");
    if (u == v) fail("self-loop");
    edges.push_back(Edge{static_cast<int>(u), static_cast<int>(v)});
  }
  if (next_line()) fail("trailing content after edge list");
  return Graph(static_cast<int>(n), std::move(edges));
}

Graph ReadGraphFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open graph file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseGraph(buffer.str());
}

}  // namespace curvsub
