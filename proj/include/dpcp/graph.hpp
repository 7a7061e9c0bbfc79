// Copyright 2026 The dpcp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dpcp/errors.hpp"

namespace dpcp {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

/// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
class Graph {
 public:
  /// Builds from an edge list. Rejects self-loops, duplicate edges and
  /// out-of-range ids. With `require_connected` the connectivity promise is
  /// checked here.
  Graph(std::size_t n, const std::vector<Edge>& edges, bool require_connected = true)
      : adj_(n) {
    if (n == 0) throw FormatError("graph needs at least one vertex");
    for (auto [u, v] : edges) {
      if (u >= n || v >= n) throw FormatError("edge endpoint out of range");
      if (u == v) throw FormatError("self-loop at vertex " + std::to_string(u));
      adj_[u].push_back(v);
      adj_[v].push_back(u);
    }
    for (auto& a : adj_) {
      std::sort(a.begin(), a.end());
      if (std::adjacent_find(a.begin(), a.end()) != a.end()) {
        throw FormatError("duplicate edge");
      }
    }
    edge_count_ = edges.size();
    if (require_connected && !is_connected()) {
      throw FormatError("graph violates the connectivity promise");
    }
  }

  std::size_t size() const { return adj_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  /// Open neighborhood N(i) \ {i}, sorted.
  const std::vector<Vertex>& neighbors(Vertex i) const { return adj_.at(i); }

  /// Closed neighborhood N(i), which contains i itself.
  std::vector<Vertex> closed_neighborhood(Vertex i) const {
    std::vector<Vertex> out = adj_.at(i);
    out.insert(std::lower_bound(out.begin(), out.end(), i), i);
    return out;
  }

  bool adjacent(Vertex u, Vertex v) const {
    const auto& a = adj_.at(u);
    return std::binary_search(a.begin(), a.end(), v);
  }

  /// Edges (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (Vertex u = 0; u < adj_.size(); ++u) {
      for (Vertex v : adj_[u]) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

  bool is_connected() const {
    std::vector<bool> seen(size(), false);
    std::vector<Vertex> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (Vertex v : adj_[u]) {
        if (!seen[v]) {
          seen[v] = true;
          ++count;
          stack.push_back(v);
        }
      }
    }
    return count == size();
  }

  /// BFS distances from `source` (unreachable = SIZE_MAX).
  std::vector<std::size_t> bfs_distances(Vertex source) const {
    std::vector<std::size_t> dist(size(), SIZE_MAX);
    std::queue<Vertex> q;
    dist.at(source) = 0;
    q.push(source);
    while (!q.empty()) {
      const Vertex u = q.front();
      q.pop();
      for (Vertex v : adj_[u]) {
        if (dist[v] == SIZE_MAX) {
          dist[v] = dist[u] + 1;
          q.push(v);
        }
      }
    }
    return dist;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::size_t edge_count_ = 0;
};

/// Graph plus one input string per vertex (empty when the language has none).
struct Instance {
  Graph graph;
  std::vector<std::string> inputs;

  explicit Instance(Graph g) : graph(std::move(g)), inputs(graph.size()) {}
  Instance(Graph g, std::vector<std::string> x) : graph(std::move(g)), inputs(std::move(x)) {
    if (inputs.size() != graph.size()) {
      throw FormatError("inputs must cover exactly the vertex set");
    }
  }

  std::size_t size() const { return graph.size(); }
};

enum class LanguageId : std::uint8_t { kNonbipartite = 1, kLeader = 2, kSpan = 3 };

inline std::string_view to_string(LanguageId id) {
  switch (id) {
    case LanguageId::kNonbipartite: return "nonbipartite";
    case LanguageId::kLeader: return "leader";
    case LanguageId::kSpan: return "span";
  }
  return "unknown";
}

inline std::optional<LanguageId> parse_language(std::string_view s) {
  if (s == "nonbipartite" || s == "nonbip") return LanguageId::kNonbipartite;
  if (s == "leader") return LanguageId::kLeader;
  if (s == "span") return LanguageId::kSpan;
  return std::nullopt;
}

/// Span input marking the root.
inline constexpr std::string_view kRootMarker = "root";

/// Parses a Span parent pointer: a decimal vertex id below n. Returns nullopt
/// for the root marker and for anything unparseable.
inline std::optional<Vertex> parse_parent(std::string_view s, std::size_t n) {
  if (s.empty() || s == kRootMarker) return std::nullopt;
  Vertex v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v >= n) return std::nullopt;
  return v;
}

// ---------------------------------------------------------------------------
// Ground-truth membership oracles.

/// Proper 2-coloring by BFS; nullopt when the graph has an odd cycle.
inline std::optional<std::vector<int>> two_coloring(const Graph& g) {
  std::vector<int> color(g.size(), -1);
  for (Vertex s = 0; s < g.size(); ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    std::queue<Vertex> q;
    q.push(s);
    while (!q.empty()) {
      const Vertex u = q.front();
      q.pop();
      for (Vertex v : g.neighbors(u)) {
        if (color[v] == -1) {
          color[v] = 1 - color[u];
          q.push(v);
        } else if (color[v] == color[u]) {
          return std::nullopt;
        }
      }
    }
  }
  return color;
}

inline bool is_nonbipartite(const Graph& g) { return !two_coloring(g).has_value(); }

namespace detail {

/// Shortest odd cycle length via BFS from every vertex.
inline std::size_t odd_girth(const Graph& g) {
  std::size_t best = SIZE_MAX;
  for (Vertex s = 0; s < g.size(); ++s) {
    const auto dist = g.bfs_distances(s);
    for (auto [u, v] : g.edges()) {
      if (dist[u] != SIZE_MAX && dist[u] == dist[v]) best = std::min(best, 2 * dist[u] + 1);
    }
  }
  return best;
}

/// Collects vertex sets of simple cycles of exactly `length` whose minimum
/// vertex is `start`.
inline void cycles_from(const Graph& g, Vertex start, std::size_t length,
                        std::vector<Vertex>& path, std::vector<bool>& on_path,
                        std::vector<std::vector<Vertex>>& out) {
  const Vertex u = path.back();
  if (path.size() == length) {
    if (g.adjacent(u, start)) {
      auto s = path;
      std::sort(s.begin(), s.end());
      out.push_back(std::move(s));
    }
    return;
  }
  for (Vertex v : g.neighbors(u)) {
    if (v <= start || on_path[v]) continue;
    on_path[v] = true;
    path.push_back(v);
    cycles_from(g, start, length, path, on_path, out);
    path.pop_back();
    on_path[v] = false;
  }
}

}  // namespace detail

/// Vertex set (sorted) of a shortest odd cycle; ties go to the
/// lexicographically smallest sorted id sequence. nullopt if bipartite.
inline std::optional<std::vector<Vertex>> find_odd_cycle(const Graph& g) {
  const std::size_t len = detail::odd_girth(g);
  if (len == SIZE_MAX) return std::nullopt;
  // The smallest member of the lexicographically least set is the smallest
  // start vertex that lies on any such cycle.
  for (Vertex s = 0; s < g.size(); ++s) {
    std::vector<std::vector<Vertex>> found;
    std::vector<Vertex> path{s};
    std::vector<bool> on_path(g.size(), false);
    on_path[s] = true;
    detail::cycles_from(g, s, len, path, on_path, found);
    if (!found.empty()) return *std::min_element(found.begin(), found.end());
  }
  return std::nullopt;  // unreachable for a nonbipartite graph
}

/// |{i : x(i) = 1}|. Every input must be exactly "0" or "1".
inline std::size_t leader_count(const Instance& inst) {
  std::size_t count = 0;
  for (Vertex i = 0; i < inst.size(); ++i) {
    const auto& x = inst.inputs[i];
    if (x == "1") {
      ++count;
    } else if (x != "0") {
      throw FormatError("leader input at vertex " + std::to_string(i) + " is not 0 or 1");
    }
  }
  return count;
}

/// Parent of each vertex under the Span input: nullopt for the root marker or
/// anything that is not a graph neighbor.
struct ParentMap {
  std::vector<std::optional<Vertex>> parent;
  std::vector<bool> is_root;
  bool all_valid = true;  // every entry is "root" or a neighbor id
};

inline ParentMap parent_map(const Instance& inst) {
  ParentMap pm{std::vector<std::optional<Vertex>>(inst.size()),
               std::vector<bool>(inst.size(), false), true};
  for (Vertex i = 0; i < inst.size(); ++i) {
    const auto& x = inst.inputs[i];
    if (x == kRootMarker) {
      pm.is_root[i] = true;
      continue;
    }
    const auto p = parse_parent(x, inst.size());
    if (p && *p != i && inst.graph.adjacent(i, *p)) {
      pm.parent[i] = *p;
    } else {
      pm.all_valid = false;
    }
  }
  return pm;
}

/// True iff exactly one vertex is the root, every other vertex names a graph
/// neighbor as parent, and parent pointers from every vertex reach the root.
inline bool is_valid_spanning_tree(const Instance& inst) {
  const auto pm = parent_map(inst);
  if (!pm.all_valid) return false;
  if (std::count(pm.is_root.begin(), pm.is_root.end(), true) != 1) return false;
  for (Vertex i = 0; i < inst.size(); ++i) {
    Vertex cur = i;
    std::size_t steps = 0;
    while (!pm.is_root[cur]) {
      if (++steps > inst.size()) return false;  // parent cycle
      cur = *pm.parent[cur];
    }
  }
  return true;
}

inline bool is_member(const Instance& inst, LanguageId lang) {
  switch (lang) {
    case LanguageId::kNonbipartite: return is_nonbipartite(inst.graph);
    case LanguageId::kLeader: return leader_count(inst) == 1;
    case LanguageId::kSpan: return is_valid_spanning_tree(inst);
  }
  return false;
}

}  // namespace dpcp
