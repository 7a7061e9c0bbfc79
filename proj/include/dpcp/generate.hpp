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

// Deterministic instance generators.
//
// Descriptor grammar:   <shape>[/<decoration>]...
//   shapes:       cycle:M  path:M  complete:M  star:M  tree:M  random:M:P
//                 (random-connected:M:P is an alias of random:M:P)
//   decorations:  leader=I,J,...   leader=none   leader=random
//                 span=tree | span=cycle | span=two-roots | span=no-root |
//                 span=non-neighbor
//                 nonbip=yes | nonbip=no   (asserted; generation error if the
//                                           shape cannot satisfy it)

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dpcp/errors.hpp"
#include "dpcp/graph.hpp"
#include "dpcp/random.hpp"

namespace dpcp {

enum class Shape { kCycle, kPath, kComplete, kStar, kTree, kRandomConnected };

enum class SpanKind { kTree, kPlantedCycle, kTwoRoots, kNoRoot, kNonNeighbor };

inline std::string_view to_string(SpanKind k) {
  switch (k) {
    case SpanKind::kTree: return "tree";
    case SpanKind::kPlantedCycle: return "cycle";
    case SpanKind::kTwoRoots: return "two-roots";
    case SpanKind::kNoRoot: return "no-root";
    case SpanKind::kNonNeighbor: return "non-neighbor";
  }
  return "?";
}

struct GeneratorDescriptor {
  Shape shape = Shape::kCycle;
  std::size_t m = 3;
  double edge_prob = 0.0;
  /// Leader positions; an empty vector means no leader.
  std::optional<std::vector<Vertex>> leaders;
  bool random_leader = false;
  std::optional<SpanKind> span;
  std::optional<bool> nonbipartite;

  static GeneratorDescriptor parse(std::string_view text);
  std::string text() const;
};

namespace detail {

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::size_t parse_size(std::string_view s, std::string_view what) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw GenerationError("bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

inline double parse_prob(std::string_view s) {
  std::istringstream in{std::string(s)};
  double p = -1;
  in >> p;
  if (!in || !in.eof() || p < 0 || p > 1) {
    throw GenerationError("bad edge probability '" + std::string(s) + "'");
  }
  return p;
}

}  // namespace detail

inline GeneratorDescriptor GeneratorDescriptor::parse(std::string_view text) {
  const auto pieces = detail::split(text, '/');
  GeneratorDescriptor d;
  const auto head = detail::split(pieces[0], ':');
  const auto name = head[0];
  const std::size_t want_args =
      (name == "random" || name == "random-connected" || name == "random_connected") ? 3 : 2;
  if (head.size() != want_args) throw GenerationError("bad shape '" + std::string(pieces[0]) + "'");
  if (name == "cycle") {
    d.shape = Shape::kCycle;
  } else if (name == "path") {
    d.shape = Shape::kPath;
  } else if (name == "complete") {
    d.shape = Shape::kComplete;
  } else if (name == "star") {
    d.shape = Shape::kStar;
  } else if (name == "tree") {
    d.shape = Shape::kTree;
  } else if (want_args == 3) {
    d.shape = Shape::kRandomConnected;
    d.edge_prob = detail::parse_prob(head[2]);
  } else {
    throw GenerationError("unknown shape '" + std::string(name) + "'");
  }
  d.m = detail::parse_size(head[1], "vertex count");
  for (std::size_t k = 1; k < pieces.size(); ++k) {
    const auto eq = pieces[k].find('=');
    if (eq == std::string_view::npos) {
      throw GenerationError("bad decoration '" + std::string(pieces[k]) + "'");
    }
    const auto key = pieces[k].substr(0, eq);
    const auto value = pieces[k].substr(eq + 1);
    if (key == "leader") {
      if (value == "none") {
        d.leaders = std::vector<Vertex>{};
      } else if (value == "random") {
        d.random_leader = true;
      } else {
        std::vector<Vertex> ls;
        for (auto v : detail::split(value, ',')) ls.push_back(detail::parse_size(v, "leader id"));
        d.leaders = ls;
      }
    } else if (key == "span") {
      if (value == "tree") {
        d.span = SpanKind::kTree;
      } else if (value == "cycle") {
        d.span = SpanKind::kPlantedCycle;
      } else if (value == "two-roots") {
        d.span = SpanKind::kTwoRoots;
      } else if (value == "no-root") {
        d.span = SpanKind::kNoRoot;
      } else if (value == "non-neighbor") {
        d.span = SpanKind::kNonNeighbor;
      } else {
        throw GenerationError("unknown span decoration '" + std::string(value) + "'");
      }
    } else if (key == "nonbip") {
      if (value != "yes" && value != "no") throw GenerationError("nonbip must be yes or no");
      d.nonbipartite = (value == "yes");
    } else {
      throw GenerationError("unknown decoration '" + std::string(key) + "'");
    }
  }
  if (d.span && (d.leaders || d.random_leader)) {
    throw GenerationError("span and leader decorations are exclusive");
  }
  return d;
}

inline std::string GeneratorDescriptor::text() const {
  std::ostringstream out;
  switch (shape) {
    case Shape::kCycle: out << "cycle:" << m; break;
    case Shape::kPath: out << "path:" << m; break;
    case Shape::kComplete: out << "complete:" << m; break;
    case Shape::kStar: out << "star:" << m; break;
    case Shape::kTree: out << "tree:" << m; break;
    case Shape::kRandomConnected: out << "random:" << m << ':' << edge_prob; break;
  }
  if (random_leader) out << "/leader=random";
  if (leaders) {
    out << "/leader=";
    if (leaders->empty()) out << "none";
    for (std::size_t k = 0; k < leaders->size(); ++k) out << (k ? "," : "") << (*leaders)[k];
  }
  if (span) out << "/span=" << to_string(*span);
  if (nonbipartite) out << "/nonbip=" << (*nonbipartite ? "yes" : "no");
  return out.str();
}

namespace detail {

inline Graph make_shape(const GeneratorDescriptor& d, SplitMix64& rng) {
  const std::size_t m = d.m;
  if (m == 0) throw GenerationError("vertex count must be positive");
  std::vector<Edge> edges;
  switch (d.shape) {
    case Shape::kCycle:
      if (m < 3) throw GenerationError("cycle needs at least 3 vertices");
      for (Vertex i = 0; i < m; ++i) {
        const Vertex j = (i + 1) % m;
        edges.emplace_back(std::min(i, j), std::max(i, j));
      }
      break;
    case Shape::kPath:
      for (Vertex i = 0; i + 1 < m; ++i) edges.emplace_back(i, i + 1);
      break;
    case Shape::kComplete:
      for (Vertex i = 0; i < m; ++i) {
        for (Vertex j = i + 1; j < m; ++j) edges.emplace_back(i, j);
      }
      break;
    case Shape::kStar:
      for (Vertex j = 1; j < m; ++j) edges.emplace_back(0, j);
      break;
    case Shape::kTree:
    case Shape::kRandomConnected: {
      // Random-attachment tree over a random vertex order, then (for random
      // graphs) every remaining pair independently with probability p.
      std::vector<Vertex> order(m);
      for (Vertex i = 0; i < m; ++i) order[i] = i;
      for (std::size_t i = m; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
      std::vector<std::vector<bool>> has(m, std::vector<bool>(m, false));
      for (std::size_t k = 1; k < m; ++k) {
        const Vertex u = order[k];
        const Vertex v = order[rng.below(k)];
        has[u][v] = has[v][u] = true;
      }
      if (d.shape == Shape::kRandomConnected) {
        for (Vertex i = 0; i < m; ++i) {
          for (Vertex j = i + 1; j < m; ++j) {
            if (!has[i][j] && rng.unit() < d.edge_prob) has[i][j] = has[j][i] = true;
          }
        }
      }
      for (Vertex i = 0; i < m; ++i) {
        for (Vertex j = i + 1; j < m; ++j) {
          if (has[i][j]) edges.emplace_back(i, j);
        }
      }
      break;
    }
  }
  Graph g(m, edges, /*require_connected=*/false);
  if (!g.is_connected()) throw GenerationError("generated graph is not connected");
  return g;
}

/// BFS tree parents rooted at `root`; parent[root] = root.
inline std::vector<Vertex> bfs_parents(const Graph& g, Vertex root) {
  std::vector<Vertex> parent(g.size(), SIZE_MAX);
  std::queue<Vertex> q;
  parent[root] = root;
  q.push(root);
  while (!q.empty()) {
    const Vertex u = q.front();
    q.pop();
    for (Vertex v : g.neighbors(u)) {
      if (parent[v] == SIZE_MAX) {
        parent[v] = u;
        q.push(v);
      }
    }
  }
  return parent;
}

inline std::vector<std::string> tree_inputs(const std::vector<Vertex>& parent) {
  std::vector<std::string> x(parent.size());
  for (Vertex i = 0; i < parent.size(); ++i) {
    x[i] = parent[i] == i ? std::string(kRootMarker) : std::to_string(parent[i]);
  }
  return x;
}

inline std::vector<std::string> span_inputs(const Graph& g, SpanKind kind, SplitMix64& rng) {
  const std::size_t n = g.size();
  const Vertex root = rng.below(n);
  auto parent = bfs_parents(g, root);
  auto x = tree_inputs(parent);
  auto is_descendant = [&](Vertex v, Vertex ancestor) {
    while (v != parent[v]) {
      v = parent[v];
      if (v == ancestor) return true;
    }
    return false;
  };
  switch (kind) {
    case SpanKind::kTree:
      return x;
    case SpanKind::kPlantedCycle: {
      std::vector<Edge> candidates;  // (u, new parent v), v a proper descendant of u
      for (Vertex u = 0; u < n; ++u) {
        if (u == root) continue;
        for (Vertex v : g.neighbors(u)) {
          if (parent[v] != u && is_descendant(v, u)) candidates.emplace_back(u, v);
        }
      }
      if (candidates.empty()) {
        for (Vertex c = 0; c < n; ++c) {
          if (c != root && parent[c] != root) candidates.emplace_back(parent[c], c);
        }
      }
      if (candidates.empty() && n >= 2) {
        // Depth-one tree: close a 2-cycle through the root instead.
        const auto& nb = g.neighbors(root);
        x[root] = std::to_string(nb[rng.below(nb.size())]);
        return x;
      }
      if (candidates.empty()) throw GenerationError("no place to plant a parent cycle");
      const auto [u, v] = candidates[rng.below(candidates.size())];
      x[u] = std::to_string(v);
      return x;
    }
    case SpanKind::kTwoRoots: {
      if (n < 2) throw GenerationError("two roots need at least 2 vertices");
      Vertex u = rng.below(n - 1);
      if (u >= root) ++u;
      x[u] = std::string(kRootMarker);
      return x;
    }
    case SpanKind::kNoRoot: {
      if (n < 2) throw GenerationError("removing the root needs at least 2 vertices");
      const auto& nb = g.neighbors(root);
      x[root] = std::to_string(nb[rng.below(nb.size())]);
      return x;
    }
    case SpanKind::kNonNeighbor: {
      std::vector<Edge> candidates;
      for (Vertex u = 0; u < n; ++u) {
        if (u == root) continue;
        for (Vertex w = 0; w < n; ++w) {
          if (w != u && !g.adjacent(u, w)) candidates.emplace_back(u, w);
        }
      }
      if (candidates.empty()) throw GenerationError("graph has no non-neighbor pair");
      const auto [u, w] = candidates[rng.below(candidates.size())];
      x[u] = std::to_string(w);
      return x;
    }
  }
  return x;
}

}  // namespace detail

/// Builds the instance named by `d`, deterministically per (d, seed).
inline Instance generate(const GeneratorDescriptor& d, std::uint64_t seed) {
  const bool random_shape = d.shape == Shape::kTree || d.shape == Shape::kRandomConnected;
  const int attempts = (d.nonbipartite && random_shape) ? 1000 : 1;
  std::optional<Graph> g;
  SplitMix64 rng(split_seed(seed, {0}));
  for (int a = 0; a < attempts && !g; ++a) {
    rng = SplitMix64(split_seed(seed, {0, static_cast<std::uint64_t>(a)}));
    Graph candidate = detail::make_shape(d, rng);
    if (!d.nonbipartite || is_nonbipartite(candidate) == *d.nonbipartite) g = std::move(candidate);
  }
  if (!g) {
    throw GenerationError("descriptor '" + d.text() + "' cannot produce a " +
                          (*d.nonbipartite ? "nonbipartite" : "bipartite") + " graph");
  }
  Instance inst(std::move(*g));
  const std::size_t n = inst.size();
  if (d.leaders || d.random_leader) {
    std::vector<std::string> x(n, "0");
    if (d.random_leader) x[rng.below(n)] = "1";
    if (d.leaders) {
      for (Vertex v : *d.leaders) {
        if (v >= n) throw GenerationError("leader id out of range");
        x[v] = "1";
      }
    }
    inst.inputs = std::move(x);
  }
  if (d.span) inst.inputs = detail::span_inputs(inst.graph, *d.span, rng);
  return inst;
}

inline Instance generate(std::string_view descriptor, std::uint64_t seed) {
  return generate(GeneratorDescriptor::parse(descriptor), seed);
}

}  // namespace dpcp
