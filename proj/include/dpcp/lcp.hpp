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

// Locally checkable proofs: deterministic labels checked by each node against
// its neighborhood, no randomness and no shared proof.
//
// Both schemes use labels (root id, distance). The Span verifier reads the
// parent from the input; the Leader verifier has no parent, so a non-leader
// only needs some neighbor one step closer to the root.
//
// glue_attack shows why short labels cannot work for Leader on cycles: it
// enumerates the accepting labelings of two yes-cycles, splices an arc of one
// into the other at places where the local pictures agree, and certifies that
// the result is a no-instance every node of which still accepts.

#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "dpcp/errors.hpp"
#include "dpcp/graph.hpp"

namespace dpcp {

struct Label {
  std::uint64_t value = 0;
  unsigned bits = 0;

  friend auto operator<=>(const Label&, const Label&) = default;
};

struct Labeling {
  std::vector<Label> labels;

  std::size_t size() const { return labels.size(); }
  unsigned max_label_bits() const {
    unsigned m = 0;
    for (const auto& l : labels) m = std::max(m, l.bits);
    return m;
  }
  friend bool operator==(const Labeling&, const Labeling&) = default;
};

/// Split of a label into a root-id field (high bits) and a distance field.
struct LabelFormat {
  unsigned root_bits = 0;
  unsigned dist_bits = 0;

  unsigned total() const { return root_bits + dist_bits; }
  Label make(std::uint64_t root, std::uint64_t dist) const {
    return {(root << dist_bits) | dist, total()};
  }
  std::uint64_t root(const Label& l) const { return l.value >> dist_bits; }
  std::uint64_t dist(const Label& l) const { return l.value & mask(dist_bits); }
  bool fits(const Label& l) const {
    return l.bits == total() && (total() >= 64 || l.value >> total() == 0);
  }
  static std::uint64_t mask(unsigned bits) {
    return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
  }
};

/// ⌈log2 n⌉, with ceil_log2(1) = 0.
inline unsigned ceil_log2(std::uint64_t n) {
  return n <= 1 ? 0 : static_cast<unsigned>(std::bit_width(n - 1));
}

/// Both fields ⌈log2 n⌉ bits wide.
inline LabelFormat default_label_format(std::size_t n) {
  const unsigned w = ceil_log2(n);
  return {w, w};
}

enum class Verdict { kReject, kAccept, kUnknown };

// ---------------------------------------------------------------------------
// Span.

inline Labeling lcp_prove_span(const Instance& inst) {
  if (!is_valid_spanning_tree(inst)) throw WitnessError("no witness: input is not a spanning tree");
  const auto pm = parent_map(inst);
  const std::size_t n = inst.size();
  const Vertex root = static_cast<Vertex>(
      std::find(pm.is_root.begin(), pm.is_root.end(), true) - pm.is_root.begin());
  const LabelFormat fmt = default_label_format(n);
  Labeling out;
  for (Vertex i = 0; i < n; ++i) {
    std::uint64_t d = 0;
    for (Vertex cur = i; !pm.is_root[cur]; cur = *pm.parent[cur]) ++d;
    out.labels.push_back(fmt.make(root, d));
  }
  return out;
}

/// Node i's decision under the Span scheme. Malformed labels reject.
inline bool lcp_span_node_accepts(const Instance& inst, const Labeling& labeling, Vertex i) {
  const std::size_t n = inst.size();
  const LabelFormat fmt = default_label_format(n);
  const Label& own = labeling.labels.at(i);
  if (!fmt.fits(own)) return false;
  for (Vertex j : inst.graph.neighbors(i)) {
    const Label& lj = labeling.labels.at(j);
    if (!fmt.fits(lj) || fmt.root(lj) != fmt.root(own)) return false;
  }
  const auto& x = inst.inputs.at(i);
  if (x == kRootMarker) return fmt.root(own) == i && fmt.dist(own) == 0;
  const auto p = parse_parent(x, n);
  if (!p || *p == i || !inst.graph.adjacent(i, *p)) return false;
  return fmt.dist(own) == fmt.dist(labeling.labels[*p]) + 1;
}

inline std::vector<bool> lcp_verify_span_nodes(const Instance& inst, const Labeling& labeling) {
  if (labeling.size() != inst.size()) throw FormatError("labeling does not cover the vertex set");
  std::vector<bool> out(inst.size());
  for (Vertex i = 0; i < inst.size(); ++i) out[i] = lcp_span_node_accepts(inst, labeling, i);
  return out;
}

inline bool lcp_verify_span(const Instance& inst, const Labeling& labeling) {
  const auto v = lcp_verify_span_nodes(inst, labeling);
  return std::all_of(v.begin(), v.end(), [](bool b) { return b; });
}

// ---------------------------------------------------------------------------
// Leader.

/// Node check of the Leader verifier. Unassigned labels (nullopt) make the
/// result kUnknown unless the assigned part already forces a rejection.
///
///   all neighbors carry the node's root id
///   x = 1:  root id ≡ id (mod 2^root_bits) and distance 0
///   x = 0:  distance ≠ 0 and some neighbor sits at distance - 1
inline Verdict leader_node_check(std::uint64_t id, bool x, const std::optional<Label>& own,
                                 const std::vector<std::optional<Label>>& around,
                                 const LabelFormat& fmt) {
  if (!own) return Verdict::kUnknown;
  if (!fmt.fits(*own)) return Verdict::kReject;
  const std::uint64_t root = fmt.root(*own);
  const std::uint64_t dist = fmt.dist(*own);
  if (x) {
    if ((root & LabelFormat::mask(fmt.root_bits)) != (id & LabelFormat::mask(fmt.root_bits)) ||
        dist != 0) {
      return Verdict::kReject;
    }
  } else if (dist == 0) {
    return Verdict::kReject;
  }
  bool unknown = false;
  bool closer = x;
  for (const auto& l : around) {
    if (!l) {
      unknown = true;
      continue;
    }
    if (!fmt.fits(*l) || fmt.root(*l) != root) return Verdict::kReject;
    if (fmt.dist(*l) + 1 == dist) closer = true;
  }
  if (unknown) return Verdict::kUnknown;
  return closer ? Verdict::kAccept : Verdict::kReject;
}

/// Per-node decisions with explicit node ids (ids[i] is vertex i's id).
inline std::vector<bool> lcp_verify_leader_nodes(const Instance& inst, const Labeling& labeling,
                                                 const std::vector<std::uint64_t>& ids,
                                                 const LabelFormat& fmt) {
  if (labeling.size() != inst.size() || ids.size() != inst.size()) {
    throw FormatError("labeling does not cover the vertex set");
  }
  std::vector<bool> out(inst.size());
  for (Vertex i = 0; i < inst.size(); ++i) {
    std::vector<std::optional<Label>> around;
    for (Vertex j : inst.graph.neighbors(i)) around.emplace_back(labeling.labels[j]);
    const auto& x = inst.inputs[i];
    if (x != "0" && x != "1") {
      out[i] = false;
      continue;
    }
    out[i] = leader_node_check(ids[i], x == "1", labeling.labels[i], around, fmt) ==
             Verdict::kAccept;
  }
  return out;
}

inline std::vector<std::uint64_t> identity_ids(std::size_t n) {
  std::vector<std::uint64_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = i;
  return ids;
}

/// Leader verifier with vertex indices as ids and the default label format.
inline bool lcp_verify_leader(const Instance& inst, const Labeling& labeling) {
  const auto v = lcp_verify_leader_nodes(inst, labeling, identity_ids(inst.size()),
                                         default_label_format(inst.size()));
  return std::all_of(v.begin(), v.end(), [](bool b) { return b; });
}

/// BFS distances from the unique leader, all labeled with the leader's id.
inline Labeling lcp_leader_scheme(const Instance& inst) {
  if (leader_count(inst) != 1) throw WitnessError("no witness: need exactly one leader");
  const Vertex leader = static_cast<Vertex>(
      std::find(inst.inputs.begin(), inst.inputs.end(), "1") - inst.inputs.begin());
  const LabelFormat fmt = default_label_format(inst.size());
  const auto dist = inst.graph.bfs_distances(leader);
  Labeling out;
  for (Vertex i = 0; i < inst.size(); ++i) out.labels.push_back(fmt.make(leader, dist[i]));
  return out;
}

// ---------------------------------------------------------------------------
// Gluing attack.

enum class LocalVerifierKind { kLeaderOnCycles };

/// What a node sees: its id, input and label, and the multiset of its
/// neighbors' (input, label) pairs.
struct LocalView {
  std::uint64_t id;
  bool input;
  Label label;
  std::vector<std::pair<bool, Label>> around;  // sorted

  friend auto operator<=>(const LocalView&, const LocalView&) = default;
};

/// A labeled cycle: position k is adjacent to k±1 mod size.
struct LabeledCycle {
  std::vector<std::uint64_t> ids;
  std::vector<bool> inputs;
  std::vector<Label> labels;

  std::size_t size() const { return ids.size(); }
  Instance instance() const {
    const std::size_t m = size();
    std::vector<Edge> edges;
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t a = k, b = (k + 1) % m;
      edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::vector<std::string> x;
    for (bool b : inputs) x.push_back(b ? "1" : "0");
    return Instance(Graph(m, edges), x);
  }
  LocalView view(std::size_t k) const {
    const std::size_t m = size();
    const std::size_t l = (k + m - 1) % m, r = (k + 1) % m;
    LocalView v{ids[k], inputs[k], labels[k], {{inputs[l], labels[l]}, {inputs[r], labels[r]}}};
    std::sort(v.around.begin(), v.around.end());
    return v;
  }
};

struct FoolingInstance {
  LabeledCycle cycle;
  LabelFormat format;
  unsigned window = 0;  // matching window width that produced it
  std::size_t from_a = 0, from_b = 0;  // arc lengths taken from each source
  std::size_t leaders = 0;
};

struct GlueReport {
  LabelFormat format;
  std::size_t accepting_a = 0, accepting_b = 0;  // accepting labelings found per source
  std::optional<FoolingInstance> instance;       // first found, smallest window
  std::vector<unsigned> windows;                 // widths for which a splice exists
  std::uint64_t visits = 0;
};

/// Field split for b-bit labels on the cycle verifier: distance gets
/// max(min(b, 2), ⌈b/2⌉) bits, the root id the rest.
inline LabelFormat glue_label_format(unsigned bits) {
  const unsigned d = std::max(std::min(bits, 2U), (bits + 1) / 2);
  return {bits - d, d};
}

namespace detail {

inline Verdict cycle_node_check(const std::vector<std::optional<Label>>& labels,
                                const LabeledCycle& c, std::size_t k, const LabelFormat& fmt) {
  const std::size_t m = c.size();
  return leader_node_check(c.ids[k], c.inputs[k], labels[k],
                           {labels[(k + m - 1) % m], labels[(k + 1) % m]}, fmt);
}

/// Every labeling of `shape` accepted by all nodes, by depth-first search with
/// pruning on nodes whose check is already decided.
inline std::vector<std::vector<Label>> accepting_labelings(const LabeledCycle& shape,
                                                           const LabelFormat& fmt,
                                                           std::uint64_t budget,
                                                           std::uint64_t& visits) {
  const std::size_t m = shape.size();
  const std::uint64_t choices = std::uint64_t{1} << fmt.total();
  std::vector<std::optional<Label>> cur(m);
  std::vector<std::vector<Label>> out;
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (++visits > budget) throw CapacityError("labeling search exceeds the budget");
    if (k == m) {
      std::vector<Label> full;
      for (const auto& l : cur) full.push_back(*l);
      out.push_back(std::move(full));
      return;
    }
    for (std::uint64_t v = 0; v < choices; ++v) {
      cur[k] = Label{v, fmt.total()};
      bool alive = true;
      for (std::size_t j : {(k + m - 1) % m, k, (k + 1) % m}) {
        if (cycle_node_check(cur, shape, j, fmt) == Verdict::kReject) {
          alive = false;
          break;
        }
      }
      if (alive) self(self, k + 1);
    }
    cur[k].reset();
  };
  rec(rec, 0);
  return out;
}

}  // namespace detail

/// True iff `c` is a no-instance, every node accepts, and every local view of
/// `c` occurs in `sources`.
inline bool certify_fooling(const LabeledCycle& c, const LabelFormat& fmt,
                            const std::set<LocalView>& sources) {
  const std::size_t leaders = static_cast<std::size_t>(std::count(c.inputs.begin(), c.inputs.end(), true));
  if (leaders == 1 || c.size() < 3) return false;
  std::vector<std::optional<Label>> labels(c.labels.begin(), c.labels.end());
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (detail::cycle_node_check(labels, c, k, fmt) != Verdict::kAccept) return false;
    if (!sources.count(c.view(k))) return false;
  }
  std::set<std::uint64_t> distinct(c.ids.begin(), c.ids.end());
  return distinct.size() == c.size();
}

/// Two yes-cycles of size m: A with ids 0..m-1 and B with ids m..2m-1, each
/// with its leader at position 0. For every pair of accepting labelings, every
/// orientation of B and every window width w ∈ 1..3, finds windows where A and
/// B look alike and splices
///
///   a[p+k+1] .. a[s+k]   then   b[q+k+1] .. b[t+k]      (k = ⌊(w-1)/2⌋)
///
/// where window s of A matches window q of B and window t of B matches window
/// p of A. Candidates are certified with certify_fooling.
inline GlueReport glue_attack(LocalVerifierKind kind, unsigned label_bits, std::size_t cycle_size,
                              std::uint64_t budget = std::uint64_t{1} << 24) {
  if (kind != LocalVerifierKind::kLeaderOnCycles) throw UsageError("unknown local verifier");
  if (cycle_size < 3) throw GenerationError("cycles need at least 3 vertices");
  if (label_bits == 0 || label_bits > 16) throw UsageError("label bits must be in 1..16");
  const std::size_t m = cycle_size;
  GlueReport report;
  report.format = glue_label_format(label_bits);
  const LabelFormat& fmt = report.format;

  LabeledCycle a, b;
  for (std::size_t k = 0; k < m; ++k) {
    a.ids.push_back(k);
    b.ids.push_back(m + k);
    a.inputs.push_back(k == 0);
    b.inputs.push_back(k == 0);
  }
  const auto la = detail::accepting_labelings(a, fmt, budget, report.visits);
  const auto lb = detail::accepting_labelings(b, fmt, budget, report.visits);
  report.accepting_a = la.size();
  report.accepting_b = lb.size();

  std::set<LocalView> sources;
  for (const auto* set : {&la, &lb}) {
    LabeledCycle c = set == &la ? a : b;
    for (const auto& labels : *set) {
      c.labels = labels;
      for (std::size_t k = 0; k < m; ++k) sources.insert(c.view(k));
    }
  }

  for (unsigned w = 1; w <= 3 && w <= m; ++w) {
    const std::size_t off = (w - 1) / 2;
    bool found = false;
    for (std::size_t ia = 0; ia < la.size() && !found; ++ia) {
      LabeledCycle ca = a;
      ca.labels = la[ia];
      for (std::size_t ib = 0; ib < lb.size() && !found; ++ib) {
        for (int dir = 0; dir < 2 && !found; ++dir) {
          LabeledCycle cb = b;
          cb.labels = lb[ib];
          if (dir == 1) {
            std::reverse(cb.ids.begin() + 1, cb.ids.end());
            std::reverse(cb.inputs.begin() + 1, cb.inputs.end());
            std::reverse(cb.labels.begin() + 1, cb.labels.end());
          }
          auto matches = [&](std::size_t s, std::size_t q) {
            for (std::size_t j = 0; j < w; ++j) {
              const std::size_t x = (s + j) % m, y = (q + j) % m;
              if (ca.inputs[x] != cb.inputs[y] || ca.labels[x] != cb.labels[y]) return false;
            }
            return true;
          };
          std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (A window, B window)
          for (std::size_t s = 0; s < m; ++s) {
            for (std::size_t q = 0; q < m; ++q) {
              if (matches(s, q)) pairs.emplace_back(s, q);
            }
          }
          for (auto [s, q] : pairs) {
            for (auto [p, t] : pairs) {
              if (found) break;
              if (++report.visits > budget) throw CapacityError("splice search exceeds the budget");
              const std::size_t len_a = (s + m - p - 1) % m + 1;
              const std::size_t len_b = (t + m - q - 1) % m + 1;
              LabeledCycle g;
              auto take = [&g](const LabeledCycle& src, std::size_t from, std::size_t len) {
                const std::size_t sz = src.size();
                for (std::size_t j = 0; j < len; ++j) {
                  const std::size_t k = (from + j) % sz;
                  g.ids.push_back(src.ids[k]);
                  g.inputs.push_back(src.inputs[k]);
                  g.labels.push_back(src.labels[k]);
                }
              };
              take(ca, (p + off + 1) % m, len_a);
              take(cb, (q + off + 1) % m, len_b);
              if (!certify_fooling(g, fmt, sources)) continue;
              found = true;
              if (!report.instance) {
                FoolingInstance fi;
                fi.cycle = g;
                fi.format = fmt;
                fi.window = w;
                fi.from_a = len_a;
                fi.from_b = len_b;
                fi.leaders = static_cast<std::size_t>(std::count(g.inputs.begin(), g.inputs.end(), true));
                report.instance = std::move(fi);
              }
            }
          }
        }
      }
    }
    if (found) report.windows.push_back(w);
  }
  return report;
}

}  // namespace dpcp
