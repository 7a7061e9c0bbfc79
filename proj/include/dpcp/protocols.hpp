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

// Per-node verifier programs for the three distributed PCP protocols.
//
// Each program is written once against a Probe, which supplies the five
// primitives a verifier may use:
//
//   bool linearity(part, reps)      BLR test, `reps` repetitions, fresh coins
//   bool linear_at(part, x, y)      π(x) ⊕ π(y) = π(x ⊕ y), no coins
//   BitVec draw()                   uniform vector in {0,1}^n
//   bool read(part, v, s)           π(v ⊕ s) ⊕ π(s)
//   bool corrected(part, v)         read(part, v, fresh uniform s)
//
// SessionProbe samples through an OracleSession (simulation); ExactProbe in
// exact.hpp branches over outcomes (exact analysis). No check short-circuits:
// every node makes its full query schedule even after a failure, so the query
// and coin counts depend only on the node's role and the config.
//
// Per-pass schedule with k = blr_repetitions (n = vertex count):
//
//   nonbipartite, leader          3k + 4 queries     2nk + 2n coins
//   span, root or bad parent      3k + 4 queries     2nk + 2n coins
//   span, non-root                9k + 12 queries    2nk + 2n coins
//
// A leader node draws its punctured vector r_i by clearing coordinate i of the
// correction vector of its own e_i query, so it spends the same coins as a
// non-leader. A non-root span node reads three tables but draws one coin
// block: each BLR pair is applied to all three, one correction vector serves
// every self-corrected read, and one more draw gives r_i. Each check keeps
// its marginal error, so union bounds over the checks still apply.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dpcp/bitvec.hpp"
#include "dpcp/errors.hpp"
#include "dpcp/gf2.hpp"
#include "dpcp/graph.hpp"
#include "dpcp/prover.hpp"
#include "dpcp/random.hpp"

namespace dpcp {

enum class CheckId : std::uint8_t {
  kNone,
  kLinearity,
  kNeighbors,
  kParity,
  kLeaderBit,
  kLeaderUnique,
  kRootLinearity,
  kRootBit,
  kRootUnique,
  kRootParity,
  kParentSyntax,
  kTreeLinearity,
  kTreeStep,
  kTreeAncestry,
};

inline std::string_view to_string(CheckId c) {
  switch (c) {
    case CheckId::kNone: return "-";
    case CheckId::kLinearity: return "linearity";
    case CheckId::kNeighbors: return "neighbors";
    case CheckId::kParity: return "parity";
    case CheckId::kLeaderBit: return "leader-bit";
    case CheckId::kLeaderUnique: return "leader-unique";
    case CheckId::kRootLinearity: return "root-linearity";
    case CheckId::kRootBit: return "root-bit";
    case CheckId::kRootUnique: return "root-unique";
    case CheckId::kRootParity: return "root-parity";
    case CheckId::kParentSyntax: return "parent-syntax";
    case CheckId::kTreeLinearity: return "tree-linearity";
    case CheckId::kTreeStep: return "tree-step";
    case CheckId::kTreeAncestry: return "tree-ancestry";
  }
  return "?";
}

struct ProtocolConfig {
  LanguageId language = LanguageId::kNonbipartite;
  unsigned blr_repetitions = 1;
  unsigned verifier_repetitions = 1;

  void validate() const {
    if (blr_repetitions < 1 || verifier_repetitions < 1) {
      throw UsageError("repetition counts must be at least 1");
    }
  }
};

/// Documented per-node query budget Q(config), over all passes.
inline std::uint64_t query_budget(const ProtocolConfig& cfg) {
  const std::uint64_t k = cfg.blr_repetitions;
  const std::uint64_t per_pass = cfg.language == LanguageId::kSpan ? 9 * k + 12 : 3 * k + 4;
  return per_pass * cfg.verifier_repetitions;
}

/// Documented per-node random-bit budget over all passes.
inline std::uint64_t random_bit_budget(const ProtocolConfig& cfg, std::size_t n) {
  const std::uint64_t k = cfg.blr_repetitions;
  return (2 * k + 2) * n * cfg.verifier_repetitions;
}

struct NodeReport {
  bool accept = true;
  CheckId failed = CheckId::kNone;  // first failing check over all passes
  std::uint64_t query_count = 0;
  std::uint64_t random_bits_used = 0;

  friend bool operator==(const NodeReport&, const NodeReport&) = default;
};

struct RunReport {
  std::vector<NodeReport> nodes;
  bool accept = true;
  std::uint64_t proof_bits = 0;

  std::uint64_t max_queries() const {
    std::uint64_t m = 0;
    for (const auto& r : nodes) m = std::max(m, r.query_count);
    return m;
  }
  std::uint64_t max_random_bits() const {
    std::uint64_t m = 0;
    for (const auto& r : nodes) m = std::max(m, r.random_bits_used);
    return m;
  }
  friend bool operator==(const RunReport&, const RunReport&) = default;
};

/// Result of one node's pass before the neighbor exchange is resolved.
struct PassOutcome {
  bool published = false;            // a_i (nonbipartite only)
  CheckId before = CheckId::kNone;   // first failure ordered before the exchange
  CheckId after = CheckId::kNone;    // first failure ordered after the exchange

  bool local_ok() const { return before == CheckId::kNone && after == CheckId::kNone; }
};

namespace detail {

inline void note(CheckId& first, bool ok, CheckId id) {
  if (!ok && first == CheckId::kNone) first = id;
}

struct LeaderCheckIds {
  CheckId linearity, bit, unique, parity;
};

inline constexpr LeaderCheckIds kLeaderIds{CheckId::kLinearity, CheckId::kLeaderBit,
                                           CheckId::kLeaderUnique, CheckId::kParity};
inline constexpr LeaderCheckIds kRootIds{CheckId::kRootLinearity, CheckId::kRootBit,
                                         CheckId::kRootUnique, CheckId::kRootParity};

/// Leader checks for node i on `part`, given the node's own bit x_i.
template <class Probe>
void leader_checks(Probe& probe, std::size_t part, Vertex i, std::size_t n, bool x_i,
                   unsigned blr_reps, const LeaderCheckIds& ids, CheckId& first) {
  note(first, probe.linearity(part, blr_reps), ids.linearity);
  const BitVec e_i = BitVec::basis(n, i);
  if (x_i) {
    BitVec s = probe.draw();
    const bool a = probe.read(part, e_i, s);
    s.reset(i);  // r_i: uniform off coordinate i, zero on it
    const bool b = probe.corrected(part, s);
    note(first, a, ids.bit);
    note(first, !b, ids.unique);
  } else {
    const bool a = probe.corrected(part, e_i);
    const bool parity = probe.corrected(part, BitVec::ones(n));
    note(first, !a, ids.bit);
    note(first, parity, ids.parity);
  }
}

}  // namespace detail

template <class Probe>
PassOutcome nonbipartite_pass(Probe& probe, const Instance& inst, Vertex i, unsigned blr_reps) {
  const std::size_t n = inst.size();
  PassOutcome out;
  detail::note(out.before, probe.linearity(0, blr_reps), CheckId::kLinearity);
  out.published = probe.corrected(0, BitVec::basis(n, i));
  const bool parity = probe.corrected(0, BitVec::ones(n));
  detail::note(out.after, parity, CheckId::kParity);
  return out;
}

/// Exactly two distinct j ∈ N(i), j ≠ i, with a_j = 1 whenever a_i = 1.
inline bool nonbipartite_neighbor_predicate(const Graph& g, Vertex i,
                                            const std::vector<std::optional<bool>>& published) {
  const auto mine = published.at(i);
  if (!mine) throw ProtocolError("node " + std::to_string(i) + " did not publish");
  if (!*mine) return true;
  std::size_t on = 0;
  for (Vertex j : g.neighbors(i)) {
    const auto a = published.at(j);
    if (!a) throw ProtocolError("neighbor " + std::to_string(j) + " did not publish");
    on += *a;
  }
  return on == 2;
}

inline bool leader_input_bit(const Instance& inst, Vertex i) {
  const auto& x = inst.inputs.at(i);
  if (x != "0" && x != "1") {
    throw FormatError("leader input at vertex " + std::to_string(i) + " is not 0 or 1");
  }
  return x == "1";
}

template <class Probe>
PassOutcome leader_pass(Probe& probe, const Instance& inst, Vertex i, unsigned blr_reps) {
  PassOutcome out;
  detail::leader_checks(probe, 0, i, inst.size(), leader_input_bit(inst, i), blr_reps,
                        detail::kLeaderIds, out.before);
  return out;
}

template <class Probe>
PassOutcome span_pass(Probe& probe, const Instance& inst, Vertex i, unsigned blr_reps) {
  const std::size_t n = inst.size();
  const auto& x = inst.inputs.at(i);
  PassOutcome out;
  CheckId& first = out.before;
  const bool is_root = x == kRootMarker;
  const auto parent = is_root ? std::nullopt : parse_parent(x, n);
  if (is_root || !parent || *parent == i || !inst.graph.adjacent(i, *parent)) {
    detail::leader_checks(probe, 0, i, n, is_root, blr_reps, detail::kRootIds, first);
    if (!is_root) detail::note(first, false, CheckId::kParentSyntax);
    return out;
  }
  const std::size_t own = 1 + i;
  const std::size_t up = 1 + *parent;
  bool lin_root = true, lin_own = true, lin_up = true;
  for (unsigned rep = 0; rep < blr_reps; ++rep) {
    const BitVec bx = probe.draw();
    const BitVec by = probe.draw();
    lin_root = probe.linear_at(0, bx, by) && lin_root;
    lin_own = probe.linear_at(own, bx, by) && lin_own;
    lin_up = probe.linear_at(up, bx, by) && lin_up;
  }
  const BitVec c = probe.draw();
  const BitVec e_i = BitVec::basis(n, i);
  detail::note(first, lin_root, CheckId::kRootLinearity);
  detail::note(first, !probe.read(0, e_i, c), CheckId::kRootBit);
  detail::note(first, probe.read(0, BitVec::ones(n), c), CheckId::kRootParity);
  detail::note(first, lin_own && lin_up, CheckId::kTreeLinearity);
  const bool step_own = probe.read(own, e_i, c);
  const bool step_up = probe.read(up, e_i, c);
  detail::note(first, step_own ^ step_up, CheckId::kTreeStep);
  BitVec r = probe.draw();
  r.reset(i);
  const bool anc_own = probe.read(own, r, c);
  const bool anc_up = probe.read(up, r, c);
  detail::note(first, !(anc_own ^ anc_up), CheckId::kTreeAncestry);
  return out;
}

template <class Probe>
PassOutcome node_pass(Probe& probe, const Instance& inst, Vertex i, const ProtocolConfig& cfg) {
  switch (cfg.language) {
    case LanguageId::kNonbipartite: return nonbipartite_pass(probe, inst, i, cfg.blr_repetitions);
    case LanguageId::kLeader: return leader_pass(probe, inst, i, cfg.blr_repetitions);
    case LanguageId::kSpan: return span_pass(probe, inst, i, cfg.blr_repetitions);
  }
  throw UsageError("unknown language");
}

/// Probe backed by a query-counting oracle session.
class SessionProbe {
 public:
  explicit SessionProbe(OracleSession& session) : session_(&session) {}

  bool linearity(std::size_t part, unsigned reps) {
    return session_->blr_linearity_test(part, reps);
  }
  bool linear_at(std::size_t part, const BitVec& x, const BitVec& y) {
    const bool fx = session_->query(part, x);
    const bool fy = session_->query(part, y);
    return (fx ^ fy) == session_->query(part, x ^ y);
  }
  BitVec draw() { return session_->random_vector(); }
  bool read(std::size_t part, const BitVec& v, const BitVec& s) {
    return session_->corrected_read(part, v, s);
  }
  bool corrected(std::size_t part, const BitVec& v) {
    return session_->self_corrected_query(part, v);
  }

 private:
  OracleSession* session_;
};

inline void check_proof_shape(const Instance& inst, const MultiProof& proof, LanguageId lang) {
  if (proof.dim() != inst.size()) {
    throw ProtocolError("proof dimension " + std::to_string(proof.dim()) +
                        " does not match vertex count " + std::to_string(inst.size()));
  }
  if (proof.part_count() != proof_part_count(lang, inst.size())) {
    throw ProtocolError("proof has " + std::to_string(proof.part_count()) + " parts, " +
                        std::string(to_string(lang)) + " expects " +
                        std::to_string(proof_part_count(lang, inst.size())));
  }
}

/// Session seed of node `i` in pass `pass` of a run with seed `seed`.
inline std::uint64_t node_seed(std::uint64_t seed, Vertex i, unsigned pass) {
  return split_seed(seed, {i, pass});
}

/// Combines a node's pass outcome with the exchange result into a verdict.
inline CheckId resolve_pass(const PassOutcome& o, bool neighbors_ok) {
  if (o.before != CheckId::kNone) return o.before;
  if (!neighbors_ok) return CheckId::kNeighbors;
  return o.after;
}

/// One simulated run: every node gets its own session, passes run in order,
/// nonbipartite nodes exchange their a-values once per pass.
inline RunReport run_protocol(const Instance& inst, const MultiProof& proof,
                              const ProtocolConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  check_proof_shape(inst, proof, cfg.language);
  const std::size_t n = inst.size();
  RunReport report;
  report.nodes.resize(n);
  report.proof_bits = proof.total_bits();
  std::vector<PassOutcome> outcomes(n);
  std::vector<std::optional<bool>> channel(n);
  for (unsigned pass = 0; pass < cfg.verifier_repetitions; ++pass) {
    std::fill(channel.begin(), channel.end(), std::nullopt);
    for (Vertex i = 0; i < n; ++i) {
      OracleSession session(proof, node_seed(seed, i, pass));
      SessionProbe probe(session);
      outcomes[i] = node_pass(probe, inst, i, cfg);
      report.nodes[i].query_count += session.query_count();
      report.nodes[i].random_bits_used += session.random_bits_used();
      if (cfg.language == LanguageId::kNonbipartite) channel[i] = outcomes[i].published;
    }
    // Barrier: every node has published before any node reads the channel.
    for (Vertex i = 0; i < n; ++i) {
      const bool neighbors_ok = cfg.language != LanguageId::kNonbipartite ||
                                nonbipartite_neighbor_predicate(inst.graph, i, channel);
      const CheckId failed = resolve_pass(outcomes[i], neighbors_ok);
      auto& node = report.nodes[i];
      if (failed != CheckId::kNone && node.accept) {
        node.accept = false;
        node.failed = failed;
      }
    }
  }
  report.accept = std::all_of(report.nodes.begin(), report.nodes.end(),
                              [](const NodeReport& r) { return r.accept; });
  return report;
}

}  // namespace dpcp
