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
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dpcp/bitvec.hpp"
#include "dpcp/errors.hpp"
#include "dpcp/generate.hpp"
#include "dpcp/gf2.hpp"
#include "dpcp/graph.hpp"
#include "dpcp/random.hpp"

namespace dpcp {

/// Parts in a proof for `lang` over an n-vertex instance.
inline std::size_t proof_part_count(LanguageId lang, std::size_t n) {
  return lang == LanguageId::kSpan ? n + 1 : 1;
}

inline std::uint64_t proof_bit_length(LanguageId lang, std::size_t n) {
  return proof_part_count(lang, n) * (std::uint64_t{1} << n);
}

inline BitVec indicator(std::size_t n, const std::vector<Vertex>& set) {
  BitVec v(n);
  for (Vertex i : set) v.set(i, true);
  return v;
}

// ---------------------------------------------------------------------------
// Honest provers.

inline MultiProof honest_proof_nonbipartite(const Instance& inst) {
  const auto cycle = find_odd_cycle(inst.graph);
  if (!cycle) throw WitnessError("no witness: graph is bipartite");
  return MultiProof(hadamard_encode(indicator(inst.size(), *cycle)));
}

inline BitVec leader_vector(const Instance& inst) {
  BitVec alpha(inst.size());
  for (Vertex i = 0; i < inst.size(); ++i) alpha.set(i, inst.inputs[i] == "1");
  return alpha;
}

inline MultiProof honest_proof_leader(const Instance& inst) {
  if (leader_count(inst) != 1) throw WitnessError("no witness: need exactly one leader");
  return MultiProof(hadamard_encode(leader_vector(inst)));
}

/// Span encoding of an arbitrary parent input: part 0 marks the root-labelled
/// vertices, part 1+i marks every vertex reachable from i along parent
/// pointers, i included. Walks stop at roots, unparseable entries, and
/// revisits, so the result is defined for corrupted inputs too.
inline MultiProof span_encoding(const Instance& inst) {
  const std::size_t n = inst.size();
  std::vector<ProofTable> parts;
  BitVec root(n);
  for (Vertex i = 0; i < n; ++i) root.set(i, inst.inputs[i] == kRootMarker);
  parts.push_back(hadamard_encode(root));
  for (Vertex i = 0; i < n; ++i) {
    BitVec reach(n);
    Vertex cur = i;
    while (!reach.get(cur)) {
      reach.set(cur, true);
      const auto p = parse_parent(inst.inputs[cur], n);
      if (!p) break;
      cur = *p;
    }
    parts.push_back(hadamard_encode(reach));
  }
  return MultiProof(std::move(parts));
}

inline MultiProof honest_proof_span(const Instance& inst) {
  if (!is_valid_spanning_tree(inst)) throw WitnessError("no witness: input is not a spanning tree");
  return span_encoding(inst);
}

inline MultiProof honest_proof(const Instance& inst, LanguageId lang) {
  switch (lang) {
    case LanguageId::kNonbipartite: return honest_proof_nonbipartite(inst);
    case LanguageId::kLeader: return honest_proof_leader(inst);
    case LanguageId::kSpan: return honest_proof_span(inst);
  }
  throw UsageError("unknown language");
}

// ---------------------------------------------------------------------------
// Adversaries.

/// A cheating prover. Text form: `kind[:param]...`, params `key=value` or one
/// bare value for the kind's primary parameter:
///
///   honest
///   uniform_random_table
///   corrupt_honest:count=K | corrupt_honest:fraction=F
///   wrong_witness:auto | wrong_witness:tree | wrong_witness:set=I,J,..
///                      | wrong_witness:parents=P0,P1,..
///   constant:B
///   nonlinear_planted:alpha=I,J,..:flip=K,L,..
///   exhaustive:K
///
/// plus an optional `seed=S` on any kind.
struct AdversaryStrategy {
  enum class Kind {
    kHonest,
    kUniformRandomTable,
    kCorruptHonest,
    kWrongWitness,
    kConstant,
    kNonlinearPlanted,
    kExhaustive,
  };

  Kind kind = Kind::kHonest;
  std::uint64_t flip_count = 0;
  std::optional<double> flip_fraction;
  std::string witness = "auto";
  bool constant_bit = false;
  std::vector<Vertex> base_alpha;
  std::vector<std::uint64_t> perturbation;
  std::uint64_t index = 0;
  std::optional<std::uint64_t> seed;

  static AdversaryStrategy parse(std::string_view text);
  std::string text() const;
};

namespace detail {

inline std::uint64_t parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw StrategyError("bad integer '" + std::string(s) + "'");
  }
  return v;
}

inline std::vector<std::uint64_t> parse_u64_list(std::string_view s) {
  std::vector<std::uint64_t> out;
  if (s.empty()) return out;
  for (auto piece : split(s, ',')) out.push_back(parse_u64(piece));
  return out;
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::ostringstream out;
  for (std::size_t k = 0; k < v.size(); ++k) out << (k ? "," : "") << v[k];
  return out.str();
}

}  // namespace detail

inline AdversaryStrategy AdversaryStrategy::parse(std::string_view text) {
  const auto pieces = detail::split(text, ':');
  AdversaryStrategy s;
  const auto kind = pieces[0];
  if (kind == "honest") {
    s.kind = Kind::kHonest;
  } else if (kind == "uniform_random_table") {
    s.kind = Kind::kUniformRandomTable;
  } else if (kind == "corrupt_honest") {
    s.kind = Kind::kCorruptHonest;
  } else if (kind == "wrong_witness") {
    s.kind = Kind::kWrongWitness;
  } else if (kind == "constant") {
    s.kind = Kind::kConstant;
  } else if (kind == "nonlinear_planted") {
    s.kind = Kind::kNonlinearPlanted;
  } else if (kind == "exhaustive") {
    s.kind = Kind::kExhaustive;
  } else {
    throw StrategyError("unknown adversary kind '" + std::string(kind) + "'");
  }
  bool have_count = false;
  for (std::size_t k = 1; k < pieces.size(); ++k) {
    const auto eq = pieces[k].find('=');
    std::string_view key = eq == std::string_view::npos ? std::string_view{} : pieces[k].substr(0, eq);
    const std::string_view value = eq == std::string_view::npos ? pieces[k] : pieces[k].substr(eq + 1);
    if (key.empty()) {
      switch (s.kind) {
        case Kind::kCorruptHonest: key = "count"; break;
        case Kind::kWrongWitness: key = "witness"; break;
        case Kind::kConstant: key = "bit"; break;
        case Kind::kExhaustive: key = "index"; break;
        default: throw StrategyError("unexpected parameter '" + std::string(value) + "'");
      }
    }
    if (key == "seed") {
      s.seed = detail::parse_u64(value);
    } else if (s.kind == Kind::kCorruptHonest && key == "count") {
      s.flip_count = detail::parse_u64(value);
      have_count = true;
    } else if (s.kind == Kind::kCorruptHonest && key == "fraction") {
      std::istringstream in{std::string(value)};
      double f = -1;
      in >> f;
      if (!in || !in.eof() || f < 0 || f > 1) throw StrategyError("flip fraction must lie in [0,1]");
      s.flip_fraction = f;
    } else if (s.kind == Kind::kWrongWitness && key == "witness") {
      if (value != "auto" && value != "tree") {
        throw StrategyError("unknown witness '" + std::string(value) + "'");
      }
      s.witness = std::string(value);
    } else if (s.kind == Kind::kWrongWitness && (key == "set" || key == "parents")) {
      s.witness = std::string(key) + "=" + std::string(value);
    } else if (s.kind == Kind::kConstant && key == "bit") {
      if (value != "0" && value != "1") throw StrategyError("constant bit must be 0 or 1");
      s.constant_bit = value == "1";
    } else if (s.kind == Kind::kNonlinearPlanted && key == "alpha") {
      for (auto v : detail::parse_u64_list(value)) s.base_alpha.push_back(v);
    } else if (s.kind == Kind::kNonlinearPlanted && key == "flip") {
      s.perturbation = detail::parse_u64_list(value);
    } else if (s.kind == Kind::kExhaustive && key == "index") {
      s.index = detail::parse_u64(value);
    } else {
      throw StrategyError("parameter '" + std::string(key) + "' does not apply to " +
                          std::string(kind));
    }
  }
  if (s.kind == Kind::kCorruptHonest && have_count == s.flip_fraction.has_value()) {
    throw StrategyError("corrupt_honest needs exactly one of count or fraction");
  }
  return s;
}

inline std::string AdversaryStrategy::text() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::kHonest: out << "honest"; break;
    case Kind::kUniformRandomTable: out << "uniform_random_table"; break;
    case Kind::kCorruptHonest:
      out << "corrupt_honest:";
      if (flip_fraction) {
        out << "fraction=" << *flip_fraction;
      } else {
        out << "count=" << flip_count;
      }
      break;
    case Kind::kWrongWitness: out << "wrong_witness:" << witness; break;
    case Kind::kConstant: out << "constant:" << (constant_bit ? 1 : 0); break;
    case Kind::kNonlinearPlanted:
      out << "nonlinear_planted:alpha=" << detail::join(base_alpha)
          << ":flip=" << detail::join(perturbation);
      break;
    case Kind::kExhaustive: out << "exhaustive:" << index; break;
  }
  if (seed) out << ":seed=" << *seed;
  return out.str();
}

namespace detail {

inline std::vector<Vertex> parse_vertex_set(std::string_view s, std::size_t n) {
  std::vector<Vertex> out;
  for (auto v : parse_u64_list(s)) {
    if (v >= n) throw StrategyError("witness vertex " + std::to_string(v) + " out of range");
    out.push_back(v);
  }
  return out;
}

/// Deterministic even-size vertex set used as the default Nonbipartite
/// non-witness: a shortest odd cycle minus its largest vertex when the graph
/// is nonbipartite, otherwise a shortest (necessarily even) cycle, otherwise
/// the two endpoints of the first edge.
inline std::vector<Vertex> default_nonbipartite_nonwitness(const Graph& g) {
  if (auto odd = find_odd_cycle(g)) {
    odd->pop_back();
    return *odd;
  }
  for (std::size_t len = 4; len <= g.size(); len += 2) {
    for (Vertex s = 0; s < g.size(); ++s) {
      std::vector<std::vector<Vertex>> found;
      std::vector<Vertex> path{s};
      std::vector<bool> on_path(g.size(), false);
      on_path[s] = true;
      cycles_from(g, s, len, path, on_path, found);
      if (!found.empty()) return *std::min_element(found.begin(), found.end());
    }
  }
  if (g.size() == 1) return {};
  const auto e = g.edges().front();
  return {e.first, e.second};
}

inline MultiProof wrong_witness_proof(const Instance& inst, LanguageId lang,
                                      const std::string& witness) {
  const std::size_t n = inst.size();
  if (witness.rfind("set=", 0) == 0) {
    if (lang == LanguageId::kSpan) throw StrategyError("set witnesses apply to single-table languages");
    return MultiProof(hadamard_encode(indicator(n, parse_vertex_set(witness.substr(4), n))));
  }
  if (witness.rfind("parents=", 0) == 0) {
    if (lang != LanguageId::kSpan) throw StrategyError("parents witnesses apply to span only");
    const auto entries = split(std::string_view(witness).substr(8), ',');
    if (entries.size() != n) throw StrategyError("parents witness needs one entry per vertex");
    Instance alt(inst.graph, std::vector<std::string>(entries.begin(), entries.end()));
    return span_encoding(alt);
  }
  if (witness == "tree") {
    if (lang != LanguageId::kSpan) throw StrategyError("tree witness applies to span only");
    Instance alt(inst.graph, tree_inputs(bfs_parents(inst.graph, 0)));
    return span_encoding(alt);
  }
  if (witness != "auto") throw StrategyError("unknown witness '" + witness + "'");
  switch (lang) {
    case LanguageId::kNonbipartite:
      return MultiProof(hadamard_encode(indicator(n, default_nonbipartite_nonwitness(inst.graph))));
    case LanguageId::kLeader: {
      leader_count(inst);  // validates the inputs
      return MultiProof(hadamard_encode(leader_vector(inst)));
    }
    case LanguageId::kSpan: return span_encoding(inst);
  }
  throw StrategyError("unknown language");
}

/// Honest proof on yes-instances, the default wrong witness otherwise.
inline MultiProof base_proof(const Instance& inst, LanguageId lang) {
  if (is_member(inst, lang)) return honest_proof(inst, lang);
  return wrong_witness_proof(inst, lang, "auto");
}

}  // namespace detail

/// Builds the committed proof a strategy plays on `inst`. Every strategy works
/// on the flat proof bit string, so all of them apply to every language.
inline MultiProof adversarial_proof(const Instance& inst, LanguageId lang,
                                    const AdversaryStrategy& strategy) {
  using Kind = AdversaryStrategy::Kind;
  const std::size_t n = inst.size();
  if (n > kDefaultMaxDim) throw CapacityError("instance too large for Hadamard proofs");
  const std::size_t parts = proof_part_count(lang, n);
  const std::uint64_t total = proof_bit_length(lang, n);
  const std::uint64_t seed = strategy.seed.value_or(0);
  auto blank = [&] {
    return MultiProof(std::vector<ProofTable>(parts, ProofTable::constant(n, false)));
  };
  switch (strategy.kind) {
    case Kind::kHonest:
      return honest_proof(inst, lang);
    case Kind::kUniformRandomTable: {
      MultiProof p = blank();
      BitStream bits(split_seed(seed, {0xA11CE}));
      for (std::uint64_t j = 0; j < total; ++j) {
        if (bits.next()) p.flip_global_bit(j);
      }
      return p;
    }
    case Kind::kCorruptHonest: {
      MultiProof p = detail::base_proof(inst, lang);
      std::uint64_t flips = strategy.flip_count;
      if (strategy.flip_fraction) {
        flips = static_cast<std::uint64_t>(std::llround(*strategy.flip_fraction * static_cast<double>(total)));
      }
      if (flips > total) throw StrategyError("flip count exceeds proof length");
      // Partial Fisher-Yates: the first `flips` entries of a random permutation.
      std::vector<std::uint64_t> idx(total);
      for (std::uint64_t j = 0; j < total; ++j) idx[j] = j;
      SplitMix64 rng(split_seed(seed, {0xC0BB}));
      for (std::uint64_t k = 0; k < flips; ++k) {
        std::swap(idx[k], idx[k + rng.below(total - k)]);
        p.flip_global_bit(idx[k]);
      }
      return p;
    }
    case Kind::kWrongWitness:
      return detail::wrong_witness_proof(inst, lang, strategy.witness);
    case Kind::kConstant:
      return MultiProof(std::vector<ProofTable>(parts, ProofTable::constant(n, strategy.constant_bit)));
    case Kind::kNonlinearPlanted: {
      const ProofTable base = hadamard_encode(indicator(n, [&] {
        std::vector<Vertex> set;
        for (auto v : strategy.base_alpha) {
          if (v >= n) throw StrategyError("planted alpha vertex out of range");
          set.push_back(v);
        }
        return set;
      }()));
      MultiProof p(std::vector<ProofTable>(parts, base));
      for (auto j : strategy.perturbation) {
        if (j >= total) throw StrategyError("perturbation index beyond proof length");
        p.flip_global_bit(j);
      }
      return p;
    }
    case Kind::kExhaustive: {
      if (total > 32) throw StrategyError("exhaustive strategies need at most 32 proof bits");
      if (strategy.index >> total) throw StrategyError("exhaustive index out of range");
      MultiProof p = blank();
      for (std::uint64_t j = 0; j < total; ++j) {
        if ((strategy.index >> j) & 1U) p.flip_global_bit(j);
      }
      return p;
    }
  }
  throw StrategyError("unknown strategy");
}

}  // namespace dpcp
