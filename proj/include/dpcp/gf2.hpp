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

// Hadamard truth tables and query-counted oracle access.
//
// A ProofTable of dimension n holds 2^n bits; entry k is the claimed value of
// the encoded functional at the point whose vertex-j coordinate is bit j of k.
// Verifiers never touch tables directly: they go through an OracleSession,
// which counts every table lookup and every random bit drawn.

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dpcp/bitvec.hpp"
#include "dpcp/errors.hpp"
#include "dpcp/random.hpp"
#include "dpcp/rational.hpp"

namespace dpcp {

inline constexpr std::size_t kDefaultMaxDim = 20;
/// Default cap on the number of randomness points any exact enumeration visits.
inline constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t{1} << 24;

class ProofTable {
 public:
  ProofTable(std::size_t dim, std::vector<std::uint8_t> bits)
      : dim_(dim), bits_(std::move(bits)) {
    if (dim == 0 || dim > 62) throw DimensionError("table dimension out of range");
    if (bits_.size() != (std::size_t{1} << dim)) {
      throw DimensionError("table must hold exactly 2^dim entries");
    }
    for (auto& b : bits_) b = b ? 1 : 0;
  }

  static ProofTable constant(std::size_t dim, bool value) {
    return ProofTable(dim, std::vector<std::uint8_t>(std::size_t{1} << dim, value));
  }

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return bits_.size(); }

  bool at(std::uint64_t index) const {
    if (index >= bits_.size()) throw DimensionError("table index out of range");
    return bits_[index];
  }
  bool at(const BitVec& point) const {
    if (point.size() != dim_) throw DimensionError("query point dimension mismatch");
    return bits_[point.to_index()];
  }

  void set(std::uint64_t index, bool value) {
    if (index >= bits_.size()) throw DimensionError("table index out of range");
    bits_[index] = value;
  }
  void flip(std::uint64_t index) { set(index, !at(index)); }

  const std::vector<std::uint8_t>& bits() const { return bits_; }

  friend bool operator==(const ProofTable&, const ProofTable&) = default;

 private:
  std::size_t dim_;
  std::vector<std::uint8_t> bits_;
};

/// Ordered parts of equal dimension. Single-table protocols use one part; the
/// spanning-tree protocol uses n + 1.
class MultiProof {
 public:
  explicit MultiProof(std::vector<ProofTable> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw DimensionError("proof needs at least one part");
    for (const auto& p : parts_) {
      if (p.dim() != parts_.front().dim()) {
        throw DimensionError("all proof parts must share one dimension");
      }
    }
  }
  explicit MultiProof(ProofTable single) : MultiProof(std::vector<ProofTable>{std::move(single)}) {}

  std::size_t dim() const { return parts_.front().dim(); }
  std::size_t part_count() const { return parts_.size(); }
  const ProofTable& part(std::size_t i) const {
    if (i >= parts_.size()) throw DimensionError("proof part index out of range");
    return parts_[i];
  }
  ProofTable& part(std::size_t i) {
    if (i >= parts_.size()) throw DimensionError("proof part index out of range");
    return parts_[i];
  }
  const std::vector<ProofTable>& parts() const { return parts_; }

  std::uint64_t total_bits() const {
    return static_cast<std::uint64_t>(parts_.size()) * parts_.front().size();
  }

  /// Global bit j lives in part j / 2^dim at index j mod 2^dim.
  bool global_bit(std::uint64_t j) const {
    return parts_.at(j >> dim()).at(j & ((std::uint64_t{1} << dim()) - 1));
  }
  void flip_global_bit(std::uint64_t j) {
    parts_.at(j >> dim()).flip(j & ((std::uint64_t{1} << dim()) - 1));
  }

  friend bool operator==(const MultiProof&, const MultiProof&) = default;

 private:
  std::vector<ProofTable> parts_;
};

/// Had(alpha): the truth table of v -> alpha·v.
inline ProofTable hadamard_encode(const BitVec& alpha, std::size_t max_dim = kDefaultMaxDim) {
  const std::size_t n = alpha.size();
  if (n > max_dim) {
    throw CapacityError("Hadamard dimension " + std::to_string(n) +
                        " exceeds the configured maximum " + std::to_string(max_dim));
  }
  const std::uint64_t mask = alpha.to_index();
  std::vector<std::uint8_t> bits(std::size_t{1} << n);
  for (std::uint64_t k = 0; k < bits.size(); ++k) {
    bits[k] = std::popcount(mask & k) & 1;
  }
  return ProofTable(n, std::move(bits));
}

// ---------------------------------------------------------------------------
// Oracle sessions.

struct QueryEvent {
  std::size_t part;
  std::uint64_t index;
  bool value;
  friend bool operator==(const QueryEvent&, const QueryEvent&) = default;
};

/// Query-counting access to a committed proof for one verifier node.
///
/// Randomness: self-corrections and explicit draws consume the session's main
/// bit stream. Each linearity-test repetition draws from its own sub-stream
/// keyed by (test ordinal, repetition), so raising the repetition count leaves
/// every other coin of the session unchanged.
class OracleSession {
 public:
  OracleSession(const MultiProof& proof, std::uint64_t seed, bool record_transcript = false)
      : proof_(&proof), seed_(seed), coins_(split_seed(seed, {0})),
        record_(record_transcript) {}

  const MultiProof& proof() const { return *proof_; }
  std::size_t dim() const { return proof_->dim(); }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t query_count() const { return queries_; }
  std::uint64_t random_bits_used() const { return random_bits_; }
  const std::vector<QueryEvent>& transcript() const { return transcript_; }

  bool query(std::size_t part, const BitVec& point) {
    return lookup(part, point.to_index());
  }

  bool random_bit() {
    ++random_bits_;
    return coins_.next();
  }

  /// Uniform vector in {0,1}^n; consumes n random bits.
  BitVec random_vector() {
    BitVec v(dim());
    for (std::size_t j = 0; j < dim(); ++j) v.set(j, random_bit());
    return v;
  }

  /// BLR test: per repetition, uniform x, y and a check that
  /// T(x) ⊕ T(y) = T(x ⊕ y). Every repetition runs (3 queries, 2n bits each).
  bool blr_linearity_test(std::size_t part, unsigned repetitions) {
    check_part(part);
    const std::uint64_t ordinal = blr_calls_++;
    bool ok = true;
    const std::size_t n = dim();
    for (unsigned rep = 0; rep < repetitions; ++rep) {
      BitStream stream(split_seed(seed_, {1, ordinal, rep}));
      std::uint64_t x = 0;
      std::uint64_t y = 0;
      for (std::size_t j = 0; j < n; ++j) x |= std::uint64_t{stream.next()} << j;
      for (std::size_t j = 0; j < n; ++j) y |= std::uint64_t{stream.next()} << j;
      random_bits_ += 2 * n;
      const bool fx = lookup(part, x);
      const bool fy = lookup(part, y);
      const bool fxy = lookup(part, x ^ y);
      if ((fx ^ fy) != fxy) ok = false;
    }
    return ok;
  }

  /// π(v ⊕ s) ⊕ π(s) for a caller-supplied s: 2 queries, no coins.
  bool corrected_read(std::size_t part, const BitVec& v, const BitVec& s) {
    const bool a = query(part, v ^ s);
    const bool b = query(part, s);
    return a ^ b;
  }

  /// π(v ⊕ r) ⊕ π(r) for fresh uniform r: 2 queries, n random bits.
  bool self_corrected_query(std::size_t part, const BitVec& v) {
    if (v.size() != dim()) throw DimensionError("query point dimension mismatch");
    check_part(part);
    const BitVec r = random_vector();
    return corrected_read(part, v, r);
  }

 private:
  void check_part(std::size_t part) const {
    if (part >= proof_->part_count()) throw DimensionError("proof part index out of range");
  }

  bool lookup(std::size_t part, std::uint64_t index) {
    ++queries_;
    const bool value = proof_->part(part).at(index);
    if (record_) transcript_.push_back({part, index, value});
    return value;
  }

  const MultiProof* proof_;
  std::uint64_t seed_;
  BitStream coins_;
  bool record_;
  std::uint64_t queries_ = 0;
  std::uint64_t random_bits_ = 0;
  std::uint64_t blr_calls_ = 0;
  std::vector<QueryEvent> transcript_;
};

// ---------------------------------------------------------------------------
// Exact analysis by enumeration of the randomness space.

/// Number of (x, y) pairs passing one BLR repetition, out of 4^n.
inline std::uint64_t blr_passing_pairs(const ProofTable& t,
                                       std::uint64_t budget = kDefaultEnumerationBudget) {
  const std::uint64_t size = t.size();
  if (t.dim() > 31 || size * size > budget) {
    throw CapacityError("BLR randomness space 4^" + std::to_string(t.dim()) +
                        " exceeds the enumeration budget");
  }
  const auto& b = t.bits();
  std::uint64_t pass = 0;
  for (std::uint64_t x = 0; x < size; ++x) {
    for (std::uint64_t y = 0; y < size; ++y) {
      pass += ((b[x] ^ b[y]) == b[x ^ y]);
    }
  }
  return pass;
}

inline Rational blr_pass_probability(const ProofTable& t,
                                     std::uint64_t budget = kDefaultEnumerationBudget) {
  return make_rational(blr_passing_pairs(t, budget), t.size() * t.size());
}

/// Pr_r[π(v ⊕ r) ⊕ π(r) = 1] over all 2^n values of r.
inline Rational corrected_one_probability(const ProofTable& t, std::uint64_t v,
                                          std::uint64_t budget = kDefaultEnumerationBudget) {
  if (t.size() > budget) throw CapacityError("correction space exceeds the enumeration budget");
  const auto& b = t.bits();
  std::uint64_t ones = 0;
  for (std::uint64_t r = 0; r < t.size(); ++r) ones += b[v ^ r] ^ b[r];
  return make_rational(ones, t.size());
}

struct BlrTest {
  unsigned repetitions = 1;
};

/// A self-corrected query at `point`, rejecting when the answer differs from
/// `expected`.
struct CorrectedQueryTest {
  BitVec point;
  bool expected;
};

using TableTest = std::variant<BlrTest, CorrectedQueryTest>;

/// Exact probability that `test` rejects `table`. Repetitions of BLR are
/// independent, so one repetition's 4^n space is enumerated and the pass
/// probability raised to the repetition count.
inline Rational exact_rejection_probability(const ProofTable& table, const TableTest& test,
                                            std::uint64_t budget = kDefaultEnumerationBudget) {
  if (const auto* blr = std::get_if<BlrTest>(&test)) {
    if (blr->repetitions == 0) throw UsageError("BLR repetitions must be positive");
    return Rational(1) - pow(blr_pass_probability(table, budget), blr->repetitions);
  }
  const auto& q = std::get<CorrectedQueryTest>(test);
  if (q.point.size() != table.dim()) throw DimensionError("query point dimension mismatch");
  const Rational one = corrected_one_probability(table, q.point.to_index(), budget);
  return q.expected ? Rational(1) - one : one;
}

struct NearestCodeword {
  Rational distance;  // normalized Hamming distance
  BitVec alpha;
};

/// In-place Walsh-Hadamard transform of ±1 values.
inline void walsh_hadamard(std::span<std::int64_t> a) {
  for (std::size_t len = 1; len < a.size(); len <<= 1) {
    for (std::size_t i = 0; i < a.size(); i += len << 1) {
      for (std::size_t j = i; j < i + len; ++j) {
        const std::int64_t u = a[j];
        const std::int64_t v = a[j + len];
        a[j] = u + v;
        a[j + len] = u - v;
      }
    }
  }
}

/// Minimum normalized distance to any Had(alpha), and the smallest alpha (by
/// integer encoding) attaining it. The agreement with every codeword comes
/// from one Walsh-Hadamard transform: corr(alpha) = 2^n - 2·dist(alpha).
inline NearestCodeword distance_to_nearest_linear(const ProofTable& t,
                                                  std::size_t max_dim = kDefaultMaxDim) {
  if (t.dim() > max_dim) throw CapacityError("table dimension exceeds the configured maximum");
  std::vector<std::int64_t> corr(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) corr[k] = t.bits()[k] ? -1 : 1;
  walsh_hadamard(corr);
  std::size_t best = 0;
  for (std::size_t a = 1; a < corr.size(); ++a) {
    if (corr[a] > corr[best]) best = a;
  }
  const auto size = static_cast<std::int64_t>(t.size());
  const auto dist = static_cast<std::uint64_t>((size - corr[best]) / 2);
  return {make_rational(dist, t.size()), BitVec::from_index(t.dim(), best)};
}

}  // namespace dpcp
