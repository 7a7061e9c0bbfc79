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

// Exact analysis of the verifier programs in protocols.hpp.
//
// ExactProbe runs a node program once per outcome path. Every primitive is a
// choice point over its distinct outcomes, weighted by probabilities obtained
// by enumerating that primitive's own randomness:
//
//   linearity(part, k)   pass / fail      Pr[pass] = (passing pairs / 4^n)^k
//   corrected(part, v)   1 / 0            Pr[1] = #{r : π(v⊕r)⊕π(r) = 1} / 2^n
//   draw()               each of 2^n vectors, 1/2^n each
//   linear_at(part, x, y) deterministic
//   read(part, v, s)     deterministic
//
// Outcomes with probability 0 or 1 are not choice points. Paths are replayed
// depth-first: a trail records the branch taken at each choice point, and the
// next path bumps the deepest choice point that still has branches left.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "dpcp/bitvec.hpp"
#include "dpcp/errors.hpp"
#include "dpcp/gf2.hpp"
#include "dpcp/rational.hpp"

namespace dpcp {

/// Per-proof cache of the exact primitive probabilities.
class ExactStats {
 public:
  ExactStats(const MultiProof& proof, std::uint64_t budget = kDefaultEnumerationBudget)
      : proof_(&proof), budget_(budget), blr_(proof.part_count()) {}

  const MultiProof& proof() const { return *proof_; }

  const Rational& blr_pass(std::size_t part) {
    auto& slot = blr_.at(part);
    if (!slot) slot = blr_pass_probability(proof_->part(part), budget_);
    return *slot;
  }

  const Rational& corrected_one(std::size_t part, std::uint64_t v) {
    auto [it, inserted] = ones_.try_emplace({part, v});
    if (inserted) it->second = corrected_one_probability(proof_->part(part), v, budget_);
    return it->second;
  }

 private:
  const MultiProof* proof_;
  std::uint64_t budget_;
  std::vector<std::optional<Rational>> blr_;
  std::map<std::pair<std::size_t, std::uint64_t>, Rational> ones_;
};

class ExactProbe {
 public:
  explicit ExactProbe(ExactStats& stats, std::uint64_t path_budget = kDefaultEnumerationBudget)
      : stats_(&stats), path_budget_(path_budget) {}

  /// Calls `body()` once per outcome path; inside the body, weight() is the
  /// probability of the current path. Returns the number of paths.
  template <class Body>
  std::uint64_t for_each_path(Body&& body) {
    trail_.clear();
    std::uint64_t paths = 0;
    for (;;) {
      pos_ = 0;
      weight_ = 1;
      body();
      if (++paths > path_budget_) throw CapacityError("outcome paths exceed the enumeration budget");
      total_paths_ += 1;
      while (!trail_.empty() && trail_.back().chosen + 1 == trail_.back().count) trail_.pop_back();
      if (trail_.empty()) return paths;
      ++trail_.back().chosen;
    }
  }

  const Rational& weight() const { return weight_; }
  std::uint64_t total_paths() const { return total_paths_; }

  bool linearity(std::size_t part, unsigned reps) {
    return choose_bool(pow(stats_->blr_pass(part), reps));
  }

  BitVec draw() {
    const std::size_t n = stats_->proof().dim();
    const std::uint64_t count = std::uint64_t{1} << n;
    const std::uint64_t idx = choose(count);
    weight_ /= count;
    return BitVec::from_index(n, idx);
  }

  bool linear_at(std::size_t part, const BitVec& x, const BitVec& y) const {
    const auto& t = stats_->proof().part(part);
    return (t.at(x) ^ t.at(y)) == t.at(x ^ y);
  }

  bool read(std::size_t part, const BitVec& v, const BitVec& s) const {
    const auto& t = stats_->proof().part(part);
    return t.at(v ^ s) ^ t.at(s);
  }

  bool corrected(std::size_t part, const BitVec& v) {
    return choose_bool(stats_->corrected_one(part, v.to_index()));
  }

 private:
  struct Choice {
    std::uint64_t chosen;
    std::uint64_t count;
  };

  std::uint64_t choose(std::uint64_t count) {
    if (pos_ == trail_.size()) trail_.push_back({0, count});
    return trail_[pos_++].chosen;
  }

  bool choose_bool(const Rational& p_true) {
    if (p_true == 0) return false;
    if (p_true == 1) return true;
    if (choose(2) == 0) {
      weight_ *= p_true;
      return true;
    }
    weight_ *= Rational(1) - p_true;
    return false;
  }

  ExactStats* stats_;
  std::uint64_t path_budget_;
  std::vector<Choice> trail_;
  std::size_t pos_ = 0;
  Rational weight_ = 1;
  std::uint64_t total_paths_ = 0;
};

}  // namespace dpcp
