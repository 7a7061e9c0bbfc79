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

// Acceptance-probability measurement.
//
// Exact mode enumerates outcome paths per node (see exact.hpp) and combines
// nodes: nodes draw independent coins, so given the published a-values
// (nonbipartite only) their decisions are independent and the global
// acceptance probability is
//
//   Σ_a  Π_i Pr[node i publishes a_i and passes its local checks]
//        · [every node's neighbor predicate holds under a]
//
// and Π_i Pr[node i passes] for the exchange-free protocols. Passes are
// independent full runs, so k verifier repetitions give p^k.
//
// Monte Carlo mode repeats run_protocol with trial seeds split from one
// experiment seed and reports a 95% Wilson score interval.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dpcp/errors.hpp"
#include "dpcp/exact.hpp"
#include "dpcp/gf2.hpp"
#include "dpcp/graph.hpp"
#include "dpcp/protocols.hpp"
#include "dpcp/prover.hpp"
#include "dpcp/rational.hpp"

namespace dpcp {

// ---------------------------------------------------------------------------
// Parameters and budgets.

/// The (c, s, l, r, q) tuple of a distributed PCP: completeness, soundness,
/// proof length in bits, random bits per verifier, queries per verifier.
struct DPCPParams {
  Rational completeness = 1;
  Rational soundness = Rational(1, 2);
  std::uint64_t proof_length = 0;
  std::uint64_t random_bits = 0;
  std::uint64_t queries = 0;

  void validate() const {
    if (!(soundness >= 0 && soundness < completeness && completeness <= 1)) {
      throw UsageError("need 0 <= s < c <= 1");
    }
  }
};

/// Documented parameters of a protocol on n vertices at `cfg`.
inline DPCPParams documented_params(const ProtocolConfig& cfg, std::size_t n) {
  DPCPParams p;
  p.proof_length = proof_bit_length(cfg.language, n);
  p.random_bits = random_bit_budget(cfg, n);
  p.queries = query_budget(cfg);
  return p;
}

/// True iff every node stays within q queries and r random bits and the proof
/// fits in l bits.
inline bool verify_budgets(const RunReport& report, const DPCPParams& params) {
  if (report.proof_bits > params.proof_length) return false;
  return std::all_of(report.nodes.begin(), report.nodes.end(), [&](const NodeReport& node) {
    return node.query_count <= params.queries && node.random_bits_used <= params.random_bits;
  });
}

// ---------------------------------------------------------------------------
// Exact backend.

struct ExactAcceptance {
  Rational probability;       // over all verifier passes
  Rational pass_probability;  // one pass
  std::uint64_t paths = 0;    // outcome paths enumerated
};

namespace detail {

/// Σ over a-vectors with nonzero weight of Π_i weight_i(a_i) · [predicates].
inline Rational combine_exchange(const Graph& g, const std::vector<std::array<Rational, 2>>& weight,
                                 std::uint64_t budget, std::uint64_t& leaves) {
  const std::size_t n = g.size();
  // Vertex v's predicate is decidable once v and all its neighbors are set.
  std::vector<std::vector<Vertex>> ready(n);
  for (Vertex v = 0; v < n; ++v) {
    Vertex last = v;
    for (Vertex j : g.neighbors(v)) last = std::max(last, j);
    ready[last].push_back(v);
  }
  std::vector<std::optional<bool>> a(n);
  Rational total = 0;
  auto rec = [&](auto&& self, Vertex k, const Rational& w) -> void {
    if (k == n) {
      if (++leaves > budget) throw CapacityError("exchange enumeration exceeds the budget");
      total += w;
      return;
    }
    for (int bit = 0; bit < 2; ++bit) {
      if (weight[k][bit] == 0) continue;
      a[k] = bit == 1;
      bool ok = true;
      for (Vertex v : ready[k]) {
        if (!nonbipartite_neighbor_predicate(g, v, a)) {
          ok = false;
          break;
        }
      }
      if (ok) self(self, k + 1, w * weight[k][bit]);
    }
    a[k].reset();
  };
  rec(rec, 0, Rational(1));
  return total;
}

}  // namespace detail

/// Exact probability that every node accepts.
inline ExactAcceptance exact_acceptance(const Instance& inst, const MultiProof& proof,
                                        const ProtocolConfig& cfg,
                                        std::uint64_t budget = kDefaultEnumerationBudget) {
  cfg.validate();
  check_proof_shape(inst, proof, cfg.language);
  const std::size_t n = inst.size();
  ExactStats stats(proof, budget);
  ExactProbe probe(stats, budget);
  ExactAcceptance out;
  Rational pass = 1;
  std::vector<std::array<Rational, 2>> published(n, {Rational(0), Rational(0)});
  for (Vertex i = 0; i < n; ++i) {
    Rational ok = 0;
    out.paths += probe.for_each_path([&] {
      const PassOutcome o = node_pass(probe, inst, i, cfg);
      if (!o.local_ok()) return;
      ok += probe.weight();
      published[i][o.published ? 1 : 0] += probe.weight();
    });
    if (out.paths > budget) throw CapacityError("outcome paths exceed the enumeration budget");
    if (cfg.language != LanguageId::kNonbipartite) {
      pass *= ok;
      if (pass == 0) break;
    }
  }
  if (cfg.language == LanguageId::kNonbipartite) {
    std::uint64_t leaves = 0;
    pass = detail::combine_exchange(inst.graph, published, budget, leaves);
    out.paths += leaves;
  }
  out.pass_probability = pass;
  out.probability = pow(pass, cfg.verifier_repetitions);
  return out;
}

inline Rational exact_acceptance_probability(const Instance& inst, const MultiProof& proof,
                                             const ProtocolConfig& cfg,
                                             std::uint64_t budget = kDefaultEnumerationBudget) {
  return exact_acceptance(inst, proof, cfg, budget).probability;
}

// ---------------------------------------------------------------------------
// Monte Carlo backend.

struct Interval {
  double low;
  double high;
};

inline constexpr double kZ95 = 1.959963984540054;

/// Wilson score interval for `successes` out of `trials`.
inline Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kZ95) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
  // Clamp the floating-point residue at the boundaries.
  const double low = successes == 0 ? 0.0 : std::max(0.0, center - half);
  const double high = successes == trials ? 1.0 : std::min(1.0, center + half);
  return {low, high};
}

struct MonteCarloEstimate {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double estimate = 0;
  Interval interval{0, 1};
  std::uint64_t max_queries = 0;
  std::uint64_t max_random_bits = 0;

  double width() const { return interval.high - interval.low; }
};

/// Seed of trial `t` in an experiment with seed `seed`.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t t) {
  return split_seed(seed, {0x7121A1, t});
}

inline unsigned default_jobs() {
  if (const char* env = std::getenv("DPCP_JOBS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

/// Runs `trials` independent protocol runs. Deterministic per seed regardless
/// of `jobs`: trial t always uses trial_seed(seed, t).
inline MonteCarloEstimate estimate_acceptance_probability(const Instance& inst,
                                                          const MultiProof& proof,
                                                          const ProtocolConfig& cfg,
                                                          std::uint64_t trials, std::uint64_t seed,
                                                          unsigned jobs = 1) {
  if (trials < 100) throw UsageError("Monte Carlo estimates need at least 100 trials");
  cfg.validate();
  check_proof_shape(inst, proof, cfg.language);
  jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(trials)));
  struct Partial {
    std::uint64_t successes = 0, max_q = 0, max_r = 0;
  };
  std::vector<Partial> partial(jobs);
  auto work = [&](unsigned job) {
    Partial& acc = partial[job];
    for (std::uint64_t t = job; t < trials; t += jobs) {
      const RunReport r = run_protocol(inst, proof, cfg, trial_seed(seed, t));
      acc.successes += r.accept;
      acc.max_q = std::max(acc.max_q, r.max_queries());
      acc.max_r = std::max(acc.max_r, r.max_random_bits());
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work, j);
    for (auto& t : pool) t.join();
  }
  MonteCarloEstimate est;
  est.trials = trials;
  for (const auto& p : partial) {
    est.successes += p.successes;
    est.max_queries = std::max(est.max_queries, p.max_q);
    est.max_random_bits = std::max(est.max_random_bits, p.max_r);
  }
  est.estimate = static_cast<double>(est.successes) / static_cast<double>(trials);
  est.interval = wilson_interval(est.successes, trials);
  return est;
}

// ---------------------------------------------------------------------------
// Soundness reports.

enum class MeasureMode { kAuto, kExact, kMonteCarlo };

inline std::string_view to_string(MeasureMode m) {
  switch (m) {
    case MeasureMode::kAuto: return "auto";
    case MeasureMode::kExact: return "exact";
    case MeasureMode::kMonteCarlo: return "monte_carlo";
  }
  return "?";
}

struct SoundnessReport {
  MeasureMode mode = MeasureMode::kExact;
  std::optional<Rational> max_acceptance;      // exact mode
  std::optional<MonteCarloEstimate> estimate;  // Monte Carlo mode
  std::string argmax;                          // strategy text of the maximizing proof
  std::uint64_t enumerated = 0;                // proofs enumerated or trials run
};

/// Default cap on proofs enumerated by exhaustive certification.
inline constexpr std::uint64_t kDefaultProofBudget = std::uint64_t{1} << 20;

/// Maximum exact acceptance probability over every possible proof string.
inline SoundnessReport certify_soundness_exhaustive(
    const Instance& inst, LanguageId lang, ProtocolConfig cfg,
    std::uint64_t proof_budget = kDefaultProofBudget,
    std::uint64_t budget = kDefaultEnumerationBudget) {
  cfg.language = lang;
  const std::uint64_t bits = proof_bit_length(lang, inst.size());
  if (bits > 32 || (std::uint64_t{1} << bits) > proof_budget) {
    throw CapacityError(std::to_string(bits) + "-bit proofs are beyond exhaustive reach");
  }
  SoundnessReport report;
  report.mode = MeasureMode::kExact;
  report.max_acceptance = Rational(-1);
  const std::uint64_t count = std::uint64_t{1} << bits;
  AdversaryStrategy s;
  s.kind = AdversaryStrategy::Kind::kExhaustive;
  for (std::uint64_t k = 0; k < count; ++k) {
    s.index = k;
    const MultiProof proof = adversarial_proof(inst, lang, s);
    const Rational p = exact_acceptance_probability(inst, proof, cfg, budget);
    if (p > *report.max_acceptance) {
      report.max_acceptance = p;
      report.argmax = s.text();
    }
  }
  report.enumerated = count;
  return report;
}

// ---------------------------------------------------------------------------
// Sweeps and CSV output.

struct SweepInstance {
  std::string id;
  Instance instance;
};

struct SweepSpec {
  LanguageId language = LanguageId::kNonbipartite;
  std::vector<SweepInstance> instances;
  std::vector<AdversaryStrategy> adversaries;
  std::vector<unsigned> blr_grid{1};
  std::vector<unsigned> verifier_grid{1};
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  MeasureMode mode = MeasureMode::kAuto;
  unsigned jobs = 1;
  std::uint64_t budget = kDefaultEnumerationBudget;
};

/// One CSV row.
struct SweepCell {
  std::string language;
  std::string instance_id;
  std::size_t n = 0;
  std::string adversary;
  unsigned blr_reps = 1;
  unsigned verifier_reps = 1;
  MeasureMode mode = MeasureMode::kExact;
  std::optional<Rational> exact;
  double acceptance = 0;
  Interval interval{0, 0};
  std::uint64_t max_queries = 0;
  std::uint64_t max_random_bits = 0;
  std::uint64_t proof_bits = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

/// Seed shared by every cell of one instance, so cells differing only in the
/// adversary or the repetition grid see matched coins.
inline std::uint64_t instance_seed(std::uint64_t seed, std::size_t instance_index) {
  return split_seed(seed, {0x1257, instance_index});
}

/// Measures one (instance, proof, cfg) cell.
inline SweepCell measure_cell(const Instance& inst, const MultiProof& proof,
                              const ProtocolConfig& cfg, MeasureMode mode, std::uint64_t trials,
                              std::uint64_t seed, unsigned jobs, std::uint64_t budget) {
  SweepCell cell;
  cell.language = std::string(to_string(cfg.language));
  cell.n = inst.size();
  cell.blr_reps = cfg.blr_repetitions;
  cell.verifier_reps = cfg.verifier_repetitions;
  cell.proof_bits = proof.total_bits();
  if (mode != MeasureMode::kMonteCarlo) {
    try {
      const ExactAcceptance ex = exact_acceptance(inst, proof, cfg, budget);
      const RunReport probe_run = run_protocol(inst, proof, cfg, seed);
      cell.mode = MeasureMode::kExact;
      cell.exact = ex.probability;
      cell.acceptance = to_double(ex.probability);
      cell.interval = {cell.acceptance, cell.acceptance};
      cell.max_queries = probe_run.max_queries();
      cell.max_random_bits = probe_run.max_random_bits();
      cell.trials = ex.paths;
      return cell;
    } catch (const CapacityError&) {
      if (mode == MeasureMode::kExact) throw;
    }
  }
  const MonteCarloEstimate est = estimate_acceptance_probability(inst, proof, cfg, trials, seed, jobs);
  cell.mode = MeasureMode::kMonteCarlo;
  cell.acceptance = est.estimate;
  cell.interval = est.interval;
  cell.max_queries = est.max_queries;
  cell.max_random_bits = est.max_random_bits;
  cell.trials = est.trials;
  return cell;
}

/// Every (instance, adversary, blr, verifier) cell in that nesting order.
inline std::vector<SweepCell> soundness_sweep(const SweepSpec& plan) {
  if (plan.instances.empty() || plan.adversaries.empty() || plan.blr_grid.empty() ||
      plan.verifier_grid.empty()) {
    throw UsageError("sweep suites must be non-empty");
  }
  std::vector<SweepCell> cells;
  for (std::size_t ii = 0; ii < plan.instances.size(); ++ii) {
    const auto& [id, inst] = plan.instances[ii];
    const std::uint64_t cell_seed = instance_seed(plan.seed, ii);
    for (AdversaryStrategy adv : plan.adversaries) {
      const std::string adv_text = adv.text();
      if (!adv.seed) adv.seed = plan.seed;
      const MultiProof proof = adversarial_proof(inst, plan.language, adv);
      for (unsigned blr : plan.blr_grid) {
        for (unsigned vr : plan.verifier_grid) {
          const ProtocolConfig cfg{plan.language, blr, vr};
          SweepCell cell = measure_cell(inst, proof, cfg, plan.mode, plan.trials, cell_seed,
                                        plan.jobs, plan.budget);
          cell.instance_id = id;
          cell.adversary = adv_text;
          cell.seed = plan.seed;
          cells.push_back(std::move(cell));
        }
      }
    }
  }
  return cells;
}

inline constexpr const char* kCsvHeader =
    "language,instance_id,n,adversary,blr_reps,verifier_reps,mode,acceptance,ci_low,ci_high,"
    "max_queries,max_random_bits,proof_bits,trials,seed";

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string fixed6(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(6) << v;
  return out.str();
}

}  // namespace detail

inline void write_csv(std::ostream& out, const std::vector<SweepCell>& cells) {
  out << kCsvHeader << '\n';
  for (const auto& c : cells) {
    std::string acc, lo, hi;
    if (c.exact) {
      acc = lo = hi = to_fraction_string(*c.exact);
    } else {
      acc = detail::fixed6(c.acceptance);
      lo = detail::fixed6(c.interval.low);
      hi = detail::fixed6(c.interval.high);
    }
    out << detail::csv_field(c.language) << ',' << detail::csv_field(c.instance_id) << ',' << c.n
        << ',' << detail::csv_field(c.adversary) << ',' << c.blr_reps << ',' << c.verifier_reps
        << ',' << to_string(c.mode) << ',' << acc << ',' << lo << ',' << hi << ','
        << c.max_queries << ',' << c.max_random_bits << ',' << c.proof_bits << ',' << c.trials
        << ',' << c.seed << '\n';
  }
}

}  // namespace dpcp
