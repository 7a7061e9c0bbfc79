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

#include "dpcp/harness.hpp"

#include <gtest/gtest.h>

#include <array>
#include <sstream>
#include <vector>

#include "dpcp/generate.hpp"
#include "dpcp/prover.hpp"

namespace dpcp {
namespace {

constexpr LanguageId kNonbip = LanguageId::kNonbipartite;
constexpr LanguageId kLeader = LanguageId::kLeader;
constexpr LanguageId kSpan = LanguageId::kSpan;

Instance p3(std::vector<std::string> x) { return Instance(Graph(3, {{0, 1}, {1, 2}}), x); }

MultiProof had(std::size_t n, std::uint64_t alpha) {
  return MultiProof(hadamard_encode(BitVec::from_index(n, alpha)));
}

// Raw-coin oracle for n = 3, one BLR repetition, one verifier pass. Each node
// consumes 12 coins; nodes are independent, so per node we count coin strings
// by (local pass, published bit) and combine afterwards.
struct NodeCounts {
  std::array<std::uint64_t, 2> ok{0, 0};  // indexed by the published bit
};

NodeCounts oracle_node(std::uint8_t t, unsigned i, LanguageId lang, bool x_i) {
  auto at = [&](unsigned v) { return ((t >> v) & 1U) != 0; };
  NodeCounts c;
  for (unsigned coins = 0; coins < 4096; ++coins) {
    const unsigned x = coins & 7, y = (coins >> 3) & 7, u = (coins >> 6) & 7, w = (coins >> 9) & 7;
    bool ok = (at(x) ^ at(y)) == at(x ^ y);
    bool pub = false;
    const unsigned e = 1U << i;
    if (lang == kLeader && x_i) {
      ok = ok && (at(e ^ u) ^ at(u));
      const unsigned r = u & ~e;
      ok = ok && !(at(r ^ w) ^ at(w));
    } else {
      pub = at(e ^ u) ^ at(u);
      if (lang == kLeader) ok = ok && !pub;
      ok = ok && (at(7 ^ w) ^ at(w));
    }
    if (ok) ++c.ok[pub];
  }
  return c;
}

Rational oracle_p3(std::uint8_t t, LanguageId lang, const std::array<bool, 3>& x) {
  std::array<NodeCounts, 3> c;
  for (unsigned i = 0; i < 3; ++i) c[i] = oracle_node(t, i, lang, x[i]);
  const Rational unit(1, 4096);
  if (lang == kLeader) {
    Rational p = 1;
    for (const auto& ci : c) p *= Rational(ci.ok[0] + ci.ok[1]) * unit;
    return p;
  }
  Rational total = 0;
  for (unsigned a = 0; a < 8; ++a) {
    const bool a0 = a & 1, a1 = (a >> 1) & 1, a2 = (a >> 2) & 1;
    // Path 0-1-2: node 1 has two neighbors, the ends have one each.
    if (a0 || a2) continue;
    if (a1 && !(a0 && a2)) continue;
    Rational w = 1;
    for (unsigned i = 0; i < 3; ++i) w *= Rational(c[i].ok[(a >> i) & 1]) * unit;
    total += w;
  }
  return total;
}

TEST(ExactTest, Examples) {
  const Instance c5 = generate("cycle:5", 0);
  EXPECT_EQ(exact_acceptance_probability(c5, honest_proof(c5, kNonbip), ProtocolConfig{kNonbip}), 1);
  const Instance c4 = generate("cycle:4", 0);
  EXPECT_EQ(exact_acceptance_probability(c4, had(4, 0b1111), ProtocolConfig{kNonbip}), 0);
  const Instance none = p3({"0", "0", "0"});
  const MultiProof zero(ProofTable::constant(3, false));
  EXPECT_LT(exact_acceptance_probability(none, zero, ProtocolConfig{kLeader}), Rational(1, 2));
  EXPECT_EQ(exact_acceptance_probability(none, zero, ProtocolConfig{kLeader}), 0);
}

TEST(ExactTest, MatchesRawCoinOracleOnEveryP3Table) {
  const std::array<bool, 3> none{false, false, false}, two{true, false, true}, one{false, true, false};
  for (unsigned t = 0; t < 256; ++t) {
    AdversaryStrategy s;
    s.kind = AdversaryStrategy::Kind::kExhaustive;
    s.index = t;
    const Instance bip = p3({"0", "0", "0"});
    const MultiProof proof = adversarial_proof(bip, kNonbip, s);
    ASSERT_EQ(exact_acceptance_probability(bip, proof, ProtocolConfig{kNonbip}),
              oracle_p3(static_cast<std::uint8_t>(t), kNonbip, none))
        << t;
    for (const auto& x : {none, two, one}) {
      const Instance li = p3({x[0] ? "1" : "0", x[1] ? "1" : "0", x[2] ? "1" : "0"});
      ASSERT_EQ(exact_acceptance_probability(li, proof, ProtocolConfig{kLeader}),
                oracle_p3(static_cast<std::uint8_t>(t), kLeader, x))
          << t;
    }
  }
}

TEST(ExactTest, VerifierRepetitionIsAPower) {
  const Instance two = p3({"1", "1", "0"});
  auto adv = AdversaryStrategy::parse("uniform_random_table");
  adv.seed = 4;
  const MultiProof p = adversarial_proof(two, kLeader, adv);
  const Rational one = exact_acceptance_probability(two, p, ProtocolConfig{kLeader});
  EXPECT_EQ(exact_acceptance_probability(two, p, ProtocolConfig{kLeader, 1, 3}), one * one * one);
}

TEST(ExactTest, BudgetOverflowIsCapacityError) {
  const Instance c8 = generate("cycle:8/leader=0,4", 0);
  auto adv = AdversaryStrategy::parse("uniform_random_table");
  adv.seed = 1;
  const MultiProof p = adversarial_proof(c8, kLeader, adv);
  EXPECT_THROW(exact_acceptance(c8, p, ProtocolConfig{kLeader}, 10), CapacityError);
}

TEST(WilsonTest, KnownValues) {
  const Interval zero = wilson_interval(0, 100);
  EXPECT_EQ(zero.low, 0.0);
  EXPECT_NEAR(zero.high, kZ95 * kZ95 / (100 + kZ95 * kZ95), 1e-12);
  const Interval all = wilson_interval(100, 100);
  EXPECT_EQ(all.high, 1.0);
  EXPECT_NEAR(all.low, 100 / (100 + kZ95 * kZ95), 1e-12);
  const Interval half = wilson_interval(500, 1000);
  EXPECT_NEAR(half.low + half.high, 1.0, 1e-12);
  EXPECT_NEAR(half.high - half.low, 0.0619, 1e-3);
  EXPECT_EQ(wilson_interval(0, 0).high, 1.0);
}

TEST(MonteCarloTest, AgreesWithExact) {
  struct Case {
    Instance inst;
    LanguageId lang;
    std::string adv;
  };
  const std::vector<Case> cases = {
      {generate("cycle:4", 0), kNonbip, "uniform_random_table"},
      {generate("cycle:5", 0), kNonbip, "corrupt_honest:count=4"},
      {p3({"1", "0", "1"}), kLeader, "corrupt_honest:count=1"},
      {generate("path:4/span=tree", 2), kSpan, "corrupt_honest:count=3"},
      {generate("complete:3/span=two-roots", 1), kSpan, "uniform_random_table"},
      {generate("path:4/span=cycle", 5), kSpan, "corrupt_honest:count=2"},
  };
  std::uint64_t seed = 10;
  for (const auto& c : cases) {
    auto adv = AdversaryStrategy::parse(c.adv);
    adv.seed = seed;
    const MultiProof p = adversarial_proof(c.inst, c.lang, adv);
    const ProtocolConfig cfg{c.lang};
    const double exact = to_double(exact_acceptance_probability(c.inst, p, cfg));
    const MonteCarloEstimate est = estimate_acceptance_probability(c.inst, p, cfg, 100000, seed++);
    EXPECT_LE(est.interval.low, exact) << c.adv;
    EXPECT_GE(est.interval.high, exact) << c.adv;
    EXPECT_LT(est.width(), 0.01);
  }
}

TEST(MonteCarloTest, UniformTableOnEvenCycle) {
  const Instance c4 = generate("cycle:4", 0);
  auto adv = AdversaryStrategy::parse("uniform_random_table");
  adv.seed = 0;
  const MultiProof p = adversarial_proof(c4, kNonbip, adv);
  const MonteCarloEstimate est = estimate_acceptance_probability(c4, p, ProtocolConfig{kNonbip}, 10000, 0);
  EXPECT_EQ(est.trials, 10000U);
  EXPECT_LT(est.width(), 0.02);
  EXPECT_LT(est.interval.low, 0.5);
  EXPECT_EQ(est.max_queries, 7U);
  EXPECT_EQ(est.max_random_bits, 16U);
}

TEST(MonteCarloTest, DeterministicAcrossJobCounts) {
  const Instance inst = generate("random:8:0.3/nonbip=yes", 3);
  auto adv = AdversaryStrategy::parse("corrupt_honest:fraction=0.05");
  adv.seed = 3;
  const MultiProof p = adversarial_proof(inst, kNonbip, adv);
  const auto a = estimate_acceptance_probability(inst, p, ProtocolConfig{kNonbip}, 3000, 8, 1);
  const auto b = estimate_acceptance_probability(inst, p, ProtocolConfig{kNonbip}, 3000, 8, 3);
  EXPECT_EQ(a.successes, b.successes);
  EXPECT_THROW(estimate_acceptance_probability(inst, p, ProtocolConfig{kNonbip}, 99, 8), UsageError);
}

TEST(BudgetTest, Examples) {
  const Instance c5 = generate("cycle:5", 0);
  const RunReport r = run_protocol(c5, honest_proof(c5, kNonbip), ProtocolConfig{kNonbip}, 0);
  DPCPParams params;
  params.proof_length = 32;
  params.random_bits = 40;
  params.queries = 7;
  EXPECT_TRUE(verify_budgets(r, params));
  params.queries = 6;
  EXPECT_FALSE(verify_budgets(r, params));
  params.queries = 7;
  params.proof_length = 31;
  EXPECT_FALSE(verify_budgets(r, params));

  const Instance k3(generate("complete:3", 0).graph, {"1", "root", "1"});
  const ProtocolConfig span{kSpan};
  const RunReport rs = run_protocol(k3, honest_proof(k3, kSpan), span, 0);
  const DPCPParams doc = documented_params(span, 3);
  EXPECT_EQ(doc.proof_length, 32U);
  EXPECT_TRUE(verify_budgets(rs, doc));

  DPCPParams bad;
  bad.soundness = 1;
  EXPECT_THROW(bad.validate(), UsageError);
}

TEST(CertifyTest, FrozenP3Maxima) {
  const Instance bip = p3({"0", "0", "0"});
  const SoundnessReport nb = certify_soundness_exhaustive(bip, kNonbip, ProtocolConfig{});
  EXPECT_EQ(nb.enumerated, 256U);
  EXPECT_EQ(*nb.max_acceptance, Rational(125, 4096));
  EXPECT_EQ(nb.argmax, "exhaustive:142");
  EXPECT_LE(*nb.max_acceptance, Rational(1, 2));

  const SoundnessReport none = certify_soundness_exhaustive(bip, kLeader, ProtocolConfig{});
  EXPECT_EQ(*none.max_acceptance, Rational(125, 4096));
  const SoundnessReport two = certify_soundness_exhaustive(p3({"1", "0", "1"}), kLeader, ProtocolConfig{});
  EXPECT_EQ(*two.max_acceptance, Rational(547515, 16777216));
  EXPECT_EQ(two.argmax, "exhaustive:186");

  // Independent check of the maxima with the raw-coin oracle.
  Rational m_nb = 0, m_two = 0;
  for (unsigned t = 0; t < 256; ++t) {
    m_nb = std::max(m_nb, oracle_p3(static_cast<std::uint8_t>(t), kNonbip, {false, false, false}));
    m_two = std::max(m_two, oracle_p3(static_cast<std::uint8_t>(t), kLeader, {true, false, true}));
  }
  EXPECT_EQ(m_nb, *nb.max_acceptance);
  EXPECT_EQ(m_two, *two.max_acceptance);
}

TEST(CertifyTest, MonotoneInBlrRepetitions) {
  const Instance bip = p3({"0", "0", "0"});
  const Rational k2(35972721027, 4398046511104);
  EXPECT_EQ(*certify_soundness_exhaustive(bip, kNonbip, ProtocolConfig{kNonbip, 2, 1}).max_acceptance, k2);
  EXPECT_LE(k2, Rational(125, 4096));
  const Rational two_k2 =
      *certify_soundness_exhaustive(p3({"1", "0", "1"}), kLeader, ProtocolConfig{kLeader, 2, 1})
           .max_acceptance;
  EXPECT_EQ(two_k2, Rational(6661615005, 549755813888));
}

TEST(CertifyTest, SingleVertexAndCapacity) {
  const Instance lone(Graph(1, {}), {"0"});
  EXPECT_EQ(*certify_soundness_exhaustive(lone, kLeader, ProtocolConfig{}).max_acceptance, 0);
  EXPECT_EQ(*certify_soundness_exhaustive(lone, kNonbip, ProtocolConfig{}).max_acceptance, 0);
  EXPECT_THROW(certify_soundness_exhaustive(generate("cycle:6", 0), kNonbip, ProtocolConfig{}),
               CapacityError);
}

SweepSpec small_plan() {
  SweepSpec plan;
  plan.language = kNonbip;
  plan.instances = {{"c4", generate("cycle:4", 0)}, {"c6", generate("cycle:6", 0)}};
  plan.adversaries = {AdversaryStrategy::parse("wrong_witness"),
                      AdversaryStrategy::parse("uniform_random_table")};
  plan.blr_grid = {1, 2};
  plan.verifier_grid = {1, 2};
  plan.seed = 5;
  return plan;
}

TEST(SweepTest, OrderAndMonotonicity) {
  const auto cells = soundness_sweep(small_plan());
  ASSERT_EQ(cells.size(), 16U);
  EXPECT_EQ(cells[0].instance_id, "c4");
  EXPECT_EQ(cells[0].adversary, "wrong_witness:auto");
  EXPECT_EQ(cells[3].blr_reps, 2U);
  EXPECT_EQ(cells[3].verifier_reps, 2U);
  EXPECT_EQ(cells[4].adversary, "uniform_random_table");
  EXPECT_EQ(cells[8].instance_id, "c6");
  for (std::size_t base = 0; base < 16; base += 4) {
    // (1,1) (1,2) (2,1) (2,2)
    EXPECT_LE(*cells[base + 1].exact, *cells[base].exact);
    EXPECT_LE(*cells[base + 2].exact, *cells[base].exact);
    EXPECT_LE(*cells[base + 3].exact, *cells[base + 2].exact);
  }
  for (const auto& c : cells) {
    EXPECT_EQ(c.mode, MeasureMode::kExact);
    EXPECT_EQ(c.max_queries, (3 * c.blr_reps + 4) * c.verifier_reps);
  }
  EXPECT_EQ(*cells[0].exact, 0);
}

TEST(SweepTest, MonteCarloModeAndErrors) {
  SweepSpec plan = small_plan();
  plan.mode = MeasureMode::kMonteCarlo;
  plan.trials = 500;
  plan.blr_grid = {1};
  plan.verifier_grid = {1};
  const auto cells = soundness_sweep(plan);
  ASSERT_EQ(cells.size(), 4U);
  for (const auto& c : cells) {
    EXPECT_EQ(c.mode, MeasureMode::kMonteCarlo);
    EXPECT_FALSE(c.exact);
    EXPECT_EQ(c.trials, 500U);
  }
  plan.adversaries.clear();
  EXPECT_THROW(soundness_sweep(plan), UsageError);
}

TEST(SweepTest, Csv) {
  SweepSpec plan;
  plan.language = kNonbip;
  plan.instances = {{"c4", generate("cycle:4", 0)}};
  plan.adversaries = {AdversaryStrategy::parse("wrong_witness:set=0,1,2,3")};
  plan.seed = 1;
  std::ostringstream out;
  write_csv(out, soundness_sweep(plan));
  const std::string text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), kCsvHeader);
  EXPECT_NE(text.find("nonbipartite,c4,4,\"wrong_witness:set=0,1,2,3\",1,1,exact,0/1,0/1,0/1,7,16,16,"),
            std::string::npos)
      << text;

  plan.mode = MeasureMode::kMonteCarlo;
  plan.trials = 200;
  out.str("");
  write_csv(out, soundness_sweep(plan));
  EXPECT_NE(out.str().find(",monte_carlo,0.000000,0.000000,0.018845,"), std::string::npos) << out.str();
}

}  // namespace
}  // namespace dpcp
