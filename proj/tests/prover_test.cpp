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

#include "dpcp/prover.hpp"

#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "dpcp/generate.hpp"

namespace dpcp {
namespace {

Instance p3(std::vector<std::string> x) { return Instance(Graph(3, {{0, 1}, {1, 2}}), x); }

ProofTable had(std::size_t n, std::uint64_t alpha) {
  return hadamard_encode(BitVec::from_index(n, alpha));
}

TEST(HonestProofTest, Nonbipartite) {
  EXPECT_EQ(honest_proof_nonbipartite(generate("complete:3", 0)), MultiProof(had(3, 0b111)));
  EXPECT_EQ(honest_proof_nonbipartite(generate("cycle:5", 0)), MultiProof(had(5, 0b11111)));
  const Instance chord(Graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {0, 2}}));
  EXPECT_EQ(honest_proof_nonbipartite(chord), MultiProof(had(5, 0b00111)));
  EXPECT_EQ(honest_proof_nonbipartite(generate("cycle:5", 0)).total_bits(), 32U);
  EXPECT_THROW(honest_proof_nonbipartite(generate("cycle:4", 0)), WitnessError);
}

TEST(HonestProofTest, Leader) {
  const MultiProof p = honest_proof_leader(p3({"0", "1", "0"}));
  EXPECT_EQ(p.part(0).bits(), (std::vector<std::uint8_t>{0, 0, 1, 1, 0, 0, 1, 1}));
  EXPECT_EQ(honest_proof_leader(Instance(Graph(1, {}), {"1"})).part(0).bits(),
            (std::vector<std::uint8_t>{0, 1}));
  EXPECT_EQ(honest_proof_leader(generate("complete:4/leader=3", 0)), MultiProof(had(4, 0b1000)));
  EXPECT_THROW(honest_proof_leader(p3({"1", "0", "1"})), WitnessError);
  EXPECT_THROW(honest_proof_leader(p3({"0", "0", "0"})), WitnessError);
}

TEST(HonestProofTest, SpanPath) {
  const MultiProof p = honest_proof_span(p3({"root", "0", "1"}));
  ASSERT_EQ(p.part_count(), 4U);
  EXPECT_EQ(p.part(0), had(3, 0b001));
  EXPECT_EQ(p.part(1), had(3, 0b001));
  EXPECT_EQ(p.part(2), had(3, 0b011));
  EXPECT_EQ(p.part(3), had(3, 0b111));
  EXPECT_THROW(honest_proof_span(p3({"1", "0", "1"})), WitnessError);
}

TEST(HonestProofTest, SpanStar) {
  const Instance star(generate("star:4", 0).graph, {"root", "0", "0", "0"});
  const MultiProof p = honest_proof_span(star);
  for (Vertex j = 1; j < 4; ++j) EXPECT_EQ(p.part(1 + j), had(4, 1 | (1U << j)));
}

// Oracle: ancestors-or-self by walking parent pointers, encoded bit by bit.
TEST(HonestProofTest, SpanTelescopingOnRandomTrees) {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const Instance inst = generate("random:" + std::to_string(n) + ":0.4/span=tree", seed);
      const MultiProof p = honest_proof_span(inst);
      Vertex root = 0;
      for (Vertex i = 0; i < n; ++i) {
        if (inst.inputs[i] == "root") root = i;
      }
      EXPECT_EQ(p.part(0), had(n, std::uint64_t{1} << root));
      for (Vertex i = 0; i < n; ++i) {
        std::uint64_t anc = 0;
        for (Vertex v = i;; v = std::stoul(inst.inputs[v])) {
          anc |= std::uint64_t{1} << v;
          if (inst.inputs[v] == "root") break;
        }
        EXPECT_EQ(p.part(1 + i), had(n, anc));
        if (i != root) {
          const Vertex par = std::stoul(inst.inputs[i]);
          const auto ai = distance_to_nearest_linear(p.part(1 + i)).alpha;
          const auto ap = distance_to_nearest_linear(p.part(1 + par)).alpha;
          EXPECT_EQ(ai ^ ap, BitVec::basis(n, i));
        }
      }
    }
  }
}

TEST(AdversaryTest, DescriptorRoundTrip) {
  for (const char* s : {"honest", "uniform_random_table", "corrupt_honest:count=3",
                        "corrupt_honest:fraction=0.25", "wrong_witness:auto", "wrong_witness:tree",
                        "wrong_witness:set=0,1,2,3", "constant:1", "nonlinear_planted:alpha=0,2:flip=1,5",
                        "exhaustive:17", "uniform_random_table:seed=9"}) {
    EXPECT_EQ(AdversaryStrategy::parse(s).text(), s);
  }
  EXPECT_EQ(AdversaryStrategy::parse("corrupt_honest:2").text(), "corrupt_honest:count=2");
  EXPECT_THROW(AdversaryStrategy::parse("bogus"), StrategyError);
  EXPECT_THROW(AdversaryStrategy::parse("corrupt_honest"), StrategyError);
  EXPECT_THROW(AdversaryStrategy::parse("corrupt_honest:fraction=1.5"), StrategyError);
  EXPECT_THROW(AdversaryStrategy::parse("constant:2"), StrategyError);
  EXPECT_THROW(AdversaryStrategy::parse("wrong_witness:whatever"), StrategyError);
}

TEST(AdversaryTest, WrongWitnessExamples) {
  const Instance c4 = generate("cycle:4", 0);
  EXPECT_EQ(adversarial_proof(c4, LanguageId::kNonbipartite,
                              AdversaryStrategy::parse("wrong_witness:set=0,1,2,3")),
            MultiProof(had(4, 0b1111)));
  // The default non-witness on C4 is the whole (even) cycle.
  EXPECT_EQ(adversarial_proof(c4, LanguageId::kNonbipartite, AdversaryStrategy::parse("wrong_witness")),
            MultiProof(had(4, 0b1111)));
  const Instance two = p3({"1", "0", "1"});
  EXPECT_EQ(adversarial_proof(two, LanguageId::kLeader, AdversaryStrategy::parse("wrong_witness")),
            MultiProof(had(3, 0b101)));
  EXPECT_THROW(adversarial_proof(c4, LanguageId::kNonbipartite,
                                 AdversaryStrategy::parse("wrong_witness:set=0,9")),
               StrategyError);
}

TEST(AdversaryTest, ConstantAndPlanted) {
  const Instance inst = p3({"0", "0", "0"});
  EXPECT_EQ(adversarial_proof(inst, LanguageId::kLeader, AdversaryStrategy::parse("constant:0")),
            MultiProof(ProofTable::constant(3, false)));
  const MultiProof planted = adversarial_proof(
      inst, LanguageId::kLeader, AdversaryStrategy::parse("nonlinear_planted:alpha=1:flip=0,7"));
  ProofTable want = had(3, 0b010);
  want.flip(0);
  want.flip(7);
  EXPECT_EQ(planted, MultiProof(want));
}

TEST(AdversaryTest, ExhaustiveEnumeratesEveryProofOnce) {
  const Instance inst = p3({"0", "1", "0"});
  std::set<std::vector<std::uint8_t>> seen;
  for (std::uint64_t k = 0; k < 256; ++k) {
    AdversaryStrategy s;
    s.kind = AdversaryStrategy::Kind::kExhaustive;
    s.index = k;
    const MultiProof p = adversarial_proof(inst, LanguageId::kLeader, s);
    EXPECT_TRUE(seen.insert(p.part(0).bits()).second);
    for (std::uint64_t j = 0; j < 8; ++j) EXPECT_EQ(p.global_bit(j), ((k >> j) & 1) == 1);
  }
  EXPECT_EQ(seen.size(), 256U);
  EXPECT_THROW(adversarial_proof(inst, LanguageId::kLeader, AdversaryStrategy::parse("exhaustive:256")),
               StrategyError);
}

TEST(AdversaryTest, CorruptHonestFlipsExactlyK) {
  const Instance inst = generate("cycle:5", 0);
  const MultiProof honest = honest_proof(inst, LanguageId::kNonbipartite);
  for (std::uint64_t k : {0, 1, 4, 32}) {
    auto s = AdversaryStrategy::parse("corrupt_honest:count=" + std::to_string(k));
    s.seed = 3;
    const MultiProof p = adversarial_proof(inst, LanguageId::kNonbipartite, s);
    std::uint64_t diff = 0;
    for (std::uint64_t j = 0; j < 32; ++j) diff += p.global_bit(j) != honest.global_bit(j);
    EXPECT_EQ(diff, k);
  }
  EXPECT_THROW(adversarial_proof(inst, LanguageId::kNonbipartite,
                                 AdversaryStrategy::parse("corrupt_honest:count=33")),
               StrategyError);
}

TEST(AdversaryTest, DeterministicPerSeed) {
  const Instance inst = generate("random:6:0.4/span=cycle", 2);
  for (const char* d : {"uniform_random_table", "corrupt_honest:fraction=0.1"}) {
    auto a = AdversaryStrategy::parse(d), b = AdversaryStrategy::parse(d);
    a.seed = b.seed = 77;
    EXPECT_EQ(adversarial_proof(inst, LanguageId::kSpan, a), adversarial_proof(inst, LanguageId::kSpan, b));
    b.seed = 78;
    EXPECT_NE(adversarial_proof(inst, LanguageId::kSpan, a), adversarial_proof(inst, LanguageId::kSpan, b));
  }
}

}  // namespace
}  // namespace dpcp
