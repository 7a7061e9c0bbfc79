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

#include "dpcp/gf2.hpp"

#include <gtest/gtest.h>

#include <sstream>
#include <vector>

#include "dpcp/io.hpp"
#include "dpcp/random.hpp"

namespace dpcp {
namespace {

ProofTable table_from_mask(std::size_t n, std::uint64_t mask) {
  std::vector<std::uint8_t> bits(std::size_t{1} << n);
  for (std::size_t k = 0; k < bits.size(); ++k) bits[k] = (mask >> k) & 1;
  return ProofTable(n, bits);
}

// Oracle: linear iff equal to some Had(alpha), checked point by point with
// BitVec inner products.
bool oracle_is_linear(const ProofTable& t) {
  const std::size_t n = t.dim();
  for (std::uint64_t a = 0; a < t.size(); ++a) {
    const BitVec alpha = BitVec::from_index(n, a);
    bool same = true;
    for (std::uint64_t k = 0; k < t.size() && same; ++k) {
      same = t.at(k) == inner_product(alpha, BitVec::from_index(n, k));
    }
    if (same) return true;
  }
  return false;
}

// Oracle: rejected (x, y) pairs, counted over BitVec points.
std::uint64_t oracle_blr_rejections(const ProofTable& t) {
  const std::size_t n = t.dim();
  std::uint64_t rej = 0;
  for (std::uint64_t x = 0; x < t.size(); ++x) {
    for (std::uint64_t y = 0; y < t.size(); ++y) {
      const BitVec vx = BitVec::from_index(n, x), vy = BitVec::from_index(n, y);
      if ((t.at(vx) ^ t.at(vy)) != t.at(vx ^ vy)) ++rej;
    }
  }
  return rej;
}

// Oracle: distance by comparing against every codeword.
Rational oracle_distance(const ProofTable& t, std::uint64_t* best_alpha) {
  std::uint64_t best = UINT64_MAX;
  for (std::uint64_t a = 0; a < t.size(); ++a) {
    const ProofTable h = hadamard_encode(BitVec::from_index(t.dim(), a));
    std::uint64_t d = 0;
    for (std::uint64_t k = 0; k < t.size(); ++k) d += t.at(k) != h.at(k);
    if (d < best) {
      best = d;
      *best_alpha = a;
    }
  }
  return make_rational(best, t.size());
}

TEST(BitVecTest, IndexOrderPutsVertexZeroAtLsb) {
  const BitVec v = BitVec::from_index(3, 0b101);
  EXPECT_TRUE(v.get(0));
  EXPECT_FALSE(v.get(1));
  EXPECT_TRUE(v.get(2));
  EXPECT_EQ(v.to_string(), "101");
  EXPECT_EQ(v.to_index(), 5U);
  EXPECT_EQ(BitVec::basis(4, 2).to_index(), 4U);
  EXPECT_EQ(BitVec::ones(3).popcount(), 3U);
}

TEST(BitVecTest, ArithmeticAndErrors) {
  const BitVec a = BitVec::from_index(4, 0b1100), b = BitVec::from_index(4, 0b1010);
  EXPECT_EQ((a ^ b).to_index(), 0b0110U);
  EXPECT_TRUE(inner_product(a, b));
  EXPECT_FALSE(inner_product(a, BitVec::from_index(4, 0b0011)));
  EXPECT_THROW(BitVec(0), DimensionError);
  EXPECT_THROW(BitVec::from_index(2, 4), DimensionError);
  EXPECT_THROW(a ^ BitVec(3), DimensionError);
  EXPECT_THROW(a.get(4), DimensionError);
}

TEST(BitVecTest, LongVectorsSpanWords) {
  BitVec v(130);
  v.set(129, true);
  v.set(64, true);
  EXPECT_EQ(v.popcount(), 2U);
  EXPECT_TRUE(v.dot(BitVec::basis(130, 129)));
  EXPECT_THROW(v.to_index(), DimensionError);
}

TEST(HadamardTest, EncodeMatchesInnerProducts) {
  for (std::uint64_t a = 0; a < 16; ++a) {
    const BitVec alpha = BitVec::from_index(4, a);
    const ProofTable t = hadamard_encode(alpha);
    ASSERT_EQ(t.size(), 16U);
    for (std::uint64_t k = 0; k < 16; ++k) {
      EXPECT_EQ(t.at(k), inner_product(alpha, BitVec::from_index(4, k)));
    }
  }
  EXPECT_EQ(hadamard_encode(BitVec::from_index(2, 0b11)).bits(),
            (std::vector<std::uint8_t>{0, 1, 1, 0}));
}

TEST(HadamardTest, DimensionCap) {
  EXPECT_THROW(hadamard_encode(BitVec(21)), CapacityError);
  EXPECT_THROW(hadamard_encode(BitVec(5), 4), CapacityError);
}

TEST(OracleSessionTest, CountsQueriesAndCoins) {
  const MultiProof p(hadamard_encode(BitVec::from_index(5, 0b10011)));
  OracleSession s(p, 42, true);
  EXPECT_TRUE(s.blr_linearity_test(0, 2));
  EXPECT_EQ(s.query_count(), 6U);
  EXPECT_EQ(s.random_bits_used(), 20U);
  EXPECT_TRUE(s.self_corrected_query(0, BitVec::basis(5, 0)));
  EXPECT_EQ(s.query_count(), 8U);
  EXPECT_EQ(s.random_bits_used(), 25U);
  EXPECT_EQ(s.transcript().size(), 8U);
  EXPECT_THROW(s.self_corrected_query(0, BitVec(4)), DimensionError);
  EXPECT_THROW(s.blr_linearity_test(1, 1), DimensionError);
}

TEST(OracleSessionTest, DeterministicPerSeed) {
  const MultiProof p(table_from_mask(4, 0x1234));
  OracleSession a(p, 7, true), b(p, 7, true);
  for (int k = 0; k < 5; ++k) {
    EXPECT_EQ(a.blr_linearity_test(0, 1), b.blr_linearity_test(0, 1));
    EXPECT_EQ(a.self_corrected_query(0, BitVec::ones(4)),
              b.self_corrected_query(0, BitVec::ones(4)));
  }
  EXPECT_EQ(a.transcript(), b.transcript());
}

TEST(OracleSessionTest, LinearTablesAlwaysPassAndCorrectExactly) {
  for (std::uint64_t alpha = 0; alpha < 32; ++alpha) {
    const MultiProof p(hadamard_encode(BitVec::from_index(5, alpha)));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      OracleSession s(p, seed);
      EXPECT_TRUE(s.blr_linearity_test(0, 3));
      const BitVec v = BitVec::from_index(5, (alpha * 7 + seed) % 32);
      EXPECT_EQ(s.self_corrected_query(0, v), inner_product(BitVec::from_index(5, alpha), v));
    }
  }
}

TEST(BlrExactTest, AndTableRejectsSixSixteenths) {
  const ProofTable and2(2, {0, 0, 0, 1});
  EXPECT_EQ(oracle_blr_rejections(and2), 6U);
  EXPECT_EQ(exact_rejection_probability(and2, BlrTest{1}), Rational(6, 16));
  EXPECT_EQ(exact_rejection_probability(and2, BlrTest{2}), 1 - pow(Rational(10, 16), 2));
}

TEST(BlrExactTest, AllThreeVariableTables) {
  Rational min_nonzero = 1;
  int attaining = 0;
  for (std::uint64_t mask = 0; mask < 256; ++mask) {
    const ProofTable t = table_from_mask(3, mask);
    const Rational rej = exact_rejection_probability(t, BlrTest{1});
    EXPECT_EQ(rej, make_rational(oracle_blr_rejections(t), 64)) << mask;
    EXPECT_EQ(rej == 0, oracle_is_linear(t)) << mask;
    if (rej != 0 && rej < min_nonzero) {
      min_nonzero = rej;
      attaining = 0;
    }
    if (rej == min_nonzero) ++attaining;
  }
  // Frozen from the oracle above: one flip away from a codeword, at a nonzero
  // index (7 positions x 8 codewords).
  EXPECT_EQ(min_nonzero, Rational(9, 32));
  EXPECT_EQ(attaining, 56);
}

TEST(BlrExactTest, BudgetIsEnforced) {
  EXPECT_THROW(blr_passing_pairs(ProofTable::constant(13, false)), CapacityError);
  EXPECT_NO_THROW(blr_passing_pairs(ProofTable::constant(12, false)));
}

TEST(DistanceTest, SpotValues) {
  const auto c1 = distance_to_nearest_linear(ProofTable::constant(2, true));
  EXPECT_EQ(c1.distance, Rational(2, 4));
  EXPECT_EQ(c1.alpha.to_index(), 1U);  // 01, 10 and 11 tie; smallest wins
  const auto a2 = distance_to_nearest_linear(ProofTable(2, {0, 0, 0, 1}));
  EXPECT_EQ(a2.distance, Rational(1, 4));
  EXPECT_EQ(a2.alpha.to_index(), 0U);
}

TEST(DistanceTest, WalshTransformAgreesWithBruteForce) {
  for (std::size_t n : {1, 2, 3}) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (1U << n)); ++mask) {
      const ProofTable t = table_from_mask(n, mask);
      std::uint64_t alpha = 0;
      const Rational d = oracle_distance(t, &alpha);
      const auto got = distance_to_nearest_linear(t);
      EXPECT_EQ(got.distance, d);
      EXPECT_EQ(got.alpha.to_index(), alpha);
    }
  }
  SplitMix64 rng(3);
  for (int k = 0; k < 50; ++k) {
    std::vector<std::uint8_t> bits(32);
    for (auto& b : bits) b = rng() & 1;
    const ProofTable t(5, bits);
    std::uint64_t alpha = 0;
    EXPECT_EQ(distance_to_nearest_linear(t).distance, oracle_distance(t, &alpha));
  }
}

TEST(SelfCorrectionTest, ErrorAtMostTwiceDistance) {
  for (std::uint64_t mask = 0; mask < 256; ++mask) {
    const ProofTable t = table_from_mask(3, mask);
    const auto near = distance_to_nearest_linear(t);
    for (std::uint64_t v = 0; v < 8; ++v) {
      const BitVec pv = BitVec::from_index(3, v);
      // Enumerate the 8 correction coins directly.
      int wrong = 0;
      for (std::uint64_t r = 0; r < 8; ++r) {
        const bool out = t.at(v ^ r) ^ t.at(r);
        wrong += out != inner_product(near.alpha, pv);
      }
      const Rational err(wrong, 8);
      EXPECT_LE(err, 2 * near.distance) << mask << " " << v;
      EXPECT_EQ(err, exact_rejection_probability(
                         t, CorrectedQueryTest{pv, inner_product(near.alpha, pv)}));
    }
  }
}

TEST(ProofFormatTest, RoundTripAndLayout) {
  const MultiProof p({table_from_mask(3, 0b10010110), table_from_mask(3, 0x01)});
  std::ostringstream out;
  write_proof(out, p, LanguageId::kSpan);
  const std::string bytes = out.str();
  ASSERT_EQ(bytes.size(), 12U);
  EXPECT_EQ(bytes.substr(0, 4), "DPCP");
  EXPECT_EQ(bytes[4], 1);
  EXPECT_EQ(bytes[5], 3);
  EXPECT_EQ(bytes[6], 3);
  EXPECT_EQ(bytes[7], 0);
  EXPECT_EQ(bytes[8], 2);
  EXPECT_EQ(static_cast<unsigned char>(bytes[10]), 0b10010110);
  EXPECT_EQ(bytes[11], 1);
  std::istringstream in(bytes);
  const ProofFile back = read_proof(in);
  EXPECT_EQ(back.language, LanguageId::kSpan);
  EXPECT_EQ(back.proof, p);
}

TEST(ProofFormatTest, SmallTablesPadToAByte) {
  const MultiProof p(ProofTable(1, {0, 1}));
  std::ostringstream out;
  write_proof(out, p, LanguageId::kLeader);
  EXPECT_EQ(out.str().size(), 11U);
  std::istringstream in(out.str());
  EXPECT_EQ(read_proof(in).proof, p);
}

TEST(ProofFormatTest, RejectsMalformedInput) {
  std::ostringstream out;
  write_proof(out, MultiProof(table_from_mask(4, 0xBEEF)), LanguageId::kNonbipartite);
  const std::string good = out.str();
  auto parse = [](std::string s) {
    std::istringstream in(s);
    return read_proof(in);
  };
  EXPECT_NO_THROW(parse(good));
  EXPECT_THROW(parse(good.substr(0, good.size() - 1)), FormatError);
  EXPECT_THROW(parse(good + "x"), FormatError);
  EXPECT_THROW(parse("DPCQ" + good.substr(4)), FormatError);
  std::string bad_version = good;
  bad_version[4] = 2;
  EXPECT_THROW(parse(bad_version), FormatError);
  std::string bad_lang = good;
  bad_lang[5] = 9;
  EXPECT_THROW(parse(bad_lang), FormatError);
  EXPECT_THROW(parse(""), FormatError);
}

TEST(RandomTest, SplitSeedSeparatesPaths) {
  EXPECT_NE(split_seed(1, {0}), split_seed(1, {1}));
  EXPECT_NE(split_seed(1, {0, 1}), split_seed(1, {1, 0}));
  EXPECT_EQ(split_seed(9, {3, 4}), split_seed(9, {3, 4}));
  SplitMix64 rng(11);
  std::vector<int> hist(5, 0);
  for (int k = 0; k < 5000; ++k) ++hist[rng.below(5)];
  for (int h : hist) EXPECT_GT(h, 850);
}

}  // namespace
}  // namespace dpcp
