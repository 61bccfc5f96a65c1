// Copyright 2026 The ComVE Harness Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "comve/taxonomy.h"

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "comve/error.h"
#include "test_util.h"

namespace comve {
namespace {

TokenSeq Seq(std::vector<std::string> tokens) { return TokenSeq{std::move(tokens)}; }

TEST(TokenizeTest, LowercasesAndSplits) {
  EXPECT_EQ(Tokenize("The sky is blue").tokens,
            (std::vector<std::string>{"the", "sky", "is", "blue"}));
  EXPECT_EQ(Tokenize("the man fed the snake a mouse").size(), 7u);
}

TEST(TokenizeTest, StripsEdgePunctuationOnly) {
  EXPECT_EQ(Tokenize("  \"Hello,\"  world!  don't (stop).").tokens,
            (std::vector<std::string>{"hello", "world", "don't", "stop"}));
  EXPECT_EQ(Tokenize("a - b").tokens, (std::vector<std::string>{"a", "b"}));
}

TEST(TokenizeTest, NonAsciiBytesPassThrough) {
  EXPECT_EQ(Tokenize("Caf\xC3\xA9 OK").tokens,
            (std::vector<std::string>{"caf\xC3\xA9", "ok"}));
}

TEST(TokenizeTest, EmptyAfterNormalizationIsError) {
  EXPECT_THROW(Tokenize("?!?"), Error);
  EXPECT_THROW(Tokenize("   "), Error);
  EXPECT_THROW(Tokenize(""), Error);
}

TEST(ClassifyPairTest, SwappedWordIsSubstitution) {
  SampleType t = ClassifyPair(Tokenize("The sky is blue"),
                              Tokenize("The sky is underground"));
  EXPECT_EQ(t.kind, SampleKind::kTypeA);
  ASSERT_NE(t.substitution(), nullptr);
  EXPECT_EQ(*t.substitution(), (Substitution{3, "blue", "underground"}));
  EXPECT_FALSE(t.degenerate);
}

TEST(ClassifyPairTest, ReorderedWordsArePermutation) {
  TokenSeq a = Tokenize("the man fed the snake a mouse");
  TokenSeq b = Tokenize("the man fed the mouse a snake");
  SampleType t = ClassifyPair(a, b);
  EXPECT_EQ(t.kind, SampleKind::kTypeB);
  ASSERT_NE(t.permutation(), nullptr);
  const auto& target = t.permutation()->target;
  ASSERT_EQ(target.size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.tokens[i], b.tokens[target[i]]);
  EXPECT_EQ(target[4], 6u);  // snake
  EXPECT_EQ(target[6], 4u);  // mouse
}

TEST(ClassifyPairTest, RewrittenPairIsOther) {
  SampleType t = ClassifyPair(Tokenize("The bike overtake the car"),
                              Tokenize("The red car went by very fast"));
  EXPECT_EQ(t.kind, SampleKind::kTypeC);
  EXPECT_TRUE(std::holds_alternative<std::monostate>(t.evidence));
}

TEST(ClassifyPairTest, IdenticalPairIsDegenerateTypeC) {
  SampleType t = ClassifyPair(Tokenize("Same words."), Tokenize("same WORDS"));
  EXPECT_EQ(t.kind, SampleKind::kTypeC);
  EXPECT_TRUE(t.degenerate);
}

TEST(ClassifyPairTest, MultiTokenSubstitutionIsTypeC) {
  EXPECT_EQ(ClassifyPair(Seq({"a", "b", "c"}), Seq({"a", "x", "y"})).kind,
            SampleKind::kTypeC);
}

TEST(ClassifyPairTest, RepeatedTokensPermutation) {
  SampleType t = ClassifyPair(Seq({"a", "b", "a", "c"}), Seq({"a", "a", "c", "b"}));
  ASSERT_EQ(t.kind, SampleKind::kTypeB);
  EXPECT_EQ(t.permutation()->target, (std::vector<std::size_t>{0, 3, 1, 2}));
}

TEST(ClassifyPairTest, EmptySequenceRejected) {
  EXPECT_THROW(ClassifyPair(TokenSeq{}, Seq({"a"})), Error);
}

TokenSeq RandomSeq(std::mt19937_64& rng) {
  static const std::vector<std::string> words = {"a", "b", "c", "d", "e"};
  TokenSeq s;
  const std::size_t len = 1 + rng() % 6;
  for (std::size_t i = 0; i < len; ++i) s.tokens.push_back(words[rng() % words.size()]);
  return s;
}

// Derive b from a by a random mutation so that all three kinds show up.
TokenSeq Mutate(const TokenSeq& a, std::mt19937_64& rng) {
  TokenSeq b = a;
  switch (rng() % 4) {
    case 0:
      b.tokens[rng() % b.size()] = "z";
      break;
    case 1:
      std::shuffle(b.tokens.begin(), b.tokens.end(), rng);
      break;
    case 2:
      return RandomSeq(rng);
    default:
      break;
  }
  return b;
}

TEST(ClassifyPairPropertyTest, SymmetricExclusiveAndWitnessed) {
  std::mt19937_64 rng(1234);
  std::size_t seen[3] = {0, 0, 0};
  for (int trial = 0; trial < 2000; ++trial) {
    const TokenSeq a = RandomSeq(rng);
    const TokenSeq b = Mutate(a, rng);
    const SampleType ab = ClassifyPair(a, b);
    const SampleType ba = ClassifyPair(b, a);
    ASSERT_EQ(ab.kind, ba.kind);
    ++seen[static_cast<int>(ab.kind)];

    std::vector<std::string> sa = a.tokens, sb = b.tokens;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    std::size_t hamming = 0;
    if (a.size() == b.size()) {
      for (std::size_t i = 0; i < a.size(); ++i) hamming += a.tokens[i] != b.tokens[i];
    }
    const bool is_a = a.size() == b.size() && hamming == 1;
    const bool is_b = !is_a && sa == sb && a != b;
    EXPECT_EQ(ab.kind == SampleKind::kTypeA, is_a);
    EXPECT_EQ(ab.kind == SampleKind::kTypeB, is_b);
    EXPECT_EQ(ab.kind == SampleKind::kTypeC, !is_a && !is_b);
    EXPECT_EQ(ab.degenerate, a == b);

    if (ab.kind == SampleKind::kTypeA) {
      const Substitution& s = *ab.substitution();
      EXPECT_NE(s.token_a, s.token_b);
      EXPECT_EQ(a.tokens[s.position], s.token_a);
      EXPECT_EQ(b.tokens[s.position], s.token_b);
    }
    if (ab.kind == SampleKind::kTypeB) {
      const auto& target = ab.permutation()->target;
      std::vector<std::size_t> sorted = target;
      std::sort(sorted.begin(), sorted.end());
      bool displaced = false;
      for (std::size_t i = 0; i < target.size(); ++i) {
        EXPECT_EQ(sorted[i], i);
        EXPECT_EQ(a.tokens[i], b.tokens[target[i]]);
        displaced = displaced || target[i] != i;
      }
      EXPECT_TRUE(displaced);
    }
  }
  for (std::size_t count : seen) EXPECT_GT(count, 0u);
}

TEST(TypeDistributionTest, KindsFixtureHasOneOfEach) {
  Dataset ds = LoadTaskA(testing::Fixture("kinds_data.csv"));
  EXPECT_EQ(TypeDistribution(ds), (TypeCounts{1, 1, 1, 0}));
}

TEST(TypeDistributionTest, EmptyAndReplicated) {
  EXPECT_EQ(TypeDistribution(Dataset(Split::kDev, std::vector<InstanceA>{})),
            TypeCounts{});
  std::vector<InstanceA> copies;
  for (InstanceId i = 0; i < 25; ++i) {
    copies.push_back({i, "The sky is blue", "The sky is underground", std::nullopt});
  }
  TypeCounts counts = TypeDistribution(Dataset(Split::kTest, copies));
  EXPECT_EQ(counts.type_a, 25u);
  EXPECT_EQ(counts.total(), 25u);
}

TEST(TypeDistributionTest, TaskBRejected) {
  EXPECT_THROW(TypeDistribution(LoadTaskB(testing::Fixture("taskb_data.csv"))), Error);
}

// The committed pair fixture is built from single-word substitutions, so the
// structured kinds dominate.
TEST(TypeDistributionTest, StructuredTypesDominateSyntheticPairs) {
  TypeCounts counts = TypeDistribution(LoadTaskA(testing::Fixture("lm_pairs_data.csv")));
  EXPECT_GT(counts.type_a + counts.type_b, counts.type_c);
}

TEST(SampleKindTest, NamesRoundTrip) {
  for (SampleKind kind : kAllSampleKinds) {
    EXPECT_EQ(ParseSampleKind(SampleKindName(kind)), kind);
  }
  EXPECT_THROW(ParseSampleKind("TypeD"), Error);
}

}  // namespace
}  // namespace comve
