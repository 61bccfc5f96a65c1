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
#include "comve/ngram.h"

#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "comve/error.h"
#include "oracles.h"
#include "test_util.h"

namespace comve {
namespace {

using ::comve::testing::OracleProbability;
using ::comve::testing::OracleSentenceLogProb;
using ::comve::testing::Sentence;

std::vector<TokenSeq> Corpus(const std::vector<std::string>& lines) {
  std::vector<TokenSeq> out;
  for (const std::string& line : lines) out.push_back(Tokenize(line));
  return out;
}

std::vector<Sentence> Raw(const std::vector<TokenSeq>& corpus) {
  std::vector<Sentence> out;
  for (const TokenSeq& s : corpus) out.push_back(s.tokens);
  return out;
}

TEST(TrainNGramTest, BigramHandComputedProbability) {
  NGramModel model = TrainNGram(Corpus({"a b", "a b"}), 2, 1.0);
  EXPECT_EQ(model.vocabulary_size(), 4u);  // a, b, </s>, <unk>
  const std::vector<std::string> ctx = {"a"};
  EXPECT_DOUBLE_EQ(model.Probability(ctx, "b"), 0.5);  // (2+1)/(2+4)
  EXPECT_EQ(model.Count(ctx, "b"), 2u);
  EXPECT_EQ(model.ContextTotal(ctx), 2u);
}

TEST(TrainNGramTest, DistributionsSumToOne) {
  NGramModel model =
      TrainNGram(Corpus({"the cat sat", "the dog sat down", "a cat ran"}), 3, 0.1);
  const std::vector<std::string> vocab = model.vocabulary();
  const std::vector<std::vector<std::string>> contexts = {
      {"<s>", "<s>"}, {"<s>", "the"}, {"the", "cat"}, {"cat", "sat"},
      {"never", "seen"}, {"dog", "<unk>"}};
  for (const auto& ctx : contexts) {
    double sum = 0;
    for (const std::string& w : vocab) sum += model.Probability(ctx, w);
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(TrainNGramTest, UnseenContextIsUniform) {
  NGramModel model = TrainNGram(Corpus({"x y z"}), 3, 0.7);
  const std::vector<std::string> ctx = {"z", "x"};
  for (const std::string& w : model.vocabulary()) {
    EXPECT_DOUBLE_EQ(model.Probability(ctx, w), 1.0 / model.vocabulary_size());
  }
}

TEST(TrainNGramTest, OutOfVocabularyTokensScoreAsUnknown) {
  NGramModel model = TrainNGram(Corpus({"a b"}), 2, 1.0);
  const std::vector<std::string> ctx = {"a"};
  EXPECT_DOUBLE_EQ(model.Probability(ctx, "qqq"), model.Probability(ctx, "<unk>"));
  EXPECT_TRUE(model.InVocabulary("<unk>"));
  EXPECT_FALSE(model.InVocabulary("<s>"));
}

TEST(TrainNGramTest, RejectsBadArguments) {
  EXPECT_THROW(TrainNGram({}, 3, 0.1), Error);
  EXPECT_THROW(TrainNGram(Corpus({"a"}), 0, 0.1), Error);
  EXPECT_THROW(TrainNGram(Corpus({"a"}), 2, 0.0), Error);
  EXPECT_THROW(TrainNGram(Corpus({"a"}), 2, -1.0), Error);
}

TEST(SentenceLogProbTest, SingleTokenAveragesTwoEvents) {
  std::vector<TokenSeq> corpus = Corpus({"hello world", "hello"});
  NGramModel model = TrainNGram(corpus, 2, 0.5);
  const std::vector<double> events = EventLogProbs(model, Tokenize("hello"));
  ASSERT_EQ(events.size(), 2u);
  const std::vector<std::string> begin = {"<s>"}, hello = {"hello"};
  const double expected =
      (std::log(model.Probability(begin, "hello")) +
       std::log(model.Probability(hello, "</s>"))) / 2;
  EXPECT_DOUBLE_EQ(SentenceLogProb(model, Tokenize("hello")), expected);
}

TEST(SentenceLogProbTest, AllOutOfVocabularyIsFinite) {
  NGramModel model = TrainNGram(Corpus({"a b c"}), 3, 0.1);
  const double ll = SentenceLogProb(model, Tokenize("zzz yyy"));
  EXPECT_TRUE(std::isfinite(ll));
  EXPECT_LT(ll, 0.0);
}

TEST(SentenceLogProbTest, EmptySentenceRejected) {
  NGramModel model = TrainNGram(Corpus({"a"}), 2, 0.1);
  EXPECT_THROW(SentenceLogProb(model, TokenSeq{}), Error);
}

// A sentence that dominates the corpus must outscore every reordering of its
// own tokens; all permutations are enumerated.
TEST(SentenceLogProbTest, SeenSentenceBeatsEveryPermutation) {
  std::vector<std::string> lines(6, "the cat chased a small mouse");
  lines.insert(lines.end(), {"a dog barked", "the mouse ran", "a small cat slept",
                             "the dog chased the cat"});
  ASSERT_EQ(lines.size(), 10u);
  for (int order : {2, 3}) {
    NGramModel model = TrainNGram(Corpus(lines), order, 0.1);
    TokenSeq seen = Tokenize(lines.front());
    const double best = SentenceLogProb(model, seen);
    std::vector<std::string> perm = seen.tokens;
    std::sort(perm.begin(), perm.end());
    int checked = 0;
    do {
      if (perm == seen.tokens) continue;
      EXPECT_GT(best, SentenceLogProb(model, TokenSeq{perm}));
      ++checked;
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_EQ(checked, 719);
  }
}

TEST(SentenceLogProbTest, MatchesBruteForceOracleOnRandomCorpora) {
  std::mt19937_64 rng(99);
  const std::vector<std::string> words = {"a", "b", "c", "d", "e", "f"};
  auto random_sentence = [&] {
    TokenSeq s;
    const std::size_t len = 1 + rng() % 5;
    for (std::size_t i = 0; i < len; ++i) s.tokens.push_back(words[rng() % words.size()]);
    return s;
  };
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<TokenSeq> corpus;
    const std::size_t n = 1 + rng() % 20;
    for (std::size_t i = 0; i < n; ++i) corpus.push_back(random_sentence());
    const int order = 1 + static_cast<int>(rng() % 5);
    const double alpha = 0.05 + static_cast<double>(rng() % 100) / 50.0;
    NGramModel model = TrainNGram(corpus, order, alpha);
    for (int q = 0; q < 10; ++q) {
      TokenSeq query = random_sentence();
      if (q % 3 == 0) query.tokens.push_back("oov");
      EXPECT_NEAR(SentenceLogProb(model, query),
                  OracleSentenceLogProb(Raw(corpus), order, alpha, query.tokens),
                  1e-12);
    }
  }
}

TEST(NGramModelTest, JsonRoundTripIsExact) {
  std::vector<TokenSeq> corpus =
      Corpus({"the cat sat", "the dog sat down", "a cat ran", "the cat sat"});
  NGramModel model = TrainNGram(corpus, 3, 0.25);
  const std::string json = model.ToJson();
  NGramModel back = NGramModel::FromJson(json);
  EXPECT_EQ(back.ToJson(), json);
  EXPECT_EQ(back.order(), 3);
  EXPECT_EQ(back.alpha(), 0.25);
  for (const TokenSeq& s : Corpus({"the cat ran", "zebra"})) {
    EXPECT_EQ(SentenceLogProb(back, s), SentenceLogProb(model, s));
  }
  // Training order does not leak into the serialization.
  std::reverse(corpus.begin(), corpus.end());
  EXPECT_EQ(TrainNGram(corpus, 3, 0.25).ToJson(), json);
}

TEST(NGramModelTest, UnigramRoundTrip) {
  NGramModel model = TrainNGram(Corpus({"a b", "b"}), 1, 1.0);
  NGramModel back = NGramModel::FromJson(model.ToJson());
  const std::vector<std::string> none;
  EXPECT_DOUBLE_EQ(back.Probability(none, "b"), (2 + 1.0) / (5 + 4.0));
  EXPECT_DOUBLE_EQ(OracleProbability({{"a", "b"}, {"b"}}, 1, 1.0, {}, "b"),
                   back.Probability(none, "b"));
}

TEST(NGramModelTest, CorruptModelRejected) {
  EXPECT_THROW(NGramModel::FromJson("not json"), Error);
  EXPECT_THROW(NGramModel::FromJson("{\"format\":\"other\",\"version\":1}"), Error);
  NGramModel model = TrainNGram(Corpus({"a b"}), 2, 1.0);
  std::string json = model.ToJson();
  const std::size_t at = json.find("\"total\": 1");
  ASSERT_NE(at, std::string::npos) << json;
  json.replace(at, 10, "\"total\": 9");
  EXPECT_THROW(NGramModel::FromJson(json), Error);
}

TEST(NGramModelTest, SaveLoadAndMissingFile) {
  testing::TempDir dir;
  NGramModel model = TrainNGram(Corpus({"a b c"}), 2, 0.1);
  model.Save(dir.Path("m.json"));
  EXPECT_EQ(NGramModel::Load(dir.Path("m.json")).ToJson(), model.ToJson());
  try {
    NGramModel::Load(dir.Path("absent.json"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIo);
  }
}

TEST(ReadCorpusTest, SkipsBlankAndPunctuationLines) {
  std::vector<TokenSeq> corpus = ParseCorpus("The sky is blue.\n\n!!!\r\nfish swim\n");
  ASSERT_EQ(corpus.size(), 2u);
  EXPECT_EQ(corpus[1].tokens, (std::vector<std::string>{"fish", "swim"}));
  EXPECT_EQ(ReadCorpus(testing::Fixture("synthetic_corpus.txt")).size(), 192u);
}

}  // namespace
}  // namespace comve
