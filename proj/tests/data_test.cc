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
#include "comve/data.h"

#include <algorithm>
#include <functional>
#include <sstream>

#include <gtest/gtest.h>

#include "comve/error.h"
#include "test_util.h"

namespace comve {
namespace {

using ::comve::testing::Fixture;
using ::comve::testing::TempDir;

ErrorKind KindOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kInternal;
}

TEST(LoadTaskATest, JoinsAnswersById) {
  Dataset ds = ParseTaskA("id,sent0,sent1\n0,\"The sky is blue\",\"The sky is underground\"\n",
                          std::string_view("0,1\n"));
  ASSERT_EQ(ds.size(), 1u);
  const InstanceA& a = ds.task_a()[0];
  EXPECT_EQ(a.id, 0u);
  EXPECT_EQ(a.sent0, "The sky is blue");
  EXPECT_EQ(a.sent1, "The sky is underground");
  EXPECT_EQ(a.label, 1);
  EXPECT_TRUE(ds.labeled());
  EXPECT_EQ(ds.split(), Split::kDev);
}

TEST(LoadTaskATest, KindsFixtureFromFiles) {
  Dataset ds = LoadTaskA(Fixture("kinds_data.csv"), Fixture("kinds_answers.csv"),
                         Split::kTest);
  EXPECT_EQ(ds.task(), Task::kA);
  EXPECT_EQ(ds.split(), Split::kTest);
  EXPECT_EQ(ds.labels(), (std::vector<int>{1, 1, 0}));
  EXPECT_EQ(ds.ids(), (std::vector<InstanceId>{0, 1, 2}));
}

TEST(LoadTaskATest, AnswerWithoutDataRowIsJoinError) {
  EXPECT_EQ(KindOf([] {
              ParseTaskA("id,sent0,sent1\n0,a,b\n", std::string_view("0,1\n999,0\n"));
            }),
            ErrorKind::kJoin);
}

TEST(LoadTaskATest, DataRowWithoutAnswerIsJoinError) {
  EXPECT_EQ(KindOf([] {
              ParseTaskA("id,sent0,sent1\n0,a,b\n1,c,d\n", std::string_view("0,1\n"));
            }),
            ErrorKind::kJoin);
}

TEST(LoadTaskATest, OutOfRangeLabelIsValidationError) {
  EXPECT_EQ(KindOf([] {
              ParseTaskA("id,sent0,sent1\n0,a,b\n", std::string_view("0,2\n"));
            }),
            ErrorKind::kValidation);
}

TEST(LoadTaskATest, MalformedRowNamesRowNumber) {
  try {
    ParseTaskA("id,sent0,sent1\n0,a,b\n1,only-two\n", std::nullopt, std::nullopt,
               "dev.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParse);
    EXPECT_NE(std::string(e.what()).find("dev.csv:3"), std::string::npos) << e.what();
  }
}

TEST(LoadTaskATest, RejectsBadHeaderIdsAndEmptySentences) {
  EXPECT_EQ(KindOf([] { ParseTaskA("a,b,c\n0,x,y\n", std::nullopt); }),
            ErrorKind::kParse);
  EXPECT_EQ(KindOf([] { ParseTaskA("id,sent0,sent1\n-1,x,y\n", std::nullopt); }),
            ErrorKind::kParse);
  EXPECT_EQ(KindOf([] { ParseTaskA("id,sent0,sent1\n0,x,  \n", std::nullopt); }),
            ErrorKind::kValidation);
  EXPECT_EQ(KindOf([] { ParseTaskA("id,sent0,sent1\n0,x,y\n0,z,w\n", std::nullopt); }),
            ErrorKind::kValidation);
}

TEST(LoadTaskATest, CrLfFilesAndAnswerHeader) {
  Dataset ds = ParseTaskA("id,sent0,sent1\r\n5,a,b\r\n", std::string_view("id,label\r\n5,0\r\n"));
  EXPECT_EQ(ds.task_a()[0].label, 0);
}

TEST(LoadTaskATest, MissingFileIsIoError) {
  EXPECT_EQ(KindOf([] { LoadTaskA("/nonexistent/data.csv"); }), ErrorKind::kIo);
}

TEST(LoadTaskATest, AnswerErrorsNameTheAnswersFile) {
  TempDir dir;
  const std::string data = dir.Write("d.csv", "id,sent0,sent1\n0,a,b\n");
  const std::string answers = dir.Write("ans.csv", "0,7\n");
  try {
    LoadTaskA(data, answers);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find(answers), std::string::npos) << e.what();
  }
}

TEST(LoadTaskBTest, LetterLabelsMapToIndices) {
  Dataset ds = ParseTaskB(
      "id,FalseSent,OptionA,OptionB,OptionC\n17,s,r1,r2,r3\n",
      std::string_view("17,B\n"));
  EXPECT_EQ(ds.task_b()[0].label, 1);
  EXPECT_EQ(ds.task_b()[0].options[2], "r3");
}

TEST(LoadTaskBTest, LettersAreCaseInsensitive) {
  Dataset ds = LoadTaskB(Fixture("taskb_data.csv"), Fixture("taskb_answers.csv"));
  EXPECT_EQ(ds.labels(), (std::vector<int>{1, 0}));
  EXPECT_EQ(ds.task_b()[0].options[1], "Orange juice doesn't taste good on cereal");
}

TEST(LoadTaskBTest, TwoOptionsIsValidationError) {
  EXPECT_EQ(KindOf([] {
              ParseTaskB("id,FalseSent,OptionA,OptionB,OptionC\n1,s,r1,r2\n",
                         std::nullopt);
            }),
            ErrorKind::kValidation);
}

TEST(LoadTaskBTest, BadLetterIsValidationError) {
  EXPECT_EQ(KindOf([] {
              ParseTaskB("id,FalseSent,OptionA,OptionB,OptionC\n1,s,a,b,c\n",
                         std::string_view("1,D\n"));
            }),
            ErrorKind::kValidation);
}

TEST(LoadTaskBTest, WithoutAnswersEverythingUnlabeled) {
  Dataset ds = LoadTaskB(Fixture("taskb_data.csv"));
  EXPECT_FALSE(ds.labeled());
  EXPECT_EQ(ds.split(), Split::kTest);
  for (const InstanceB& b : ds.task_b()) EXPECT_FALSE(b.label.has_value());
  EXPECT_THROW(ds.labels(), Error);
}

TEST(DatasetTest, WrongTaskAccessorThrows) {
  Dataset ds = LoadTaskB(Fixture("taskb_data.csv"));
  EXPECT_THROW(ds.task_a(), Error);
}

TEST(DatasetTest, MixedLabelingRejected) {
  std::vector<InstanceA> list = {{0, "a", "b", 1}, {1, "c", "d", std::nullopt}};
  EXPECT_THROW(Dataset(Split::kDev, list), Error);
}

TEST(LabelBalanceTest, CountsPerLabel) {
  std::vector<InstanceA> list = {
      {0, "a", "b", 0}, {1, "a", "b", 1}, {2, "a", "b", 1}, {3, "a", "b", 0}};
  EXPECT_EQ(LabelBalance(Dataset(Split::kDev, list)),
            (std::map<int, std::size_t>{{0, 2}, {1, 2}}));
  EXPECT_EQ(LabelBalance(Dataset(Split::kDev, std::vector<InstanceA>{{0, "a", "b", 1}})),
            (std::map<int, std::size_t>{{1, 1}}));
  EXPECT_TRUE(LabelBalance(Dataset(Split::kDev, std::vector<InstanceA>{})).empty());
}

TEST(LabelBalanceTest, UnlabeledDatasetIsError) {
  EXPECT_THROW(LabelBalance(LoadTaskA(Fixture("kinds_data.csv"))), Error);
}

// write -> parse must reproduce the dataset, for both tasks, including
// fields with commas, quotes and a newline.
TEST(DatasetRoundTripTest, WriteCsvReparsesIdentically) {
  std::vector<InstanceA> a_list = {{3, "He said \"no\", twice", "plain", 0},
                                   {1, "two\nlines", "x, y", 1}};
  Dataset a(Split::kDev, a_list);
  std::ostringstream data, answers;
  WriteDataCsv(a, data);
  WriteAnswersCsv(a, answers);
  EXPECT_EQ(ParseTaskA(data.str(), std::string_view(answers.str()), Split::kDev), a);

  Dataset b = LoadTaskB(Fixture("taskb_data.csv"), Fixture("taskb_answers.csv"));
  std::ostringstream b_data, b_answers;
  WriteDataCsv(b, b_data);
  WriteAnswersCsv(b, b_answers);
  EXPECT_EQ(ParseTaskB(b_data.str(), std::string_view(b_answers.str()), b.split()), b);
}

TEST(DatasetTest, LoadingPreservesRowOrder) {
  Dataset ds = ParseTaskA("id,sent0,sent1\n9,a,b\n2,c,d\n5,e,f\n",
                          std::string_view("5,0\n9,1\n2,0\n"));
  EXPECT_EQ(ds.ids(), (std::vector<InstanceId>{9, 2, 5}));
  EXPECT_EQ(ds.labels(), (std::vector<int>{1, 0, 0}));
}

TEST(SampleTest, SeededSubsetIsDeterministicAndOrdered) {
  Dataset full = LoadTaskA(Fixture("lm_pairs_data.csv"), Fixture("lm_pairs_answers.csv"));
  Dataset s1 = Sample(full, 7, 42);
  Dataset s2 = Sample(full, 7, 42);
  EXPECT_EQ(s1, s2);
  EXPECT_EQ(s1.size(), 7u);
  std::vector<InstanceId> ids = s1.ids();
  EXPECT_TRUE(std::is_sorted(ids.begin(), ids.end()));
  EXPECT_NE(Sample(full, 7, 43).ids(), ids);
  EXPECT_EQ(Sample(full, 100, 1), full);
}

TEST(ModelInfoTest, DevScoreRange) {
  ModelInfo info{"albert-xxl", "ALBERT", 12, 4096, 128, 64, 0.953};
  EXPECT_NO_THROW(info.Validate());
  info.dev_score = 1.2;
  EXPECT_THROW(info.Validate(), Error);
  info.dev_score.reset();
  EXPECT_NO_THROW(info.Validate());
  info.name = "";
  EXPECT_THROW(info.Validate(), Error);
}

}  // namespace
}  // namespace comve
