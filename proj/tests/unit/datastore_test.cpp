// Copyright 2026 The semproj Authors.
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

#include "semproj/datastore.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "semproj/config.hpp"
#include "support/error_matchers.hpp"

namespace {

namespace fs = std::filesystem;
using semproj::Construct;
using semproj::ErrorCode;
using semproj::ResponseFormat;

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("semproj_datastore_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

TEST(Csv, QuotedFieldsAndCrlf) {
  const auto rows = semproj::csv::parse("a,b\r\n\"x, \"\"y\"\"\",\"multi\nline\"\r\nlast,1");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1].fields, (std::vector<std::string>{"x, \"y\"", "multi\nline"}));
  EXPECT_EQ(rows[1].line, 2u);
  EXPECT_EQ(rows[2].line, 4u);
}

TEST(Csv, WriterRoundTrips) {
  const std::vector<std::string> fields{"plain", "com,ma", "quo\"te", "new\nline", ""};
  const auto rows = semproj::csv::parse(semproj::csv::format_row(fields));
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].fields, fields);
}

TEST(Csv, MalformedQuoting) {
  EXPECT_ERROR_CODE(semproj::csv::parse("a,\"open"), ErrorCode::kParseError);
  EXPECT_ERROR_CODE(semproj::csv::parse("a,\"x\"y"), ErrorCode::kParseError);
  EXPECT_ERROR_CODE(semproj::csv::parse("a,b\"c\""), ErrorCode::kParseError);
}

TEST(Responses, ParsesValidLines) {
  const auto r = semproj::parse_responses(
      R"({"participant_id":"p1","time_point":1,"construct":"depression","format":"write_text","text":"I am sad."})"
      "\n\n"
      R"({"participant_id":"p1","time_point":2,"construct":"worry","format":"select_words","text":"tense, calm"})"
      "\n",
      "r.jsonl");
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[1].construct, Construct::kWorry);
  EXPECT_EQ(r[1].format, ResponseFormat::kSelectWords);
  EXPECT_EQ(r[1].time_point, 2);
}

TEST(Responses, ReportsEveryBadLineWithLocation) {
  const std::string content =
      R"({"participant_id":"p1","time_point":3,"construct":"depression","format":"write_text","text":"x"})"
      "\n"
      R"(not json)"
      "\n"
      R"({"participant_id":"p2","time_point":1,"construct":"mood","format":"write_text","text":"x"})"
      "\n";
  try {
    semproj::parse_responses(content, "r.jsonl");
    FAIL() << "expected ParseError";
  } catch (const semproj::Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    const std::string msg = e.what();
    EXPECT_NE(msg.find("r.jsonl:1"), std::string::npos);
    EXPECT_NE(msg.find("r.jsonl:2"), std::string::npos);
    EXPECT_NE(msg.find("r.jsonl:3"), std::string::npos);
  }
}

TEST(Responses, LenientSkipsAndWarns) {
  const std::string content =
      R"({"participant_id":"p1","time_point":1,"construct":"depression","format":"write_text","text":"ok."})"
      "\n{broken\n";
  semproj::LoadIssues issues;
  const auto r = semproj::parse_responses(content, "r.jsonl", true, &issues);
  EXPECT_EQ(r.size(), 1u);
  ASSERT_EQ(issues.messages.size(), 1u);
  EXPECT_NE(issues.messages[0].find("r.jsonl:2"), std::string::npos);
}

TEST(Responses, DuplicateKeyRejected) {
  const std::string line =
      R"({"participant_id":"p1","time_point":1,"construct":"depression","format":"write_text","text":"ok."})";
  EXPECT_ERROR_CODE(semproj::parse_responses(line + "\n" + line + "\n", "r"), ErrorCode::kDuplicateKey);
}

TEST(Responses, WriteThenLoadRoundTrips) {
  TempDir dir;
  std::vector<semproj::RawResponse> in{
      {"p2", 1, Construct::kWorry, ResponseFormat::kWritePhrases, "on edge; \"restless\""},
      {"p1", 2, Construct::kDepression, ResponseFormat::kWriteText, "I feel \xE2\x80\x9Clow\xE2\x80\x9D.\nStill."},
  };
  semproj::write_responses(in, dir.path() / "r.jsonl");
  const auto out = semproj::load_responses(dir.path() / "r.jsonl");
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].participant_id, "p1");
  EXPECT_EQ(out[0].text, in[1].text);
  EXPECT_EQ(out[1].text, in[0].text);
}

const std::string kHeader = "participant_id,time_point,phq9,cesd,gad7,pswq\n";

TEST(Clinical, ParsesAndRoundTrips) {
  const auto recs = semproj::parse_clinical(kHeader + "p2,1,3,10,4,40\r\np1,2,27,60,21,80\r\n", "c.csv");
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[1].total(semproj::Scale::kPSWQ), 80);
  EXPECT_EQ(semproj::parse_clinical(semproj::format_clinical(recs), "again"), (std::vector{recs[1], recs[0]}));
}

TEST(Clinical, Phq9AboveMaximumIsRangeViolation) {
  EXPECT_ERROR_CODE(semproj::parse_clinical(kHeader + "p1,1,30,10,4,40\n", "c"), ErrorCode::kRangeViolation);
  EXPECT_ERROR_CODE(semproj::parse_clinical(kHeader + "p1,1,3,10,4,15\n", "c"), ErrorCode::kRangeViolation);
}

TEST(Clinical, RejectsRatherThanCoerces) {
  EXPECT_ERROR_CODE(semproj::parse_clinical(kHeader + "p1,1,3.5,10,4,40\n", "c"), ErrorCode::kParseError);
  EXPECT_ERROR_CODE(semproj::parse_clinical(kHeader + "p1,1,,10,4,40\n", "c"), ErrorCode::kParseError);
  EXPECT_ERROR_CODE(semproj::parse_clinical(kHeader + "p1,1,nan,10,4,40\n", "c"), ErrorCode::kParseError);
  EXPECT_ERROR_CODE(semproj::parse_clinical(kHeader + "p1,3,3,10,4,40\n", "c"), ErrorCode::kParseError);
  EXPECT_ERROR_CODE(semproj::parse_clinical("id,tp,phq9,cesd,gad7,pswq\n", "c"), ErrorCode::kParseError);
}

TEST(Clinical, DuplicateKey) {
  EXPECT_ERROR_CODE(semproj::parse_clinical(kHeader + "p1,1,3,10,4,40\np1,1,4,10,4,40\n", "c"),
                    ErrorCode::kDuplicateKey);
}

TEST(Clinical, AllViolationsListed) {
  try {
    semproj::parse_clinical(kHeader + "p1,1,30,10,4,40\np2,1,3,61,4,40\n", "c.csv");
    FAIL();
  } catch (const semproj::Error& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("c.csv:2: PHQ9"), std::string::npos) << msg;
    EXPECT_NE(msg.find("c.csv:3: CESD"), std::string::npos) << msg;
  }
}

TEST(References, MissingClinicalRecordIsDangling) {
  std::vector<semproj::RawResponse> responses{{"p1", 1, Construct::kDepression, ResponseFormat::kWriteText, "x."},
                                              {"p9", 2, Construct::kWorry, ResponseFormat::kWriteText, "y."}};
  std::vector<semproj::ClinicalRecord> clinical{{"p1", 1, 1, 1, 1, 20}};
  try {
    semproj::check_references(responses, clinical);
    FAIL();
  } catch (const semproj::Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDanglingReference);
    EXPECT_NE(std::string(e.what()).find("(p9, 2)"), std::string::npos);
  }
  clinical.push_back({"p9", 2, 1, 1, 1, 20});
  EXPECT_NO_THROW(semproj::check_references(responses, clinical));
}

TEST(Anchors, ParseValidateAndRoundTrip) {
  const std::string doc = R"([{"axis":"A","construct":"depression","kind":"word","positive":["calm"],"negative":["sad"]}])";
  const auto sets = semproj::parse_anchors(doc, "a.json");
  ASSERT_EQ(sets.size(), 1u);
  EXPECT_EQ(sets[0].negative, std::vector<std::string>{"sad"});
  const auto again = semproj::parse_anchors(semproj::format_anchors(sets), "b");
  EXPECT_EQ(again[0].axis_name, "A");
  EXPECT_EQ(again[0].positive, sets[0].positive);
}

TEST(Anchors, Violations) {
  const std::string dup =
      R"([{"axis":"A","construct":"depression","kind":"word","positive":["x"],"negative":["y"]},)"
      R"({"axis":"A","construct":"depression","kind":"word","positive":["x"],"negative":["y"]}])";
  EXPECT_ERROR_CODE(semproj::parse_anchors(dup, "a"), ErrorCode::kDuplicateKey);
  const std::string overlap =
      R"([{"axis":"A","construct":"depression","kind":"word","positive":["Sad"],"negative":["sad"]}])";
  EXPECT_ERROR_CODE(semproj::parse_anchors(overlap, "a"), ErrorCode::kInvalidInput);
  EXPECT_ERROR_CODE(semproj::parse_anchors(R"({"axis":"A"})", "a"), ErrorCode::kParseError);
}

TEST(DefaultAnchors, LoadAndCoverBothConstructs) {
  const auto sets = semproj::load_anchors(fs::path(SEMPROJ_DATA_DIR) / "anchors" / "default_anchors.json");
  EXPECT_EQ(sets.size(), 6u);
  int depression = 0;
  for (const auto& s : sets) depression += s.construct == Construct::kDepression;
  EXPECT_EQ(depression, 3);
}

TEST(Scores, WriteThenLoadIsIdentical) {
  TempDir dir;
  std::mt19937_64 rng(3);
  std::normal_distribution<double> z;
  std::vector<semproj::ScoreRecord> records;
  for (int i = 0; i < 50; ++i) {
    const double p = z(rng) * std::pow(10.0, i % 7 - 3);
    records.push_back({"p" + std::to_string(i % 7), 1 + i % 2, i % 3 ? Construct::kDepression : Construct::kWorry,
                       semproj::kAllFormats[i % 4], "AX,IS", semproj::kAllRepresentations[i % 3], p, -p});
  }
  semproj::write_scores(records, dir.path() / "scores.csv");
  auto loaded = semproj::load_scores(dir.path() / "scores.csv");
  std::sort(records.begin(), records.end(), semproj::score_order);
  ASSERT_EQ(loaded.size(), records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(loaded[i].participant_id, records[i].participant_id);
    EXPECT_EQ(loaded[i].axis_name, records[i].axis_name);
    EXPECT_EQ(loaded[i].representation, records[i].representation);
    EXPECT_NEAR(loaded[i].projection, records[i].projection, 1e-8 * std::abs(records[i].projection));
    EXPECT_EQ(loaded[i].severity, -loaded[i].projection);
  }
  // Rewriting what was read reproduces the file byte for byte.
  EXPECT_EQ(semproj::format_scores(loaded), semproj::format_scores(records));
}

TEST(Scores, OrderIndependentOutput) {
  std::vector<semproj::ScoreRecord> a{{"p2", 1, Construct::kDepression, ResponseFormat::kWriteText, "X",
                                       semproj::Representation::kWhole, 0.5, -0.5},
                                      {"p1", 1, Construct::kDepression, ResponseFormat::kWriteText, "X",
                                       semproj::Representation::kWhole, -0.25, 0.25}};
  auto b = a;
  std::reverse(b.begin(), b.end());
  EXPECT_EQ(semproj::format_scores(a), semproj::format_scores(b));
}

TEST(Sentiment, RoundTrip) {
  std::vector<semproj::SentimentRecord> in{{"p1", 1, Construct::kWorry, ResponseFormat::kWriteWords, -0.4767,
                                            0.4767, 0.6, 0.4, 0.0}};
  const auto out = semproj::parse_sentiment(semproj::format_sentiment(in), "s");
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].compound, -0.4767);
  EXPECT_EQ(out[0].distress, 0.4767);
}

TEST(AtomicWrite, LeavesNoTempFile) {
  TempDir dir;
  semproj::write_file_atomic(dir.path() / "sub" / "f.txt", "one");
  semproj::write_file_atomic(dir.path() / "sub" / "f.txt", "two");
  EXPECT_FALSE(fs::exists(dir.path() / "sub" / "f.txt.tmp"));
  std::ifstream in(dir.path() / "sub" / "f.txt");
  std::string s;
  in >> s;
  EXPECT_EQ(s, "two");
}

TEST(Config, ParsesAndResolvesRelativePaths) {
  const auto j = nlohmann::json::parse(R"({
    "model_id": "m", "paths": {"responses": "r.jsonl", "cache": "/abs/cache"},
    "reliabilities": {"PHQ9": 0.89, "CESD": 0.9},
    "time_point": "t2", "construct": "depression", "seed": 7,
    "embedding": {"batch_size": 16, "cache_only": true}})");
  const auto c = semproj::RunConfig::from_json(j, "/base");
  EXPECT_EQ(c.resolve(c.responses_path), fs::path("/base/r.jsonl"));
  EXPECT_EQ(c.resolve(c.cache_path), fs::path("/abs/cache"));
  EXPECT_EQ(c.time_point, semproj::TimePointFilter::kT2);
  EXPECT_EQ(c.batch_size, 16u);
  EXPECT_TRUE(c.cache_only);
  EXPECT_TRUE(c.missing_reliabilities().empty());
  const auto again = semproj::RunConfig::from_json(nlohmann::json::parse(c.to_json().dump()), "/base");
  EXPECT_EQ(again.to_json(), c.to_json());
}

TEST(Config, MissingReliabilitiesNamed) {
  const auto c = semproj::RunConfig::from_json(nlohmann::json::parse(R"({"reliabilities": {"PHQ9": 0.8}})"), "/");
  try {
    c.require_reliabilities();
    FAIL();
  } catch (const semproj::Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidConfig);
    const std::string msg = e.what();
    EXPECT_NE(msg.find("CESD"), std::string::npos);
    EXPECT_NE(msg.find("GAD7"), std::string::npos);
    EXPECT_NE(msg.find("PSWQ"), std::string::npos);
    EXPECT_EQ(msg.find("PHQ9"), std::string::npos);
  }
}

TEST(Config, InvalidValuesCollected) {
  const auto j = nlohmann::json::parse(
      R"({"reliabilities": {"PHQ9": 1.5, "BDI": 0.9}, "time_point": "t3", "embedding": {"batch_size": 0}})");
  try {
    semproj::RunConfig::from_json(j, "/");
    FAIL();
  } catch (const semproj::Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidConfig);
    const std::string msg = e.what();
    for (const char* needle : {"PHQ9", "BDI", "time_point", "batch_size"}) {
      EXPECT_NE(msg.find(needle), std::string::npos) << needle;
    }
  }
}

}  // namespace
