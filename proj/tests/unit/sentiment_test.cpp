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

#include "semproj/sentiment.hpp"

#include <gtest/gtest.h>

#include <fstream>

#include "support/error_matchers.hpp"

namespace {

using semproj::ErrorCode;

const semproj::SentimentLexicon& lexicon() {
  static const auto lex = semproj::load_sentiment_lexicon(SEMPROJ_DATA_DIR "/sentiment");
  return lex;
}

nlohmann::json parity_cases() {
  std::ifstream in(SEMPROJ_FIXTURE_DIR "/sentiment_parity.json");
  return nlohmann::json::parse(in).at("cases");
}

TEST(SentimentLexicon, LoadsShippedData) {
  const auto& lex = lexicon();
  EXPECT_GT(lex.valence.size(), 7000u);
  EXPECT_DOUBLE_EQ(lex.valence.at("good"), 1.9);
  EXPECT_EQ(lex.lexicon_sha256, "1ec9c6e9ee19aade328f8beb393a6afa71a5bb3acf7d3cc22d4ef568df374bf5");
  EXPECT_EQ(lex.lexicon_sha256, semproj::sha256_file_hex(SEMPROJ_DATA_DIR "/sentiment/vader_lexicon.txt"));
  EXPECT_NE(lex.id.find("vader-rules-3.3.2"), std::string::npos);
  EXPECT_TRUE(lex.negations.count("not"));
  EXPECT_FALSE(lex.emoji.empty());
}

TEST(SentimentLexicon, MissingDirectory) {
  EXPECT_ERROR_CODE(semproj::load_sentiment_lexicon("/nonexistent/semproj"), ErrorCode::kLexiconMissing);
  EXPECT_ERROR_CODE(semproj::analyze("good", semproj::SentimentLexicon{}), ErrorCode::kLexiconMissing);
}

TEST(Sentiment, EmptyAndUnknownText) {
  for (const char* t : {"", "   ", "qwzx plorf"}) {
    const auto r = semproj::analyze(t, lexicon());
    EXPECT_EQ(r.compound, 0.0) << t;
    EXPECT_EQ(r.neu, 1.0) << t;
    EXPECT_EQ(r.neg + r.pos, 0.0) << t;
  }
}

TEST(Sentiment, NegationLowersCompound) {
  EXPECT_LT(semproj::analyze("not good", lexicon()).compound, semproj::analyze("good", lexicon()).compound);
}

TEST(Sentiment, ParityWithReference) {
  for (const auto& c : parity_cases()) {
    const auto text = c.at("text").get<std::string>();
    const auto r = semproj::analyze(text, lexicon());
    EXPECT_NEAR(r.compound, c.at("compound_unrounded").get<double>(), 1e-9) << text;
    EXPECT_NEAR(r.compound, c.at("compound").get<double>(), 1e-4) << text;
    if (!text.empty()) {
      EXPECT_NEAR(r.neg, c.at("neg").get<double>(), 1e-9) << text;
      EXPECT_NEAR(r.neu, c.at("neu").get<double>(), 1e-9) << text;
      EXPECT_NEAR(r.pos, c.at("pos").get<double>(), 1e-9) << text;
    }
    EXPECT_EQ(r.distress, -r.compound);
    EXPECT_NEAR(r.neg + r.neu + r.pos, 1.0, 1e-6) << text;
  }
}

TEST(Sentiment, DistressIndex) {
  semproj::SentimentResult r;
  r.compound = 0.83;
  EXPECT_EQ(semproj::distress_index(r), -0.83);
  r.compound = -0.5;
  EXPECT_EQ(semproj::distress_index(r), 0.5);
  r.compound = 0.0;
  EXPECT_EQ(semproj::distress_index(r), 0.0);
  r.compound = 0.37;
  semproj::SentimentResult twice;
  twice.compound = semproj::distress_index(r);
  EXPECT_EQ(semproj::distress_index(twice), r.compound);
}

TEST(Sentiment, LowercasingCapsNeverIncreasesMagnitude) {
  const std::vector<std::pair<std::string, std::string>> pairs{
      {"I feel SAD today", "I feel sad today"},
      {"This is GREAT news", "This is great news"},
      {"I am VERY happy now", "I am very happy now"},
      {"Everything is AWFUL and bleak", "Everything is awful and bleak"}};
  for (const auto& [caps, lower] : pairs) {
    EXPECT_LE(std::abs(semproj::analyze(lower, lexicon()).compound),
              std::abs(semproj::analyze(caps, lexicon()).compound))
        << caps;
  }
}

TEST(Sentiment, NeutralTokenKeepsSign) {
  for (const auto& c : parity_cases()) {
    const auto text = c.at("text").get<std::string>();
    const double base = semproj::analyze(text, lexicon()).compound;
    const double padded = semproj::analyze(text + " zzyzx", lexicon()).compound;
    EXPECT_EQ(base > 0, padded > 0) << text;
    EXPECT_EQ(base < 0, padded < 0) << text;
  }
}

TEST(Sentiment, ButClauseReweighting) {
  const double plain = semproj::analyze("good", lexicon()).compound;
  const double after = semproj::analyze("meh but good", lexicon()).compound;
  EXPECT_GT(after, plain);
}

}  // namespace
