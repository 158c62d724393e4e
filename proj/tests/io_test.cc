/*
 * Copyright 2026 The Metagame Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "metagame/errors.h"
#include "metagame/game_io.h"
#include "metagame/meta.h"
#include "metagame/model_zoo.h"
#include "metagame/report.h"
#include "metagame/shapley.h"
#include "oracles.h"

namespace metagame {
namespace {

std::string ParseErrorWhere(std::string_view text) {
  try {
    ParseGameDocument(text);
  } catch (const ParseError& e) {
    return e.where();
  }
  return "<no error>";
}

TEST(GameDocumentTest, DenseRoundTrip) {
  GameDocument doc;
  doc.d = 3;
  doc.values = oracle::RandomTable(3, 5);
  const auto parsed = ParseGameDocument(WriteGameDocument(doc));
  EXPECT_EQ(parsed.kind, GameKind::kDenseGame);
  EXPECT_EQ(parsed.d, 3);
  EXPECT_EQ(parsed.values, doc.values);
  EXPECT_EQ(parsed.Game()->EvaluateBits(5), doc.values[5]);
}

TEST(GameDocumentTest, ModelBlockRoundTrip) {
  const auto doc = DenseDocumentFromModel(Table1Model(), {2.0, 3.0}, {0.0, 0.0});
  EXPECT_EQ(doc.values, (std::vector<double>{0.0, 2.0, 0.0, 20.0}));
  const auto parsed = ParseGameDocument(WriteGameDocument(doc, true));
  ASSERT_TRUE(parsed.model.has_value());
  EXPECT_EQ(parsed.model->x, (std::vector<double>{2.0, 3.0}));
  ASSERT_EQ(parsed.model->monomials.size(), 2u);
  EXPECT_EQ(parsed.model->monomials[1].exponents, (std::vector<int>{1, 2}));
}

TEST(GameDocumentTest, MobiusDocument) {
  const auto doc = ParseGameDocument(
      R"({"kind":"mobius","d":3,"terms":[[[0],2.0],[[0,1],18],[[2,1,0],-1.5]]})");
  EXPECT_EQ(doc.kind, GameKind::kMobius);
  ASSERT_TRUE(doc.mobius.has_value());
  EXPECT_EQ(doc.mobius->coefficient(Coalition::Of({0, 1, 2}, 3)), -1.5);
  const auto game = doc.Game();
  EXPECT_EQ(game->EvaluateBits(0b011), 20.0);
  const auto again = ParseGameDocument(WriteGameDocument(doc));
  EXPECT_EQ(again.mobius->coefficients(), doc.mobius->coefficients());
}

TEST(GameDocumentTest, AttributionTableDocument) {
  const auto doc = ParseGameDocument(
      R"({"kind":"attribution_table","d":2,"targets":[0,1],"values":[[2,11],[0,null]]})");
  ASSERT_TRUE(doc.attribution.has_value());
  const ExternalMethod method(*doc.attribution);
  EXPECT_EQ(method.Restricted(Coalition::Full(2), 0), 11.0);
  EXPECT_THROW(method.Restricted(Coalition::Full(2), 1), MissingCoalitionError);
  const auto again = ParseGameDocument(WriteGameDocument(doc));
  EXPECT_FALSE(again.attribution->values[1][1].has_value());
  EXPECT_EQ(again.attribution->values[0][1], 11.0);
}

TEST(GameDocumentTest, ParseErrorLocations) {
  EXPECT_EQ(ParseErrorWhere("{\"kind\": "), "byte 10");
  EXPECT_EQ(ParseErrorWhere(R"({"kind":"dense_game","d":2,"values":[1,2,3]})"), "/values");
  EXPECT_EQ(ParseErrorWhere(R"({"kind":"dense_game","d":2,"values":[1,2,"x",4]})"),
            "/values/2");
  EXPECT_EQ(ParseErrorWhere(R"({"kind":"mobius","d":2,"terms":[[[0,5],1]]})"),
            "/terms/0/0/1");
  EXPECT_EQ(ParseErrorWhere(R"({"kind":"dense_game","d":31,"values":[]})"), "/d");
  EXPECT_NE(ParseErrorWhere(R"({"kind":"banana","d":2})"), "<no error>");
  EXPECT_NE(ParseErrorWhere(R"([1,2])"), "<no error>");
}

TEST(GameDocumentTest, ReadFileReportsPath) {
  try {
    ReadGameFile("/nonexistent/game.json");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(e.where().find("/nonexistent/game.json"), std::string::npos);
  }
  const std::string path = ::testing::TempDir() + "bad_game.json";
  std::ofstream(path) << R"({"kind":"dense_game","d":1,"values":[1]})";
  try {
    ReadGameFile(path);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.where(), path + ":/values");
  }
  std::remove(path.c_str());
}

TEST(ResultDocumentTest, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 18.0}) {
    EXPECT_EQ(std::stod(FormatDouble(v)), v);
  }
}

TEST(ResultDocumentTest, DirectionalJsonRoundTrip) {
  const int d = 5;
  const ShapleyMethod sv{TableGame(d, oracle::RandomTable(d, 4))};
  const auto doc = DirectionalDocument(MetaAttributionExact(sv), "meta-sv",
                                       {{"method", "meta-sv"}, {"seed", "3"}});
  const std::string text = WriteResultJson(doc);
  EXPECT_NE(text.find("\"orientation\":\"source_to_target_by_row\""), std::string::npos);
  const auto parsed = ParseResultJson(text);
  EXPECT_EQ(parsed.entries, doc.entries);
  EXPECT_EQ(parsed.config, doc.config);
  EXPECT_EQ(ComputeResiduals(parsed), doc.residuals);
}

TEST(ResultDocumentTest, AttributionJsonRoundTrip) {
  const auto table = oracle::RandomTable(4, 8);
  const auto doc = AttributionDocument(ShapleyValueExact(TableGame(4, table)), "sv", {});
  const auto parsed = ParseResultJson(WriteResultJson(doc, true));
  EXPECT_EQ(parsed.kind, ResultKind::kAttribution);
  EXPECT_EQ(parsed.entries, doc.entries);
  EXPECT_EQ(ComputeResiduals(parsed), doc.residuals);
}

TEST(ResultDocumentTest, CsvRoundTrip) {
  const ShapleyMethod sv{TableGame(4, oracle::RandomTable(4, 9))};
  const auto doc = DirectionalDocument(MetaAttributionExact(sv), "meta-sv", {});
  const auto records = ParseResultCsv(WriteResultCsv(doc));
  ASSERT_EQ(records.size(), 16u);
  ResultDocument rebuilt = doc;
  for (const auto& r : records) rebuilt.entries[r.row * 4 + r.column] = r.value;
  EXPECT_EQ(rebuilt.entries, doc.entries);
  EXPECT_EQ(ComputeResiduals(rebuilt), doc.residuals);
}

TEST(ResultDocumentTest, MalformedCsv) {
  EXPECT_THROW(ParseResultCsv(""), ParseError);
  EXPECT_THROW(ParseResultCsv("a,b\n"), ParseError);
  EXPECT_THROW(ParseResultCsv("target,source,value\n0,x,1\n"), ParseError);
}

}  // namespace
}  // namespace metagame
