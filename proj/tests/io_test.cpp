/*
 * Copyright 2026 The ovalue Authors.
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

#include "ovalue/io.hpp"

#include <gtest/gtest.h>

#include <sstream>
#include <string>

namespace ovalue {
namespace {

const std::string kData = OVALUE_TEST_DATA;

std::string error_of(const std::string& file) {
  try {
    load_predictions(kData + "/" + file);
  } catch (const DataError& e) {
    return e.what();
  }
  return "";
}

TEST(LoadPredictions, Minimal) {
  const auto p = load_predictions(kData + "/minimal.csv");
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p.labels, (std::vector<int>{1, 0}));
  EXPECT_EQ(p.scores, (std::vector<double>{0.9, 0.2}));
}

TEST(LoadPredictions, ExtraColumnsAndTabs) {
  const auto csv = load_predictions(kData + "/golden.csv");
  const auto tsv = load_predictions(kData + "/golden.tsv");
  EXPECT_EQ(csv.size(), 400u);
  EXPECT_EQ(csv.labels, tsv.labels);
  EXPECT_EQ(csv.scores, tsv.scores);
}

TEST(LoadPredictions, ScoresOutsideUnitIntervalAreFine) {
  const auto p = load_predictions(kData + "/wide_scores.csv");
  EXPECT_EQ(p.scores, (std::vector<double>{12.5, -3, 140, 7}));
}

TEST(LoadPredictions, Diagnostics) {
  EXPECT_NE(error_of("bad_label_row5.csv").find("data row 5"), std::string::npos);
  EXPECT_NE(error_of("missing_score.csv").find("missing column 'score'"), std::string::npos);
  EXPECT_NE(error_of("bad_score.csv").find("data row 2"), std::string::npos);
  EXPECT_NE(error_of("nan_score.csv").find("unparseable score"), std::string::npos);
  EXPECT_NE(error_of("empty.csv").find("empty"), std::string::npos);
  EXPECT_NE(error_of("does_not_exist.csv").find("cannot open"), std::string::npos);
}

TEST(ReadPredictions, StreamEdgeCases) {
  std::istringstream header_only("label,score\n");
  EXPECT_THROW(read_predictions(header_only), DataError);

  std::istringstream ragged("label,score\n1,0.5,7\n");
  EXPECT_THROW(read_predictions(ragged), DataError);

  std::istringstream crlf("label,score\r\n1,0.5\r\n\r\n0,0.25\r\n");
  const auto p = read_predictions(crlf);
  EXPECT_EQ(p.scores, (std::vector<double>{0.5, 0.25}));

  std::istringstream forced("label;score\n1;0.5\n");
  EXPECT_THROW(read_predictions(forced), DataError);
  std::istringstream semicolon("label;score\n1;0.5\n");
  EXPECT_EQ(read_predictions(semicolon, ';').size(), 1u);

  std::istringstream float_labels("score,label\n0.3,1.0\n0.1,0\n");
  EXPECT_EQ(read_predictions(float_labels).labels, (std::vector<int>{1, 0}));
}

}  // namespace
}  // namespace ovalue
