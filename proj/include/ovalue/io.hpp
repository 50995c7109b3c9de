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

// Delimiter-separated prediction files: a header row naming at least the
// columns `label` (0 or 1) and `score` (any finite real). Other columns are
// ignored. The delimiter is a tab if the header contains one, else a comma.

#pragma once

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ovalue/confusion.hpp"
#include "ovalue/errors.hpp"

namespace ovalue {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split(std::string_view line, char delim) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delim, start);
    fields.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

inline std::optional<double> parse_double(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    return std::nullopt;
  }
  return value;
}

}  // namespace detail

inline Predictions read_predictions(std::istream& in,
                                    std::optional<char> delimiter = {},
                                    const std::string& source = "input") {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (!have_header && std::getline(in, line)) {
    ++line_no;
    have_header = !detail::trim(line).empty();
  }
  if (!have_header) throw DataError(source + ": file is empty");

  const char delim = delimiter.value_or(line.find('\t') != std::string::npos ? '\t' : ',');
  const auto header = detail::split(line, delim);
  std::optional<std::size_t> label_col, score_col;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "label") label_col = i;
    if (header[i] == "score") score_col = i;
  }
  if (!label_col) throw DataError(source + ": missing column 'label'");
  if (!score_col) throw DataError(source + ": missing column 'score'");

  Predictions preds;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    ++row;
    auto where = [&] {
      return source + ": data row " + std::to_string(row) + " (line " +
             std::to_string(line_no) + ")";
    };
    const auto fields = detail::split(line, delim);
    if (fields.size() != header.size()) {
      throw DataError(where() + ": expected " + std::to_string(header.size()) +
                      " fields, found " + std::to_string(fields.size()));
    }
    const auto label_text = fields[*label_col];
    const auto label = detail::parse_double(label_text);
    if (!label || (*label != 0.0 && *label != 1.0)) {
      throw DataError(where() + ": label must be 0 or 1, got '" +
                      std::string(label_text) + "'");
    }
    const auto score_text = fields[*score_col];
    const auto score = detail::parse_double(score_text);
    if (!score || !std::isfinite(*score)) {
      throw DataError(where() + ": unparseable score '" +
                      std::string(score_text) + "'");
    }
    preds.labels.push_back(*label == 1.0 ? 1 : 0);
    preds.scores.push_back(*score);
  }
  if (preds.labels.empty()) throw DataError(source + ": no data rows");
  return preds;
}

inline Predictions load_predictions(const std::filesystem::path& path,
                                    std::optional<char> delimiter = {}) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return read_predictions(in, delimiter, path.string());
}

}  // namespace ovalue
