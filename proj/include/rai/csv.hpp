// Copyright 2026 The Authors.
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

#pragma once

// Delimited text input: a header row of names, then numeric rows. Comma or
// tab is detected from the header line. Missing values are errors.

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "rai/error.hpp"
#include "rai/regression.hpp"

namespace rai {

struct Table {
  std::vector<std::string> header;
  std::vector<Vector> columns;
  std::vector<std::string> skipped;  // entirely non-numeric columns
};

namespace detail {

inline std::vector<std::string> split_fields(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delim) {
      out.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  out.push_back(std::move(field));
  return out;
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline bool parse_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  errno = 0;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && errno != ERANGE && std::isfinite(out);
}

inline bool is_missing(const std::string& s) {
  return s.empty() || s == "NA" || s == "na" || s == "NaN" || s == "nan" || s == "?" || s == "NULL";
}

}  // namespace detail

inline Table read_delimited(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!detail::trim(line).empty()) break;
  }
  if (detail::trim(line).empty()) throw Error(ErrorCode::kParseError, "input is empty");
  const char delim = line.find('\t') != std::string::npos ? '\t' : ',';

  Table t;
  for (auto& f : detail::split_fields(line, delim)) t.header.push_back(detail::trim(f));
  const std::size_t width = t.header.size();
  std::vector<std::vector<std::string>> raw(width);
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    auto fields = detail::split_fields(line, delim);
    if (fields.size() != width) {
      throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                                              " fields, expected " + std::to_string(width));
    }
    for (std::size_t j = 0; j < width; ++j) {
      std::string v = detail::trim(fields[j]);
      if (detail::is_missing(v)) {
        throw Error(ErrorCode::kParseError,
                    "missing value in column '" + t.header[j] + "' at line " + std::to_string(line_no));
      }
      raw[j].push_back(std::move(v));
    }
  }
  if (raw.empty() || raw.front().empty()) throw Error(ErrorCode::kParseError, "no data rows");

  std::vector<std::string> header;
  for (std::size_t j = 0; j < width; ++j) {
    Vector col;
    std::size_t bad = 0;
    for (const std::string& s : raw[j]) {
      double v = 0.0;
      if (detail::parse_number(s, v)) {
        col.push_back(v);
      } else {
        ++bad;
      }
    }
    if (bad == raw[j].size()) {
      t.skipped.push_back(t.header[j]);
      continue;
    }
    if (bad > 0) throw Error(ErrorCode::kParseError, "column '" + t.header[j] + "' mixes numbers and text");
    header.push_back(t.header[j]);
    t.columns.push_back(std::move(col));
  }
  t.header = std::move(header);
  return t;
}

inline Table read_delimited_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open '" + path + "'");
  return read_delimited(in);
}

struct RegressionInput {
  std::vector<Vector> features;
  std::vector<std::string> names;
  Vector response;
  std::string response_name;
};

inline RegressionInput split_response(const Table& t, const std::string& response) {
  RegressionInput out;
  out.response_name = response;
  bool found = false;
  for (std::size_t j = 0; j < t.header.size(); ++j) {
    if (t.header[j] == response && !found) {
      out.response = t.columns[j];
      found = true;
    } else {
      out.features.push_back(t.columns[j]);
      out.names.push_back(t.header[j]);
    }
  }
  if (!found) throw Error(ErrorCode::kParseError, "no numeric column named '" + response + "'");
  if (out.features.empty()) throw Error(ErrorCode::kParseError, "no feature columns");
  return out;
}

}  // namespace rai
