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

#include "metagame/report.h"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "metagame/errors.h"

namespace metagame {
namespace {

using Json = nlohmann::ordered_json;

constexpr ResultKind kKinds[] = {ResultKind::kAttribution, ResultKind::kPairIndex,
                                 ResultKind::kSerialMatrix,
                                 ResultKind::kDirectionalMatrix};

std::vector<int> Iota(int d) {
  std::vector<int> out(d);
  for (int i = 0; i < d; ++i) out[i] = i;
  return out;
}

Json ConfigJson(const ConfigEcho& config) {
  Json out = Json::object();
  for (const auto& [key, value] : config) out[key] = value;
  return out;
}

std::vector<double> Doubles(const Json& root, const char* key) {
  std::vector<double> out;
  auto it = root.find(key);
  if (it == root.end()) return out;
  if (!it->is_array()) throw ParseError(std::string("/") + key, "expected an array");
  for (std::size_t k = 0; k < it->size(); ++k) {
    const Json& v = (*it)[k];
    if (!v.is_number()) {
      throw ParseError(std::string("/") + key + "/" + std::to_string(k),
                       "expected a number");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

std::string_view ResultKindName(ResultKind kind) {
  switch (kind) {
    case ResultKind::kAttribution:
      return "attribution";
    case ResultKind::kPairIndex:
      return "pair_index";
    case ResultKind::kSerialMatrix:
      return "serial_matrix";
    case ResultKind::kDirectionalMatrix:
      return "directional_matrix";
  }
  return "unknown";
}

std::string FormatDouble(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("cannot format double");
  return std::string(buf, end);
}

std::vector<double> ComputeResiduals(const ResultDocument& doc) {
  std::vector<double> out;
  const int d = doc.d;
  switch (doc.kind) {
    case ResultKind::kAttribution: {
      if (!doc.has_reference_total) return out;
      double sum = 0.0;
      for (double v : doc.entries) sum += v;
      out.push_back(std::abs(sum - doc.reference_total));
      return out;
    }
    case ResultKind::kPairIndex: {
      if (doc.first_order.empty()) return out;
      const bool directional = !doc.directional.empty();
      for (int i = 0; i < d; ++i) {
        double rest = 0.0;
        for (int j = 0; j < d; ++j) {
          if (j == i) continue;
          rest += directional ? doc.directional[i * d + j] : doc.entries[i * d + j];
        }
        const double total = doc.singles[i] + (directional ? rest : 0.5 * rest);
        out.push_back(std::abs(total - doc.first_order[i]));
      }
      return out;
    }
    case ResultKind::kSerialMatrix:
    case ResultKind::kDirectionalMatrix: {
      if (doc.first_order.empty()) return out;
      for (std::size_t r = 0; r < doc.rows.size(); ++r) {
        double sum = 0.0;
        for (int j = 0; j < d; ++j) sum += doc.entries[r * d + j];
        out.push_back(std::abs(sum - doc.first_order[r]));
      }
      return out;
    }
  }
  return out;
}

ResultDocument AttributionDocument(const AttributionVector& phi, std::string method,
                                   ConfigEcho config) {
  ResultDocument doc;
  doc.kind = ResultKind::kAttribution;
  doc.method = std::move(method);
  doc.d = phi.d();
  doc.config = std::move(config);
  doc.rows = {0};
  doc.entries = phi.values;
  return doc;
}

ResultDocument PairIndexDocument(const PairIndex& index, std::string method,
                                 const std::vector<double>& reference,
                                 ConfigEcho config) {
  ResultDocument doc;
  doc.kind = ResultKind::kPairIndex;
  doc.method = std::move(method);
  doc.d = index.d();
  doc.config = std::move(config);
  doc.rows = Iota(index.d());
  doc.entries = index.PairMatrix();
  doc.singles = index.singles();
  doc.first_order = reference;
  doc.residuals = ComputeResiduals(doc);
  return doc;
}

ResultDocument SopDocument(const SopResult& sop, const std::vector<double>& reference,
                           ConfigEcho config) {
  ResultDocument doc = PairIndexDocument(sop.set_based, "sop", {}, std::move(config));
  doc.directional = sop.directional;
  doc.first_order = reference;
  doc.residuals = ComputeResiduals(doc);
  return doc;
}

ResultDocument SerialDocument(const SerialMatrix& serial, std::string method,
                              const std::vector<double>& first_order,
                              ConfigEcho config) {
  ResultDocument doc;
  doc.kind = ResultKind::kSerialMatrix;
  doc.method = std::move(method);
  doc.d = serial.d;
  doc.config = std::move(config);
  doc.rows = Iota(serial.d);
  doc.entries = serial.entries;
  doc.first_order = first_order;
  doc.residuals = ComputeResiduals(doc);
  return doc;
}

ResultDocument DirectionalDocument(const DirectionalMatrix& dm, std::string method,
                                   ConfigEcho config) {
  ResultDocument doc;
  doc.kind = ResultKind::kDirectionalMatrix;
  doc.method = std::move(method);
  doc.base_method = std::string(MethodTagName(dm.base));
  doc.d = dm.d;
  doc.config = std::move(config);
  doc.rows = dm.targets;
  doc.entries = dm.entries;
  doc.first_order = dm.first_order;
  doc.stderrs = dm.stderrs;
  doc.residuals = ComputeResiduals(doc);
  return doc;
}

std::string WriteResultJson(const ResultDocument& doc, bool pretty) {
  Json root;
  root["config"] = ConfigJson(doc.config);
  root["kind"] = std::string(ResultKindName(doc.kind));
  root["method"] = doc.method;
  root["d"] = doc.d;
  if (doc.kind == ResultKind::kDirectionalMatrix) {
    root["base_method"] = doc.base_method;
  }
  if (doc.kind != ResultKind::kAttribution) {
    root["orientation"] = std::string(kOrientation);
    root["rows"] = doc.rows;
  }
  if (doc.kind == ResultKind::kAttribution) {
    root["values"] = doc.entries;
    if (doc.has_reference_total) root["reference_total"] = doc.reference_total;
  } else {
    root["entries"] = doc.entries;
  }
  if (!doc.singles.empty()) root["singles"] = doc.singles;
  if (!doc.directional.empty()) root["directional"] = doc.directional;
  if (!doc.first_order.empty()) root["first_order"] = doc.first_order;
  if (!doc.stderrs.empty()) root["stderr"] = doc.stderrs;
  if (doc.evaluations_used != 0) root["evaluations_used"] = doc.evaluations_used;
  root["residuals"] = doc.residuals;
  return root.dump(pretty ? 2 : -1) + "\n";
}

ResultDocument ParseResultJson(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), "malformed document");
  }
  if (!root.is_object()) throw ParseError("/", "expected an object");
  try {
    ResultDocument doc;
    const std::string kind = root.at("kind").get<std::string>();
    bool known = false;
    for (ResultKind k : kKinds) {
      if (ResultKindName(k) == kind) {
        doc.kind = k;
        known = true;
      }
    }
    if (!known) throw ParseError("/kind", "unknown result kind '" + kind + "'");
    doc.method = root.at("method").get<std::string>();
    doc.d = root.at("d").get<int>();
    for (const auto& [key, value] : root.at("config").items()) {
      doc.config.emplace_back(key, value.get<std::string>());
    }
    if (doc.kind == ResultKind::kAttribution) {
      doc.rows = {0};
      doc.entries = Doubles(root, "values");
      if (root.contains("reference_total")) {
        doc.has_reference_total = true;
        doc.reference_total = root["reference_total"].get<double>();
      }
    } else {
      doc.rows = root.at("rows").get<std::vector<int>>();
      doc.entries = Doubles(root, "entries");
    }
    if (root.contains("base_method")) doc.base_method = root["base_method"].get<std::string>();
    doc.singles = Doubles(root, "singles");
    doc.directional = Doubles(root, "directional");
    doc.first_order = Doubles(root, "first_order");
    doc.stderrs = Doubles(root, "stderr");
    doc.residuals = Doubles(root, "residuals");
    if (root.contains("evaluations_used")) {
      doc.evaluations_used = root["evaluations_used"].get<std::uint64_t>();
    }
    const std::size_t expected = doc.rows.size() * static_cast<std::size_t>(doc.d);
    if (doc.kind != ResultKind::kAttribution && doc.entries.size() != expected) {
      throw ParseError("/entries", "expected " + std::to_string(expected) + " entries");
    }
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("/", e.what());
  }
}

std::string WriteResultCsv(const ResultDocument& doc) {
  std::ostringstream out;
  const bool with_err = !doc.stderrs.empty();
  const int d = doc.d;
  if (doc.kind == ResultKind::kAttribution) {
    out << "feature,value" << (with_err ? ",stderr" : "") << "\n";
    for (int i = 0; i < d; ++i) {
      out << i << "," << FormatDouble(doc.entries[i]);
      if (with_err) out << "," << FormatDouble(doc.stderrs[i]);
      out << "\n";
    }
    return out.str();
  }
  out << "target,source,value" << (with_err ? ",stderr" : "") << "\n";
  for (std::size_t r = 0; r < doc.rows.size(); ++r) {
    const int target = doc.rows[r];
    for (int j = 0; j < d; ++j) {
      double value = doc.entries[r * d + j];
      if (doc.kind == ResultKind::kPairIndex) {
        if (j == target) value = doc.singles[target];
        else if (!doc.directional.empty()) value = doc.directional[r * d + j];
      }
      out << target << "," << j << "," << FormatDouble(value);
      if (with_err) out << "," << FormatDouble(doc.stderrs[r * d + j]);
      out << "\n";
    }
  }
  return out.str();
}

std::vector<CsvRecord> ParseResultCsv(std::string_view text) {
  std::vector<CsvRecord> records;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool matrix = false;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    if (line_no == 1) {
      if (line.starts_with("target,source,value")) {
        matrix = true;
      } else if (!line.starts_with("feature,value")) {
        throw ParseError(where, "unrecognized header");
      }
      continue;
    }
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    const std::size_t needed = matrix ? 3 : 2;
    if (fields.size() < needed) throw ParseError(where, "too few fields");
    auto parse_int = [&](std::string_view f) {
      int v = 0;
      auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || p != f.data() + f.size()) {
        throw ParseError(where, "bad integer '" + std::string(f) + "'");
      }
      return v;
    };
    auto parse_double = [&](std::string_view f) {
      double v = 0;
      auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || p != f.data() + f.size()) {
        throw ParseError(where, "bad number '" + std::string(f) + "'");
      }
      return v;
    };
    CsvRecord rec;
    if (matrix) {
      rec.row = parse_int(fields[0]);
      rec.column = parse_int(fields[1]);
      rec.value = parse_double(fields[2]);
    } else {
      rec.column = parse_int(fields[0]);
      rec.value = parse_double(fields[1]);
    }
    records.push_back(rec);
  }
  if (line_no == 0) throw ParseError("line 1", "empty document");
  return records;
}

}  // namespace metagame
