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

#ifndef METAGAME_REPORT_H_
#define METAGAME_REPORT_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "metagame/attribution.h"
#include "metagame/interactions.h"
#include "metagame/meta.h"

namespace metagame {

// Resolved run configuration, echoed verbatim in every result document.
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

enum class ResultKind { kAttribution, kPairIndex, kSerialMatrix, kDirectionalMatrix };

// "attribution", "pair_index", "serial_matrix", "directional_matrix".
std::string_view ResultKindName(ResultKind kind);

// Everything a result document carries. Matrices are row-major with one row
// per entry of `rows` and d columns.
//
//   attribution:        entries = phi (one row); reference_total, if set, is
//                       the value sum phi should reach.
//   pair_index:         entries = symmetric pair matrix; singles; first_order
//                       is the reference attribution; `directional` is set for
//                       sop (target i, source j).
//   serial_matrix:      entries(i, j) = outer attribution of j on phi_i.
//   directional_matrix: entries(r, j) = influence of source j on target rows[r].
struct ResultDocument {
  ResultKind kind = ResultKind::kAttribution;
  std::string method;
  std::string base_method;  // directional matrices only
  int d = 0;
  ConfigEcho config;
  std::vector<int> rows;
  std::vector<double> entries;
  std::vector<double> singles;
  std::vector<double> directional;
  std::vector<double> first_order;
  std::vector<double> stderrs;
  std::vector<double> residuals;
  bool has_reference_total = false;
  double reference_total = 0.0;
  // Oracle calls made by a sampling estimator; 0 for exact results.
  std::uint64_t evaluations_used = 0;
};

// Residuals implied by the document's payload, each summed in ascending order:
//   attribution:        |sum phi - reference_total| (empty without a total)
//   pair_index:         per i, |singles_i + sum_j directional(i, j) - ref_i|
//                       when directional is set, else
//                       |singles_i + 1/2 sum_j pairs(i, j) - ref_i|
//   serial/directional: per row, |sum_j entries(r, j) - first_order_r|
// Empty when first_order is empty.
std::vector<double> ComputeResiduals(const ResultDocument& doc);

ResultDocument AttributionDocument(const AttributionVector& phi, std::string method,
                                   ConfigEcho config);
ResultDocument PairIndexDocument(const PairIndex& index, std::string method,
                                 const std::vector<double>& reference,
                                 ConfigEcho config);
ResultDocument SopDocument(const SopResult& sop, const std::vector<double>& reference,
                           ConfigEcho config);
ResultDocument SerialDocument(const SerialMatrix& serial, std::string method,
                              const std::vector<double>& first_order,
                              ConfigEcho config);
ResultDocument DirectionalDocument(const DirectionalMatrix& dm, std::string method,
                                   ConfigEcho config);

// Structured form. Doubles are written in shortest round-trip form, so parsing
// recovers every value bit for bit.
std::string WriteResultJson(const ResultDocument& doc, bool pretty = false);
// Throws ParseError.
ResultDocument ParseResultJson(std::string_view text);

// Flat CSV. Matrices use the header target,source,value (pair indices put
// singles on the diagonal); attributions use feature,value. A stderr column
// is appended when stderrs are present.
std::string WriteResultCsv(const ResultDocument& doc);

struct CsvRecord {
  int row = 0;
  int column = 0;
  double value = 0.0;
};
// Reads back the value column of WriteResultCsv output. Throws ParseError
// with a "line N" location.
std::vector<CsvRecord> ParseResultCsv(std::string_view text);

// Shortest round-trip decimal form of a double.
std::string FormatDouble(double value);

}  // namespace metagame

#endif  // METAGAME_REPORT_H_
