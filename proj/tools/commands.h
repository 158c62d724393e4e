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

#ifndef METAGAME_TOOLS_COMMANDS_H_
#define METAGAME_TOOLS_COMMANDS_H_

#include <cstdint>
#include <ostream>
#include <string>

#include "inputs.h"
#include "metagame/report.h"

namespace metagame::cli {

struct OutputFlags {
  std::string out;
  std::string format = "json";
  bool pretty = false;
  std::string heatmap;
};

// Writes `text` to --out when given, else to `stream`.
void WriteOutput(const std::string& text, const OutputFlags& flags, std::ostream& stream);

// Renders a result document as a plain-text table.
std::string PrettyResult(const ResultDocument& doc);

struct Table1Flags {
  std::string x = "2,3";
  int steps = 1024;
  OutputFlags output;
};
int RunTable1(const Table1Flags& flags, std::ostream& out, std::ostream& err);

struct BenchFlags {
  InputFlags input;
  std::string approx = "both";
  std::string budgets = "128,256,512,1024,2048,4096,8192";
  int reps = 20;
  std::uint64_t seed = 0;
  bool pairing = false;
  int threads = 1;
  OutputFlags output;
};
int RunBench(const BenchFlags& flags, std::ostream& out, std::ostream& err);

}  // namespace metagame::cli

#endif  // METAGAME_TOOLS_COMMANDS_H_
