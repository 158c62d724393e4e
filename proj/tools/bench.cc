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

#include <iomanip>
#include <sstream>

#include "cli.h"
#include "commands.h"
#include "json.hpp"
#include "metagame/approx.h"
#include "metagame/errors.h"
#include "metagame/report.h"
#include "metagame/shapley.h"

namespace metagame::cli {
namespace {

struct BenchRow {
  Estimator estimator;
  std::uint64_t budget;
  double mse = 0.0;
  double mean_stderr = 0.0;
  double mean_evaluations = 0.0;
  int failures = 0;
};

}  // namespace

int RunBench(const BenchFlags& flags, std::ostream& out, std::ostream& err) {
  InputFlags input = flags.input;
  if (input.model.empty() && input.game.empty()) input.model = "poly:12:3:12:1";
  const ResolvedInput in = ResolveInput(input);
  if (!in.game) throw UnsupportedError("approx-bench needs a game");
  EngineOptions engine;
  engine.threads = flags.threads;
  const std::vector<double> exact = ShapleyValueExact(*in.game, engine).values;
  const int d = in.d;

  std::vector<Estimator> estimators;
  if (flags.approx != "regression") estimators.push_back(Estimator::kMonteCarlo);
  if (flags.approx != "mc") estimators.push_back(Estimator::kRegression);
  std::vector<std::uint64_t> budgets;
  for (int b : ParseIntList(flags.budgets, "--budgets")) {
    if (b < 1) throw ParseError("--budgets", "budgets must be positive");
    budgets.push_back(static_cast<std::uint64_t>(b));
  }

  std::vector<BenchRow> rows;
  for (Estimator estimator : estimators) {
    for (std::uint64_t budget : budgets) {
      BenchRow row{estimator, budget};
      int ok = 0;
      for (int r = 0; r < flags.reps; ++r) {
        Budget b{budget, flags.seed + static_cast<std::uint64_t>(r), flags.pairing};
        EstimateWithError e;
        try {
          e = estimator == Estimator::kMonteCarlo ? ShapleyMcPermutation(*in.game, b)
                                                  : ShapleyRegression(*in.game, b);
        } catch (const EstimationError&) {
          ++row.failures;
          continue;
        } catch (const std::invalid_argument& ex) {
          throw ParseError("--budgets", ex.what());
        }
        double sq = 0.0, se = 0.0;
        for (int i = 0; i < d; ++i) {
          sq += (e.values[i] - exact[i]) * (e.values[i] - exact[i]);
          se += e.stderrs[i];
        }
        row.mse += sq / d;
        row.mean_stderr += se / d;
        row.mean_evaluations += static_cast<double>(e.evaluations_used);
        ++ok;
      }
      if (ok > 0) {
        row.mse /= ok;
        row.mean_stderr /= ok;
        row.mean_evaluations /= ok;
      }
      rows.push_back(row);
    }
  }

  std::string text;
  if (flags.output.pretty) {
    std::ostringstream s;
    s << "instance " << in.source << " (d=" << d << "), " << flags.reps
      << " seeds per budget\n";
    s << std::left << std::setw(12) << "estimator" << std::setw(10) << "budget"
      << std::setw(16) << "mse" << std::setw(16) << "mean stderr" << "failures\n";
    for (const BenchRow& r : rows) {
      s << std::setw(12) << EstimatorName(r.estimator) << std::setw(10) << r.budget
        << std::setw(16) << std::setprecision(6) << r.mse << std::setw(16)
        << r.mean_stderr << r.failures << "\n";
    }
    text = s.str();
  } else if (flags.output.format == "csv") {
    std::ostringstream s;
    s << "estimator,budget,mse,mean_stderr,mean_evaluations,failures\n";
    for (const BenchRow& r : rows) {
      s << EstimatorName(r.estimator) << "," << r.budget << "," << FormatDouble(r.mse)
        << "," << FormatDouble(r.mean_stderr) << "," << FormatDouble(r.mean_evaluations)
        << "," << r.failures << "\n";
    }
    text = s.str();
  } else {
    nlohmann::ordered_json root;
    root["config"] = {{"command", "approx-bench"},
                      {"input", in.source},
                      {"approx", flags.approx},
                      {"budgets", flags.budgets},
                      {"reps", std::to_string(flags.reps)},
                      {"seed", std::to_string(flags.seed)},
                      {"pairing", flags.pairing ? "true" : "false"}};
    root["d"] = d;
    root["exact"] = exact;
    nlohmann::ordered_json items = nlohmann::ordered_json::array();
    for (const BenchRow& r : rows) {
      items.push_back({{"estimator", std::string(EstimatorName(r.estimator))},
                       {"budget", r.budget},
                       {"mse", r.mse},
                       {"mean_stderr", r.mean_stderr},
                       {"mean_evaluations", r.mean_evaluations},
                       {"failures", r.failures}});
    }
    root["rows"] = std::move(items);
    text = root.dump(2) + "\n";
  }
  WriteOutput(text, flags.output, out);
  (void)err;
  return kExitOk;
}

}  // namespace metagame::cli
