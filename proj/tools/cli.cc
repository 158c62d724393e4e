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

#include "cli.h"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "commands.h"
#include "json.hpp"
#include "metagame/approx.h"
#include "metagame/errors.h"
#include "metagame/game_io.h"
#include "metagame/interactions.h"
#include "metagame/kernels.h"
#include "metagame/meta.h"
#include "metagame/mobius.h"
#include "metagame/shapley.h"
#include "metagame/verify.h"

namespace metagame::cli {
namespace {

const std::vector<std::string> kMethods = {
    "sv",  "gxi", "ig",  "serial-sv", "ih",      "stii",     "fsii",
    "2sv", "sop", "meta-sv", "meta-ig", "meta-gxi", "meta-ext"};

struct ComputeFlags {
  InputFlags input;
  std::string method = "sv";
  int steps = kDefaultIgSteps;
  std::string approx;
  std::uint64_t budget = 0;
  bool pairing = false;
  std::uint64_t seed = 0;
  std::string targets;
  int threads = 1;
  int max_exact = kDefaultMaxExactPlayers;
  OutputFlags output;
};

struct VerifyFlags {
  std::uint64_t seed = 0;
  int instances = 20;
  bool inject_fault = false;
  int threads = 1;
  OutputFlags output;
};

struct ExportFlags {
  InputFlags input;
  std::string attribution;
  int steps = kDefaultIgSteps;
  int threads = 1;
  OutputFlags output;
};

const MaskedModel& RequireModel(const ResolvedInput& in, const std::string& method) {
  if (!in.masked) {
    throw UnsupportedError("method " + method +
                           " needs a differentiable model: use --model table1, "
                           "--model poly:..., or a dense game file with monomials");
  }
  return *in.masked;
}

const ValueOracle& RequireGame(const ResolvedInput& in, const std::string& method) {
  if (!in.game) {
    throw UnsupportedError("method " + method +
                           " needs a game; attribution tables only support meta-ext");
  }
  return *in.game;
}

std::vector<int> ResolveTargets(const std::string& text, int d) {
  std::vector<int> targets;
  if (text.empty()) {
    targets.resize(d);
    std::iota(targets.begin(), targets.end(), 0);
    return targets;
  }
  targets = ParseIntList(text, "--targets");
  std::set<int> seen;
  for (int t : targets) {
    if (t < 0 || t >= d) throw ParseError("--targets", "target " + std::to_string(t) + " out of range");
    if (!seen.insert(t).second) throw ParseError("--targets", "duplicate target");
  }
  return targets;
}

DirectionalMatrix KeepRows(const DirectionalMatrix& dm, const std::vector<int>& targets) {
  if (targets == dm.targets) return dm;
  DirectionalMatrix out;
  out.d = dm.d;
  out.base = dm.base;
  out.targets = targets;
  for (int t : targets) {
    const auto r = static_cast<std::size_t>(
        std::find(dm.targets.begin(), dm.targets.end(), t) - dm.targets.begin());
    out.entries.insert(out.entries.end(), dm.entries.begin() + r * dm.d,
                       dm.entries.begin() + (r + 1) * dm.d);
    out.first_order.push_back(dm.first_order[r]);
    if (!dm.stderrs.empty()) {
      out.stderrs.insert(out.stderrs.end(), dm.stderrs.begin() + r * dm.d,
                         dm.stderrs.begin() + (r + 1) * dm.d);
    }
  }
  return out;
}

Estimator ResolveEstimator(const std::string& approx, int d, bool all_targets) {
  if (approx == "mc") return Estimator::kMonteCarlo;
  if (approx == "regression") return Estimator::kRegression;
  return DefaultEstimator(d, all_targets);
}

void EmitResult(const ResultDocument& doc, const OutputFlags& output, std::ostream& out) {
  if (output.pretty) {
    WriteOutput(PrettyResult(doc), output, out);
  } else if (output.format == "csv") {
    WriteOutput(WriteResultCsv(doc), output, out);
  } else {
    WriteOutput(WriteResultJson(doc), output, out);
  }
  if (!output.heatmap.empty()) {
    if (doc.kind == ResultKind::kAttribution) {
      throw std::invalid_argument("--heatmap needs a matrix-valued method");
    }
    std::ofstream file(output.heatmap, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + output.heatmap);
    file << WriteResultCsv(doc);
  }
}

int RunCompute(const ComputeFlags& f, std::ostream& out) {
  const ResolvedInput in = ResolveInput(f.input);
  EngineOptions engine;
  engine.threads = f.threads;
  engine.max_exact_players = f.max_exact;
  const int d = in.d;
  const std::string& method = f.method;
  if (f.steps < 1) throw ParseError("--steps", "must be positive");
  const bool approx = !f.approx.empty();
  const std::vector<int> targets = ResolveTargets(f.targets, d);
  const bool all_targets = static_cast<int>(targets.size()) == d;

  Budget budget;
  budget.max_evaluations = f.budget != 0 ? f.budget : 32 * static_cast<std::uint64_t>(d);
  budget.seed = f.seed;
  budget.pairing = f.pairing;

  ConfigEcho config = {
      {"command", "compute"},
      {"method", method},
      {"input", in.source},
      {"x", in.masked ? JoinDoubles(in.masked->x()) : ""},
      {"baseline", in.masked ? JoinDoubles(in.masked->baseline()) : ""},
      {"steps", std::to_string(f.steps)},
      {"approx", approx ? std::string(EstimatorName(ResolveEstimator(f.approx, d, all_targets)))
                        : "exact"},
      {"budget", approx ? std::to_string(budget.max_evaluations) : ""},
      {"pairing", f.pairing ? "true" : "false"},
      {"seed", std::to_string(f.seed)},
      {"targets", JoinInts(targets)},
      {"threads", std::to_string(f.threads)},
      {"kernel", std::string(kernels::BackendName(kernels::ActiveBackend()))},
  };

  ResultDocument doc;
  if (approx && method != "sv" && method.rfind("meta-", 0) != 0) {
    throw ParseError("--approx", "sampling is available for sv and meta-* methods");
  }

  if (method == "sv") {
    const ValueOracle& game = RequireGame(in, method);
    const double total =
        game.Evaluate(Coalition::Full(d)) - game.Evaluate(Coalition::Empty(d));
    if (approx) {
      const Estimator est = ResolveEstimator(f.approx, d, true);
      const EstimateWithError e = est == Estimator::kMonteCarlo
                                      ? ShapleyMcPermutation(game, budget)
                                      : ShapleyRegression(game, budget);
      doc = AttributionDocument({e.values, MethodTag::kShapley, {}}, method, config);
      doc.stderrs = e.stderrs;
      doc.evaluations_used = e.evaluations_used;
    } else {
      doc = AttributionDocument(ShapleyValueExact(game, engine), method, config);
    }
    doc.has_reference_total = true;
    doc.reference_total = total;
    doc.residuals = ComputeResiduals(doc);
  } else if (method == "gxi" || method == "ig") {
    const MaskedModel& masked = RequireModel(in, method);
    AttributionVector phi;
    if (method == "gxi") {
      phi = GradientTimesInputMethod(masked).FirstOrder();
    } else {
      phi = IntegratedGradientsMethod(masked, f.steps).FirstOrder();
    }
    doc = AttributionDocument(phi, method, config);
    if (method == "ig") {
      doc.has_reference_total = true;
      doc.reference_total =
          masked.Evaluate(Coalition::Full(d)) - masked.Evaluate(Coalition::Empty(d));
      doc.residuals = ComputeResiduals(doc);
    }
  } else if (method == "serial-sv") {
    const ValueOracle& game = RequireGame(in, method);
    doc = SerialDocument(SerialShapley(game, engine), method,
                         ShapleyValueExact(game, engine).values, config);
  } else if (method == "ih") {
    const MaskedModel& masked = RequireModel(in, method);
    doc = SerialDocument(IntegratedHessians(masked, f.steps), method,
                         IntegratedGradientsMethod(masked, f.steps).FirstOrder().values,
                         config);
  } else if (method == "stii" || method == "fsii" || method == "2sv") {
    const ValueOracle& game = RequireGame(in, method);
    const auto phi = ShapleyValueExact(game, engine).values;
    PairIndex index = method == "stii" ? StiiPairwise(game, engine)
                      : method == "fsii"
                          ? FsiiViaMobius(MobiusTransform(game, engine))
                          : TwoShapleyViaMobius(MobiusTransform(game, engine));
    doc = PairIndexDocument(index, method, phi, config);
  } else if (method == "sop") {
    const MaskedModel& masked = RequireModel(in, method);
    doc = SopDocument(SopPairwise(masked, f.steps, engine),
                      IntegratedGradientsMethod(masked, f.steps).FirstOrder().values,
                      config);
  } else {
    MethodPtr base;
    if (method == "meta-sv") {
      base = std::make_shared<ShapleyMethod>(RequireGame(in, method), engine);
    } else if (method == "meta-ig") {
      base = std::make_shared<IntegratedGradientsMethod>(RequireModel(in, method), f.steps);
    } else if (method == "meta-gxi") {
      base = std::make_shared<GradientTimesInputMethod>(RequireModel(in, method));
    } else {
      if (!in.table) {
        throw UnsupportedError("meta-ext needs an attribution_table game file");
      }
      base = std::make_shared<ExternalMethod>(*in.table);
    }
    std::vector<int> rows = targets;
    if (method == "meta-ext" && f.targets.empty()) rows = in.table->targets;
    DirectionalMatrix dm;
    if (approx) {
      dm = MetaAttributionApprox(base, budget, rows,
                                 ResolveEstimator(f.approx, d, all_targets), f.threads);
    } else if (method == "meta-ext" && rows.size() != static_cast<std::size_t>(d)) {
      // Tables may cover a subset of targets; fill only those rows.
      dm.d = d;
      dm.base = MethodTag::kExternal;
      for (int t : rows) {
        std::vector<double> row(d, 0.0);
        row[t] = base->Restricted(Coalition::Of({t}, d), t);
        if (d > 1) {
          const auto nu = base->MetagameTable(t, engine);
          const auto phi = ShapleyFromTable(d - 1, nu);
          for (int p = 0; p < d - 1; ++p) row[MetaGameOracle::PlayerToSource(p, t)] = phi[p];
        }
        dm.targets.push_back(t);
        dm.entries.insert(dm.entries.end(), row.begin(), row.end());
        dm.first_order.push_back(base->Restricted(Coalition::Full(d), t));
      }
    } else {
      dm = KeepRows(MetaAttributionExact(*base, engine), rows);
    }
    doc = DirectionalDocument(dm, method, config);
  }
  EmitResult(doc, f.output, out);
  return kExitOk;
}

int RunVerify(const VerifyFlags& f, std::ostream& out, std::ostream& err) {
  VerifyOptions options;
  options.seed = f.seed;
  options.instances = f.instances;
  options.inject_shapley_fault = f.inject_fault;
  options.threads = f.threads;
  if (f.instances < 1) throw ParseError("--instances", "must be positive");
  const VerifyReport report = RunVerification(options);

  std::string text;
  if (f.output.pretty) {
    std::ostringstream s;
    s << std::left << std::setw(36) << "invariant" << std::setw(10) << "instances"
      << std::setw(14) << "worst" << std::setw(10) << "tolerance" << "status\n";
    for (const auto& r : report.invariants) {
      s << std::setw(36) << r.name << std::setw(10) << r.instances << std::setw(14)
        << std::setprecision(4) << r.worst_residual << std::setw(10) << r.tolerance
        << (r.passed ? "pass" : "FAIL") << "\n";
    }
    text = s.str();
  } else {
    nlohmann::ordered_json root;
    root["config"] = {{"command", "verify"},
                      {"seed", std::to_string(f.seed)},
                      {"instances", std::to_string(f.instances)},
                      {"inject_fault", f.inject_fault ? "true" : "false"},
                      {"threads", std::to_string(f.threads)}};
    root["passed"] = report.passed();
    nlohmann::ordered_json items = nlohmann::ordered_json::array();
    for (const auto& r : report.invariants) {
      nlohmann::ordered_json item = {{"name", r.name},
                                     {"instances", r.instances},
                                     {"worst_residual", r.worst_residual},
                                     {"tolerance", r.tolerance},
                                     {"passed", r.passed}};
      if (!r.passed) item["failing_instance"] = r.failing_instance;
      items.push_back(std::move(item));
    }
    root["invariants"] = std::move(items);
    text = root.dump(2) + "\n";
  }
  WriteOutput(text, f.output, out);
  for (const auto& r : report.invariants) {
    if (!r.passed) {
      err << "invariant " << r.name << " failed (worst residual " << r.worst_residual
          << ", tolerance " << r.tolerance << ") at " << r.failing_instance << "\n";
    }
  }
  return report.passed() ? kExitOk : kExitFailure;
}

int RunExport(const ExportFlags& f, std::ostream& out) {
  const ResolvedInput in = ResolveInput(f.input);
  EngineOptions engine;
  engine.threads = f.threads;
  GameDocument doc;
  if (!f.attribution.empty()) {
    MethodPtr method;
    if (f.attribution == "sv") {
      method = std::make_shared<ShapleyMethod>(RequireGame(in, "sv"), engine);
    } else if (f.attribution == "ig") {
      method = std::make_shared<IntegratedGradientsMethod>(RequireModel(in, "ig"), f.steps);
    } else {
      method = std::make_shared<GradientTimesInputMethod>(RequireModel(in, "gxi"));
    }
    RequireExact(in.d, engine);
    ExternalAttributionTable table;
    table.d = in.d;
    for (int i = 0; i < in.d; ++i) {
      table.targets.push_back(i);
      const auto nu = method->MetagameTable(i, engine);
      table.values.emplace_back(nu.begin(), nu.end());
    }
    doc.kind = GameKind::kAttributionTable;
    doc.d = in.d;
    doc.attribution = std::move(table);
  } else if (in.masked) {
    doc = DenseDocumentFromModel(in.model, in.masked->x(), in.masked->baseline(), engine);
  } else if (in.game) {
    if (const auto* mobius = dynamic_cast<const MobiusGame*>(in.game.get())) {
      doc.kind = GameKind::kMobius;
      doc.d = in.d;
      doc.mobius = mobius->expansion();
    } else {
      doc.kind = GameKind::kDenseGame;
      doc.d = in.d;
      doc.values = EnumerateGame(*in.game, engine);
    }
  } else {
    doc.kind = GameKind::kAttributionTable;
    doc.d = in.d;
    doc.attribution = *in.table;
  }
  WriteOutput(WriteGameDocument(doc, f.output.pretty), f.output, out);
  return kExitOk;
}

void AddInputOptions(CLI::App* sub, InputFlags& input) {
  sub->add_option("--model", input.model,
                  "Builtin model: table1, poly:D:ORDER:TERMS:SEED, "
                  "mobius:D:SPARSITY:SEED, additive:C0,C1,...");
  sub->add_option("--game", input.game, "Game file (dense_game, mobius, attribution_table)");
  sub->add_option("--x", input.x, "Input point, comma separated");
  sub->add_option("--baseline", input.baseline, "Baseline, comma separated (default zeros)");
}

void AddOutputOptions(CLI::App* sub, OutputFlags& output, bool formats) {
  sub->add_option("--out", output.out, "Write the document here instead of stdout");
  sub->add_flag("--pretty", output.pretty, "Human-readable table");
  if (formats) {
    sub->add_option("--format", output.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--heatmap", output.heatmap,
                    "Also write the matrix as target,source,value CSV");
  }
}

}  // namespace

void WriteOutput(const std::string& text, const OutputFlags& flags, std::ostream& stream) {
  if (flags.out.empty()) {
    stream << text;
    return;
  }
  std::ofstream file(flags.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + flags.out);
  file << text;
}

std::string PrettyResult(const ResultDocument& doc) {
  std::ostringstream s;
  s << std::setprecision(10);
  s << doc.method << " (" << ResultKindName(doc.kind) << ", d=" << doc.d << ")\n";
  const int d = doc.d;
  if (doc.kind == ResultKind::kAttribution) {
    for (int i = 0; i < d; ++i) {
      s << "  phi[" << i << "] = " << doc.entries[i];
      if (!doc.stderrs.empty()) s << " +- " << doc.stderrs[i];
      s << "\n";
    }
  } else {
    if (!doc.singles.empty()) {
      s << "  singles:";
      for (double v : doc.singles) s << " " << v;
      s << "\n";
    }
    const auto& m = doc.kind == ResultKind::kPairIndex && !doc.directional.empty()
                        ? doc.directional
                        : doc.entries;
    s << "  rows = target, columns = source\n";
    for (std::size_t r = 0; r < doc.rows.size(); ++r) {
      s << "  " << std::setw(4) << doc.rows[r] << " |";
      for (int j = 0; j < d; ++j) s << " " << std::setw(14) << m[r * d + j];
      s << "\n";
    }
  }
  if (!doc.residuals.empty()) {
    s << "  residuals:";
    for (double v : doc.residuals) s << " " << v;
    s << "\n";
  }
  return s.str();
}

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Meta-attributions, interaction indices and Shapley values"};
  app.name("metagame");
  app.require_subcommand(1);
  std::string kernel = "auto";
  app.add_option("--kernel", kernel, "Kernel backend")
      ->check(CLI::IsMember({"auto", "scalar", "avx2", "neon"}));

  ComputeFlags compute;
  auto* c = app.add_subcommand("compute", "Compute one attribution or interaction method");
  AddInputOptions(c, compute.input);
  c->add_option("--method", compute.method, "Method")->check(CLI::IsMember(kMethods));
  c->add_option("--steps", compute.steps, "Quadrature nodes for ig/ih/sop/meta-ig");
  c->add_option("--approx", compute.approx, "Sampling estimator for sv and meta-*")
      ->check(CLI::IsMember({"mc", "regression", "auto"}));
  c->add_option("--budget", compute.budget, "Oracle calls per estimate (default 32 d)");
  c->add_flag("--pairing", compute.pairing, "Antithetic / complement pairing");
  c->add_option("--seed", compute.seed, "Random seed");
  c->add_option("--targets", compute.targets, "Target features, comma separated");
  c->add_option("--threads", compute.threads, "Worker threads")->check(CLI::PositiveNumber);
  c->add_option("--max-exact", compute.max_exact, "Largest d for exact enumeration")
      ->check(CLI::Range(1, 30));
  AddOutputOptions(c, compute.output, true);

  Table1Flags table1;
  auto* t = app.add_subcommand("table1", "Reproduce the two-feature reference table");
  t->add_option("--x", table1.x, "Input point (two values)");
  t->add_option("--steps", table1.steps, "Quadrature nodes");
  AddOutputOptions(t, table1.output, false);

  VerifyFlags verify;
  auto* v = app.add_subcommand("verify", "Run the invariant sweep");
  v->add_option("--seed", verify.seed, "Sweep seed");
  v->add_option("--instances", verify.instances, "Instances per invariant");
  v->add_flag("--inject-fault", verify.inject_fault, "Corrupt a Shapley weight (testing)");
  v->add_option("--threads", verify.threads, "Worker threads")->check(CLI::PositiveNumber);
  AddOutputOptions(v, verify.output, false);

  BenchFlags bench;
  auto* b = app.add_subcommand("approx-bench", "Estimator error against exact values");
  AddInputOptions(b, bench.input);
  b->add_option("--approx", bench.approx, "Estimator")
      ->check(CLI::IsMember({"mc", "regression", "both"}));
  b->add_option("--budgets", bench.budgets, "Budgets, comma separated");
  b->add_option("--reps", bench.reps, "Seeds per budget")->check(CLI::PositiveNumber);
  b->add_option("--seed", bench.seed, "First seed");
  b->add_flag("--pairing", bench.pairing, "Antithetic / complement pairing");
  b->add_option("--threads", bench.threads, "Worker threads")->check(CLI::PositiveNumber);
  AddOutputOptions(b, bench.output, true);

  ExportFlags exp;
  auto* e = app.add_subcommand("export", "Write a game file for a model or game");
  AddInputOptions(e, exp.input);
  e->add_option("--attribution", exp.attribution,
                "Write an attribution_table of this method instead")
      ->check(CLI::IsMember({"sv", "ig", "gxi"}));
  e->add_option("--steps", exp.steps, "Quadrature nodes for ig");
  e->add_option("--threads", exp.threads, "Worker threads")->check(CLI::PositiveNumber);
  AddOutputOptions(e, exp.output, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitParse;
  }

  try {
    kernels::Backend backend = kernels::BestBackend();
    if (kernel == "scalar") backend = kernels::Backend::kScalar;
    if (kernel == "avx2") backend = kernels::Backend::kAvx2;
    if (kernel == "neon") backend = kernels::Backend::kNeon;
    const kernels::ScopedBackend scoped(backend);

    if (c->parsed()) return RunCompute(compute, out);
    if (t->parsed()) return RunTable1(table1, out, err);
    if (v->parsed()) return RunVerify(verify, out, err);
    if (b->parsed()) return RunBench(bench, out, err);
    if (e->parsed()) return RunExport(exp, out);
  } catch (const ParseError& ex) {
    err << "parse error at " << ex.what() << "\n";
    return kExitParse;
  } catch (const CapacityError& ex) {
    err << "capacity: " << ex.what() << "\n";
    return kExitCapacity;
  } catch (const EstimationError& ex) {
    err << "estimation failed: " << ex.what() << "\n";
    return kExitEstimation;
  } catch (const MissingCoalitionError& ex) {
    err << "incomplete attribution table: " << ex.what() << "\n";
    return kExitParse;
  } catch (const UnsupportedError& ex) {
    err << "unsupported: " << ex.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& ex) {
    err << "invalid argument: " << ex.what() << "\n";
    return kExitParse;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace metagame::cli
