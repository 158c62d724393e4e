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

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "cli.h"
#include "commands.h"
#include "json.hpp"
#include "metagame/errors.h"
#include "metagame/interactions.h"
#include "metagame/meta.h"
#include "metagame/mobius.h"
#include "metagame/model_zoo.h"
#include "metagame/shapley.h"

namespace metagame::cli {
namespace {

constexpr double kExactTolerance = 1e-6;
constexpr double kQuadratureTolerance = 1e-3;

struct Check {
  std::string method;
  std::string quantity;
  double computed;
  double expected;
  bool quadrature;

  double deviation() const { return std::abs(computed - expected); }
  double tolerance() const { return quadrature ? kQuadratureTolerance : kExactTolerance; }
  bool passed() const { return deviation() <= tolerance(); }
};

// Labels follow the 1-based feature names of the reference table:
// "2->1" is the influence of feature 2 on feature 1's attribution.
void AddMatrix(std::vector<Check>& checks, const std::string& method,
               const std::vector<double>& m, const std::vector<double>& expected,
               bool quadrature) {
  static const char* kLabels[] = {"1->1", "2->1", "1->2", "2->2"};
  for (int k = 0; k < 4; ++k) {
    checks.push_back({method, kLabels[k], m[k], expected[k], quadrature});
  }
}

void AddFirstOrder(std::vector<Check>& checks, const std::string& method,
                   const std::vector<double>& phi, double e1, double e2, bool quadrature) {
  checks.push_back({method, "phi_1", phi[0], e1, quadrature});
  checks.push_back({method, "phi_2", phi[1], e2, quadrature});
}

void AddSetBased(std::vector<Check>& checks, const std::string& method,
                 const PairIndex& index, double s1, double s2, double pair,
                 bool quadrature) {
  checks.push_back({method, "{1}", index.single(0), s1, quadrature});
  checks.push_back({method, "{2}", index.single(1), s2, quadrature});
  checks.push_back({method, "{1,2}", index.pair(0, 1), pair, quadrature});
}

}  // namespace

int RunTable1(const Table1Flags& flags, std::ostream& out, std::ostream& err) {
  const std::vector<double> x = ParseDoubleList(flags.x, "--x");
  if (x.size() != 2) throw ParseError("--x", "expected two values");
  if (flags.steps < 1) throw ParseError("--steps", "must be positive");
  const int steps = flags.steps;
  const double x1 = x[0];
  const double inter = x[0] * x[1] * x[1];
  const std::vector<double> zero = {0.0, 0.0};

  const MaskedModel masked(Table1Model(), x, zero);
  const MaskedGame game(masked);
  std::vector<Check> checks;

  const SerialMatrix serial = SerialShapley(game);
  AddMatrix(checks, "serial-sv", serial.entries,
            {x1 + inter / 4, inter / 4, inter / 4, inter / 4}, false);
  AddFirstOrder(checks, "serial-sv", serial.RowSums(), x1 + inter / 2, inter / 2, false);

  const SerialMatrix ih = IntegratedHessians(masked, steps);
  AddMatrix(checks, "ih", ih.entries,
            {x1 + inter / 9, 2 * inter / 9, 2 * inter / 9, 4 * inter / 9}, true);
  AddFirstOrder(checks, "ih", ih.RowSums(), x1 + inter / 3, 2 * inter / 3, true);

  const MobiusExpansion mobius = MobiusTransform(game);
  AddSetBased(checks, "mobius", MobiusPairs(mobius), x1, 0.0, inter, false);

  const PairIndex stii = StiiPairwise(game);
  AddSetBased(checks, "stii", stii, x1, 0.0, inter, false);
  AddFirstOrder(checks, "stii", stii.HalfPairDecomposition(), x1 + inter / 2, inter / 2,
                false);

  const SopResult sop = SopPairwise(masked, steps);
  AddSetBased(checks, "sop", sop.set_based, x1, 0.0, inter, true);
  checks.push_back({"sop", "psi_{1,2}", sop.directional[0 * 2 + 1], inter / 3, true});
  checks.push_back({"sop", "psi_{2,1}", sop.directional[1 * 2 + 0], 2 * inter / 3, true});

  struct MetaRow {
    const char* name;
    MethodPtr method;
    std::vector<double> expected;
    double phi1, phi2;
    bool quadrature;
  };
  const MetaRow metas[] = {
      {"meta-gxi", std::make_shared<GradientTimesInputMethod>(masked),
       {x1, inter, 2 * inter, 0.0}, x1 + inter, 2 * inter, false},
      {"meta-ig", std::make_shared<IntegratedGradientsMethod>(masked, steps),
       {x1, inter / 3, 2 * inter / 3, 0.0}, x1 + inter / 3, 2 * inter / 3, true},
      {"meta-sv", std::make_shared<ShapleyMethod>(game),
       {x1, inter / 2, inter / 2, 0.0}, x1 + inter / 2, inter / 2, false},
  };
  for (const MetaRow& row : metas) {
    const DirectionalMatrix dm = MetaAttributionExact(*row.method);
    AddMatrix(checks, row.name, dm.entries, row.expected, row.quadrature);
    AddFirstOrder(checks, row.name, dm.first_order, row.phi1, row.phi2, row.quadrature);
  }

  double worst_exact = 0.0;
  double worst_quadrature = 0.0;
  bool passed = true;
  for (const Check& c : checks) {
    double& worst = c.quadrature ? worst_quadrature : worst_exact;
    worst = std::max(worst, c.deviation());
    passed = passed && c.passed();
  }

  std::string text;
  if (flags.output.pretty) {
    std::ostringstream s;
    s << "f(x) = x1 + x1*x2^2 at x = (" << x[0] << ", " << x[1] << "), baseline 0, I = "
      << inter << "\n";
    s << std::left << std::setw(11) << "method" << std::setw(11) << "quantity"
      << std::setw(20) << "computed" << std::setw(20) << "closed form" << "deviation\n";
    s << std::setprecision(12);
    for (const Check& c : checks) {
      s << std::setw(11) << c.method << std::setw(11) << c.quantity << std::setw(20)
        << c.computed << std::setw(20) << c.expected << std::setprecision(3)
        << c.deviation() << (c.passed() ? "" : "  FAIL") << std::setprecision(12)
        << "\n";
    }
    s << "max deviation: exact " << worst_exact << ", quadrature " << worst_quadrature
      << "\n";
    text = s.str();
  } else {
    nlohmann::ordered_json root;
    root["config"] = {{"command", "table1"},
                      {"x", JoinDoubles(x)},
                      {"baseline", "0,0"},
                      {"steps", std::to_string(steps)}};
    root["orientation"] = std::string(kOrientation);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const Check& c : checks) {
      rows.push_back({{"method", c.method},
                      {"quantity", c.quantity},
                      {"computed", c.computed},
                      {"expected", c.expected},
                      {"deviation", c.deviation()},
                      {"tolerance", c.tolerance()},
                      {"passed", c.passed()}});
    }
    root["rows"] = std::move(rows);
    root["max_deviation_exact"] = worst_exact;
    root["max_deviation_quadrature"] = worst_quadrature;
    root["passed"] = passed;
    text = root.dump(2) + "\n";
  }
  WriteOutput(text, flags.output, out);
  if (!passed) {
    for (const Check& c : checks) {
      if (!c.passed()) {
        err << c.method << " " << c.quantity << ": computed " << c.computed
            << ", expected " << c.expected << "\n";
      }
    }
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace metagame::cli
