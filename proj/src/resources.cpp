// Copyright 2026 The rspe Authors
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

#include "rspe/resources.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "rspe/error.hpp"
#include "rspe/estimator.hpp"
#include "rspe/lcu.hpp"

namespace rspe {

double hwp_toffoli(std::int64_t w) {
  if (w < 1) throw ValidationError(fmt::format("w must be >= 1, got {}", w));
  const auto x = static_cast<double>(w);
  return x * (2.0 * x + 25.0 * std::log2(2.0 * x));
}

double hwp_per_gate(std::int64_t w) {
  const auto x = static_cast<double>(w);
  return hwp_toffoli(w) / (x * x);
}

ToffoliRegime parse_regime(const std::string& text) {
  if (text == "asymptotic2x") return ToffoliRegime::Asymptotic2x;
  if (text == "modest6x") return ToffoliRegime::Modest6x;
  if (text == "synthesis") return ToffoliRegime::Synthesis;
  throw ValidationError("unknown Toffoli regime '" + text + "'");
}

double toffoli_per_sample(double c_gate, ToffoliRegime regime) {
  if (!(c_gate > 0.0)) throw ValidationError("c_gate must be positive");
  switch (regime) {
    case ToffoliRegime::Asymptotic2x:
      return 2.0 * c_gate;
    case ToffoliRegime::Modest6x:
      return 6.0 * c_gate;
    case ToffoliRegime::Synthesis:
      return 100.0 * c_gate;
  }
  return 0.0;
}

CurveSetup curve_setup(const CurveConfig& config, double eps) {
  if (!(config.lambda > 0.0) || !(config.Delta > 0.0)) {
    throw ValidationError("lambda and Delta must be positive");
  }
  if (!(config.eta > 0.0) || !(config.eta <= 1.0)) {
    throw ValidationError("eta must lie in (0, 1]");
  }
  if (!(config.b >= 1.0)) throw ValidationError("b must be >= 1");
  if (!(eps > 0.0) || !(eps < config.eta / 2)) {
    throw ValidationError(fmt::format("eps must lie in (0, eta/2), got {}", eps));
  }
  CurveSetup s;
  s.eps = eps;
  s.tau = rescale_tau(config.lambda, config.Delta, config.b);
  s.delta = s.tau * config.Delta;
  const auto params = optimize_split(s.delta, eps);
  const auto fourier = build_fourier(params);
  s.problem = make_problem(fourier, s.tau * config.lambda);
  return s;
}

ResourcePoint evaluate_point(const CurveConfig& config, const CurveSetup& setup,
                             const RuntimeVector& r) {
  // Theta is factored out: report c_sample / ln(1/theta) without the ceiling.
  constexpr double kTheta = 0.5;
  const auto report = complexity_report(setup.problem, r, config.eta, setup.eps,
                                        kTheta, false, 0);
  ResourcePoint p;
  p.eps = setup.eps;
  p.b = config.b;
  p.gamma = 0.01 * (config.eta / 2 - setup.eps);
  p.M = truncation_order(p.gamma, report.weight_A, report.c_gate);
  p.weight_A = report.weight_A;
  p.c_gate = report.c_gate;
  const double ratio = 2.0 * report.weight_A / report.margin;
  p.c_sample_over_ln = ratio * ratio;
  p.c_total_over_ln = 2.0 * p.c_sample_over_ln * p.c_gate;
  if (config.keep_vectors) p.rvec = r;
  return p;
}

Curve tradeoff_curve(const CurveConfig& config) {
  detail::require(!config.eps_list.empty(), "eps list is empty");
  Curve curve;
  for (double eps : config.eps_list) {
    const auto setup = curve_setup(config, eps);
    const auto total = minimize_total(setup.problem);
    auto best = evaluate_point(config, setup, total.rounded);
    best.optimal = true;

    std::vector<double> grid = config.g_grid;
    if (grid.empty()) {
      const double top = 1.05 * best.c_gate;
      const double floor = gated_floor(setup.problem) * (1.0 + 1e-9);
      const int n = std::max(2, config.default_points);
      if (floor < top) {
        for (int i = 0; i < n; ++i) {
          const double f = static_cast<double>(i) / (n - 1);
          grid.push_back(std::exp(std::log(top) + f * (std::log(floor) - std::log(top))));
        }
      } else {
        grid.push_back(top);
      }
      std::reverse(grid.begin(), grid.end());
    }
    for (double g : grid) {
      try {
        const auto sol = minimize_samples(setup.problem, g);
        auto p = evaluate_point(config, setup, sol.rounded);
        p.g_target = g;
        curve.points.push_back(std::move(p));
      } catch (const ValidationError& e) {
        curve.warnings.push_back({eps, g, e.what()});
      }
    }
    curve.points.push_back(std::move(best));
  }
  return curve;
}

void write_curve_csv(const Curve& curve, std::ostream& out) {
  out << "eps,b,g_target,c_gate,c_sample_over_ln,c_total_over_ln,flag_optimal\n";
  for (const auto& p : curve.points) {
    out << fmt::format("{},{},{:.10g},{:.10g},{:.10g},{:.10g},{}\n", p.eps, p.b,
                       p.g_target, p.c_gate, p.c_sample_over_ln,
                       p.c_total_over_ln, p.optimal ? 1 : 0);
  }
  for (const auto& w : curve.warnings) {
    out << fmt::format("# skipped eps={} g={:.10g}: {}\n", w.eps, w.g_target,
                       w.message);
  }
}

}  // namespace rspe
