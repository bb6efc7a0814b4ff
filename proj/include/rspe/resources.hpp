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

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rspe/runtime.hpp"

namespace rspe {

/// Approximate factor on c_sample for a ground-state search at xi = 0.1.
inline constexpr double kGroundStateSampleMultiplier = 6.0;

/// Toffoli cost of w equal-angle rotations by Hamming weight phasing,
/// w (2w + 25 log2(2w)).
double hwp_toffoli(std::int64_t w);
/// hwp_toffoli(w) / w^2.
double hwp_per_gate(std::int64_t w);

enum class ToffoliRegime { Asymptotic2x, Modest6x, Synthesis };

ToffoliRegime parse_regime(const std::string& text);
/// Toffoli count (T count for Synthesis) of one sample with c_gate rotations.
double toffoli_per_sample(double c_gate, ToffoliRegime regime);

struct ResourcePoint {
  double eps = 0.0;
  double b = 1.0;
  double g_target = 0.0;  // 0 for the unconstrained optimum
  double c_gate = 0.0;
  double c_sample_over_ln = 0.0;
  double c_total_over_ln = 0.0;
  double weight_A = 0.0;
  int M = 0;
  double gamma = 0.0;
  bool optimal = false;
  std::optional<RuntimeVector> rvec;
};

struct CurveConfig {
  double lambda = 0.0;
  double Delta = 0.0;
  double eta = 1.0;
  double b = 1.0;
  std::vector<double> eps_list;
  std::vector<double> g_grid;  // empty: 40 log-spaced defaults per eps
  int default_points = 40;
  bool keep_vectors = false;
};

struct CurveWarning {
  double eps;
  double g_target;
  std::string message;
};

struct Curve {
  std::vector<ResourcePoint> points;
  std::vector<CurveWarning> warnings;
};

/// Everything a curve point depends on besides r.
struct CurveSetup {
  double eps = 0.0;
  double tau = 0.0;
  double delta = 0.0;
  RuntimeProblem problem;
};

CurveSetup curve_setup(const CurveConfig& config, double eps);

/// Point for a given runtime vector, using the u_j = exp(t^2/r) weights the
/// optimizers work with. M is the order a plan would use at that vector.
ResourcePoint evaluate_point(const CurveConfig& config, const CurveSetup& setup,
                             const RuntimeVector& r);

Curve tradeoff_curve(const CurveConfig& config);

void write_curve_csv(const Curve& curve, std::ostream& out);

}  // namespace rspe
