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
#include <vector>

#include "rspe/heaviside.hpp"

namespace rspe {

/**
 * @brief Weighted evolution times to be assigned segment counts.
 *
 * Entry i stands for one or more Fourier indices sharing |F| and |t|; its
 * weight is the summed |F| of the members. Entries with t = 0 never appear.
 */
struct RuntimeProblem {
  std::vector<std::int64_t> index;
  std::vector<double> weight;
  std::vector<double> t;

  std::size_t size() const { return t.size(); }
  void add(std::int64_t j, double w, double time);
};

/// Classes {+k, -k} for odd k = 2j+1 with weight 2|F_k| and t = -k*tau*lambda.
RuntimeProblem make_problem(const FourierSeries& series, double tau_lambda);

/// Integer segment counts r_i >= 1, aligned with a RuntimeProblem.
struct RuntimeVector {
  std::vector<std::int64_t> r;

  std::int64_t max() const;
};

RuntimeVector constant_weight(const RuntimeProblem& problem);

struct TotalSolution {
  double s_star = 0.0;
  double residual = 0.0;  // |s* - S(R(s*))|
  std::vector<double> relaxed;
  RuntimeVector rounded;
};

/// Minimizes (sum w u)(sum w u r) with u = exp(t^2/r) via the fixed point
/// s = S(R(s)).
TotalSolution minimize_total(const RuntimeProblem& problem);

struct GatedSolution {
  double g = 0.0;
  double sigma = 0.0;       // 1/lambda* - g
  double multiplier = 0.0;  // lambda*
  std::vector<double> relaxed;
  RuntimeVector rounded;
};

/// Smallest g accepted by minimize_samples: S at sigma = -t_min^2/4.
double gated_floor(const RuntimeProblem& problem);

/// Minimizes sum w u subject to S(r) <= g, with r_i >= max(1, |t_i|).
GatedSolution minimize_samples(const RuntimeProblem& problem, double g);

/// S(r) and f(r) = sum w u for real-valued r.
double relaxed_gate(const RuntimeProblem& problem, const std::vector<double>& r);
double relaxed_weight(const RuntimeProblem& problem,
                      const std::vector<double>& r);
/// c(r) = (sum w u)(sum w u r).
double relaxed_total(const RuntimeProblem& problem,
                     const std::vector<double>& r);

std::vector<double> to_real(const RuntimeVector& r);

struct Complexities {
  double weight_A = 0.0;
  std::int64_t c_sample = 0;
  double c_gate = 0.0;
  double c_total = 0.0;
  bool exact_mu = false;
  double margin = 0.0;  // eta/2 - eps - bias
};

/**
 * @brief Exact complexities of an integer runtime vector.
 *
 * mu_i is the truncated weight at order M when exact_mu is set, otherwise the
 * bound exp(t_i^2/r_i). The Hoeffding margin is eta/2 - eps - bias.
 */
Complexities complexity_report(const RuntimeProblem& problem,
                               const RuntimeVector& r, double eta, double eps,
                               double theta, bool exact_mu, int M,
                               double bias = 0.0);

}  // namespace rspe
