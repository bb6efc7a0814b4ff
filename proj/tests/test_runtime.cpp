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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "rspe/error.hpp"
#include "rspe/heaviside.hpp"
#include "rspe/runtime.hpp"

namespace rspe {
namespace {

RuntimeProblem random_problem(std::mt19937_64& rng, std::size_t n, double t_max) {
  std::uniform_real_distribution<double> w(0.01, 1.0);
  std::uniform_real_distribution<double> t(0.2, t_max);
  RuntimeProblem p;
  for (std::size_t i = 0; i < n; ++i) {
    p.add(static_cast<std::int64_t>(2 * i + 1), w(rng), (rng() & 1U) ? t(rng) : -t(rng));
  }
  return p;
}

double total_weight(const RuntimeProblem& p) {
  double f = 0.0;
  for (double w : p.weight) f += w;
  return f;
}

TEST(ConstantWeight, Examples) {
  RuntimeProblem p;
  p.add(1, 1.0, 2.5);
  p.add(3, 1.0, -0.1);
  const auto r = constant_weight(p);
  EXPECT_EQ(r.r[0], 13);
  EXPECT_EQ(r.r[1], 1);
  EXPECT_EQ(r.max(), 13);
}

TEST(ConstantWeight, WeightBoundAndGateBound) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_problem(rng, 1 + rng() % 30, 20.0);
    const auto r = constant_weight(p);
    const auto c = complexity_report(p, r, 1.0, 0.1, 0.05, false, 0);
    EXPECT_LE(c.weight_A, std::sqrt(std::numbers::e) * total_weight(p) * (1 + 1e-14));
    EXPECT_LE(c.c_gate, static_cast<double>(r.max()) * (1 + 1e-14));
  }
}

TEST(ConstantWeight, FourierSeriesGateMatchesLargestTime) {
  const auto s = build_fourier(optimize_split(0.2, 0.1));
  const double tau_lambda = 0.05;
  const auto p = make_problem(s, tau_lambda);
  const auto r = constant_weight(p);
  const double tmax = static_cast<double>(2 * s.d() + 1) * tau_lambda;
  EXPECT_EQ(r.max(), static_cast<std::int64_t>(std::ceil(2 * tmax * tmax)));
}

TEST(MakeProblem, PairsOddIndices) {
  const auto s = build_fourier(optimize_split(0.3, 0.2));
  const auto p = make_problem(s, 0.1);
  ASSERT_EQ(p.size(), static_cast<std::size_t>(s.d() + 1));
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto k = static_cast<std::int64_t>(2 * i + 1);
    EXPECT_EQ(p.index[i], k);
    EXPECT_NEAR(p.t[i], -0.1 * static_cast<double>(k), 1e-15);
    EXPECT_NEAR(p.weight[i], 2 * std::abs(s.coefficient(k)), 1e-15);
  }
}

TEST(MinimizeTotal, SymmetricInputGivesEqualEntries) {
  RuntimeProblem p;
  p.add(1, 0.3, 4.0);
  p.add(3, 0.3, -4.0);
  const auto sol = minimize_total(p);
  EXPECT_NEAR(sol.relaxed[0], sol.relaxed[1], 1e-12);
  EXPECT_EQ(sol.rounded.r[0], sol.rounded.r[1]);
  // For equal times S(r) = r, so s = t^2/2 (1 + sqrt(1 + 4 s / t^2)) gives s = 2 t^2.
  EXPECT_NEAR(sol.s_star, 32.0, 1e-8);
}

TEST(MinimizeTotal, SingleIndexAgreesWithDenseScan) {
  RuntimeProblem p;
  p.add(1, 1.0, 2.0);
  const auto sol = minimize_total(p);
  double best_r = 0.0;
  double best_c = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 1990000; ++i) {
    const double r = 1.0 + i * 1e-4;
    const double c = relaxed_total(p, {r});
    if (c < best_c) {
      best_c = c;
      best_r = r;
    }
  }
  EXPECT_NEAR(best_r, 8.0, 1e-3);
  EXPECT_NEAR(sol.relaxed[0], best_r, 1e-3);
  EXPECT_NEAR(sol.s_star, 8.0, 1e-8);
  EXPECT_EQ(sol.rounded.r[0], 8);
}

TEST(MinimizeTotal, ResidualAndStationarity) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = random_problem(rng, 2 + rng() % 20, 30.0);
    const auto sol = minimize_total(p);
    EXPECT_LE(sol.residual, 1e-9 * sol.s_star);
    std::vector<double> r = sol.relaxed;
    const double c = relaxed_total(p, r);
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double h = 1e-5 * r[i];
      const double keep = r[i];
      r[i] = keep + h;
      const double up = relaxed_total(p, r);
      r[i] = keep - h;
      const double down = relaxed_total(p, r);
      r[i] = keep;
      EXPECT_LE(std::abs(up - down) / (2 * h), 1e-6 * c) << trial << " " << i;
    }
  }
}

TEST(MinimizeTotal, SmallScaleLimit) {
  RuntimeProblem p;
  p.add(1, 1.0, 1e-4);
  p.add(3, 1.0, 2e-4);
  const auto sol = minimize_total(p);
  EXPECT_GE(sol.relaxed[0], 1e-8 * (1 - 1e-12));
  EXPECT_LT(sol.relaxed[1], 1e-6);
  EXPECT_EQ(sol.rounded.r[0], 1);
  EXPECT_EQ(sol.rounded.r[1], 1);
}

TEST(MinimizeTotal, DominatesConstantWeight) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_problem(rng, 1 + rng() % 40, 50.0);
    const auto opt = minimize_total(p);
    const double c_opt = relaxed_total(p, to_real(opt.rounded));
    const double c_ref = relaxed_total(p, to_real(constant_weight(p)));
    EXPECT_LE(c_opt, c_ref * (1 + 1e-12)) << trial;
    EXPECT_LE(relaxed_total(p, opt.relaxed), c_opt * (1 + 1e-9));
  }
}

TEST(MinimizeSamples, SymmetricInput) {
  RuntimeProblem p;
  p.add(1, 0.5, 3.0);
  p.add(3, 0.5, 3.0);
  p.add(5, 0.5, -3.0);
  const auto sol = minimize_samples(p, 20.0);
  for (double r : sol.relaxed) EXPECT_NEAR(r, 20.0, 1e-9);
  for (auto r : sol.rounded.r) EXPECT_EQ(r, 20);
}

TEST(MinimizeSamples, ConstantWeightBudget) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = random_problem(rng, 2 + rng() % 15, 10.0);
    const auto cw = constant_weight(p);
    const double g = relaxed_gate(p, to_real(cw));
    const auto sol = minimize_samples(p, g);
    EXPECT_LE(relaxed_gate(p, to_real(sol.rounded)), 1.01 * g * (1 + 1e-12));
    EXPECT_LE(relaxed_weight(p, to_real(sol.rounded)), relaxed_weight(p, to_real(cw)) * (1 + 1e-12));
    for (std::size_t i = 0; i < p.size(); ++i) {
      EXPECT_GE(sol.rounded.r[i], std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(std::abs(p.t[i])))));
    }
  }
}

TEST(MinimizeSamples, ExhaustiveSearchOnThreeIndices) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> tdist(0.5, 5.0);
  std::uniform_real_distribution<double> wdist(0.05, 1.0);
  int checked = 0;
  for (int trial = 0; trial < 12; ++trial) {
    RuntimeProblem p;
    for (int i = 0; i < 3; ++i) p.add(2 * i + 1, wdist(rng), tdist(rng));
    const double lo = gated_floor(p);
    const double g = std::max(lo, 1.0) * (1.2 + 0.3 * trial);
    const auto sol = minimize_samples(p, g);
    if (sol.rounded.max() > 60) continue;
    double best = std::numeric_limits<double>::infinity();
    std::int64_t fl[3];
    for (int i = 0; i < 3; ++i) {
      fl[i] = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(std::abs(p.t[static_cast<std::size_t>(i)]))));
    }
    std::vector<double> r(3);
    for (std::int64_t a = fl[0]; a <= 60; ++a) {
      for (std::int64_t b = fl[1]; b <= 60; ++b) {
        for (std::int64_t c = fl[2]; c <= 60; ++c) {
          r = {static_cast<double>(a), static_cast<double>(b), static_cast<double>(c)};
          if (relaxed_gate(p, r) <= g) best = std::min(best, relaxed_weight(p, r));
        }
      }
    }
    ASSERT_TRUE(std::isfinite(best));
    EXPECT_LE(relaxed_weight(p, to_real(sol.rounded)), 1.02 * best) << trial;
    ++checked;
  }
  EXPECT_GE(checked, 8);
}

TEST(MinimizeSamples, FloorLimitedEntryNeedsJointMove) {
  // The optimum raises the floor-bound middle entry and lowers both others by
  // several steps at once.
  RuntimeProblem p;
  p.add(1, 0.0799889, 2.76506);
  p.add(3, 0.392112, 0.610373);
  p.add(5, 0.0882494, 1.67833);
  const double g = 4.20266;
  double best = std::numeric_limits<double>::infinity();
  for (int a = 3; a <= 40; ++a) {
    for (int b = 1; b <= 40; ++b) {
      for (int c = 2; c <= 40; ++c) {
        const std::vector<double> r = {double(a), double(b), double(c)};
        if (relaxed_gate(p, r) <= g) best = std::min(best, relaxed_weight(p, r));
      }
    }
  }
  const auto sol = minimize_samples(p, g);
  EXPECT_LE(relaxed_gate(p, to_real(sol.rounded)), 1.01 * g);
  EXPECT_LE(relaxed_weight(p, to_real(sol.rounded)), 1.02 * best);
}

TEST(MinimizeSamples, InfeasibleBudget) {
  RuntimeProblem p;
  p.add(1, 1.0, 5.0);
  p.add(3, 1.0, 8.0);
  EXPECT_THROW(minimize_samples(p, 0.5 * gated_floor(p)), ValidationError);
  EXPECT_THROW(minimize_samples(p, -1.0), ValidationError);
  EXPECT_NO_THROW(minimize_samples(p, gated_floor(p) * 1.001));
}

TEST(MinimizeSamples, LargerBudgetNeverHurts) {
  std::mt19937_64 rng(12);
  const auto p = random_problem(rng, 25, 40.0);
  double previous = std::numeric_limits<double>::infinity();
  const double lo = gated_floor(p);
  for (double factor : {1.01, 1.5, 2.0, 4.0, 8.0, 16.0}) {
    const auto sol = minimize_samples(p, lo * factor);
    const double f = relaxed_weight(p, sol.relaxed);
    EXPECT_LE(f, previous * (1 + 1e-12));
    previous = f;
  }
}

TEST(ComplexityReport, Examples) {
  // Weight e^{-1} at t = 1, r = 1 makes A = 1.
  RuntimeProblem p;
  p.add(1, std::exp(-1.0), 1.0);
  const auto c = complexity_report(p, RuntimeVector{{1}}, 1.0, 0.1, 0.05, false, 0);
  EXPECT_NEAR(c.weight_A, 1.0, 1e-15);
  EXPECT_EQ(c.c_sample, static_cast<std::int64_t>(std::ceil(25 * std::log(20.0))));
  EXPECT_EQ(c.c_sample, 75);
  EXPECT_EQ(complexity_report(p, RuntimeVector{{1}}, 0.5, 0.1, 0.05, false, 0).c_sample, 533);
  EXPECT_DOUBLE_EQ(c.c_gate, 1.0);
  EXPECT_DOUBLE_EQ(c.c_total, 150.0);
  EXPECT_NEAR(c.margin, 0.4, 1e-15);
}

TEST(ComplexityReport, UniformAndConvexCombination) {
  std::mt19937_64 rng(2);
  const auto p = random_problem(rng, 12, 5.0);
  RuntimeVector uniform{std::vector<std::int64_t>(p.size(), 17)};
  for (bool exact : {false, true}) {
    const auto c = complexity_report(p, uniform, 1.0, 0.2, 0.05, exact, 8);
    EXPECT_NEAR(c.c_gate, 17.0, 1e-12);
    EXPECT_EQ(c.exact_mu, exact);
  }
  for (int trial = 0; trial < 20; ++trial) {
    RuntimeVector r;
    for (std::size_t i = 0; i < p.size(); ++i) r.r.push_back(5 + static_cast<std::int64_t>(rng() % 50));
    const auto c = complexity_report(p, r, 1.0, 0.2, 0.05, true, 6);
    EXPECT_LE(c.c_gate, static_cast<double>(r.max()) * (1 + 1e-14));
    EXPECT_GE(c.c_sample, 1);
    const auto bound = complexity_report(p, r, 1.0, 0.2, 0.05, false, 6);
    EXPECT_LE(c.weight_A, bound.weight_A * (1 + 1e-14));
  }
}

TEST(ComplexityReport, RejectsBadParameters) {
  RuntimeProblem p;
  p.add(1, 1.0, 1.0);
  const RuntimeVector r{{2}};
  EXPECT_THROW(complexity_report(p, r, 0.5, 0.25, 0.05, false, 0), ValidationError);
  EXPECT_THROW(complexity_report(p, r, 0.5, 0.1, 1.0, false, 0), ValidationError);
  EXPECT_THROW(complexity_report(p, r, 1.5, 0.1, 0.05, false, 0), ValidationError);
  EXPECT_THROW(complexity_report(p, RuntimeVector{{1, 2}}, 1.0, 0.1, 0.05, false, 0), ValidationError);
}

}  // namespace
}  // namespace rspe
