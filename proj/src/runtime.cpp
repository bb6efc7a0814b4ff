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

#include "rspe/runtime.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>

#include "rspe/error.hpp"
#include "rspe/lcu.hpp"

namespace rspe {

namespace {

void check_problem(const RuntimeProblem& p) {
  detail::require(p.size() > 0, "runtime problem has no entries");
  detail::require(p.weight.size() == p.size() && p.index.size() == p.size(),
                  "runtime problem arrays differ in length");
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p.weight[i] > 0.0) || p.t[i] == 0.0 || !std::isfinite(p.t[i])) {
      throw ValidationError(fmt::format(
          "runtime entry {} needs |F| > 0 and t != 0", p.index[i]));
    }
  }
}

// (t^2/2)(1 + sqrt(1 + 4 s / t^2)), valid for s >= -t^2/4.
double branch(double t2, double s) {
  return 0.5 * t2 * (1.0 + std::sqrt(std::max(0.0, 1.0 + 4.0 * s / t2)));
}

constexpr std::size_t kSmallProblem = 64;

double lower_limit(double t) { return std::max(1.0, std::abs(t)); }

std::int64_t round_entry(double relaxed, double t) {
  const auto floor = static_cast<std::int64_t>(std::ceil(lower_limit(t)));
  return std::max(floor, static_cast<std::int64_t>(std::llround(relaxed)));
}

// Running sums a = sum w u and b = sum w u r for O(1) coordinate updates.
struct Sums {
  double a = 0.0;
  double b = 0.0;
};

double term_u(double t, double r) { return std::exp(t * t / r); }

}  // namespace

void RuntimeProblem::add(std::int64_t j, double w, double time) {
  index.push_back(j);
  weight.push_back(w);
  t.push_back(time);
}

RuntimeProblem make_problem(const FourierSeries& series, double tau_lambda) {
  RuntimeProblem p;
  for (std::int64_t j = 0; j <= series.d(); ++j) {
    const std::int64_t k = 2 * j + 1;
    const double m = series.magnitude(j);
    if (m > 0.0) p.add(k, 2.0 * m, -static_cast<double>(k) * tau_lambda);
  }
  return p;
}

std::int64_t RuntimeVector::max() const {
  return r.empty() ? 0 : *std::max_element(r.begin(), r.end());
}

std::vector<double> to_real(const RuntimeVector& r) {
  return {r.r.begin(), r.r.end()};
}

double relaxed_weight(const RuntimeProblem& p, const std::vector<double>& r) {
  double a = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) a += p.weight[i] * term_u(p.t[i], r[i]);
  return a;
}

double relaxed_gate(const RuntimeProblem& p, const std::vector<double>& r) {
  double a = 0.0;
  double b = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double wu = p.weight[i] * term_u(p.t[i], r[i]);
    a += wu;
    b += wu * r[i];
  }
  return b / a;
}

double relaxed_total(const RuntimeProblem& p, const std::vector<double>& r) {
  double a = 0.0;
  double b = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double wu = p.weight[i] * term_u(p.t[i], r[i]);
    a += wu;
    b += wu * r[i];
  }
  return a * b;
}

RuntimeVector constant_weight(const RuntimeProblem& problem) {
  check_problem(problem);
  RuntimeVector out;
  out.r.reserve(problem.size());
  for (double t : problem.t) {
    out.r.push_back(std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::ceil(2.0 * t * t))));
  }
  return out;
}

TotalSolution minimize_total(const RuntimeProblem& problem) {
  check_problem(problem);
  double t2_max = 0.0;
  for (double t : problem.t) t2_max = std::max(t2_max, t * t);

  std::vector<double> r(problem.size());
  auto fixed_point_gap = [&](double s) {
    for (std::size_t i = 0; i < problem.size(); ++i) {
      r[i] = branch(problem.t[i] * problem.t[i], s);
    }
    return relaxed_gate(problem, r) - s;
  };

  double lo = 1e-12;
  double hi = 2.0 * t2_max;
  double s_star;
  if (fixed_point_gap(hi) >= 0.0) {
    s_star = hi;
  } else {
    if (fixed_point_gap(lo) <= 0.0) {
      throw NumericError("fixed point s = S(R(s)) is not bracketed");
    }
    for (int iter = 0; iter < 2000; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (fixed_point_gap(mid) > 0.0 ? lo : hi) = mid;
    }
    const double gap_lo = std::abs(fixed_point_gap(lo));
    const double gap_hi = std::abs(fixed_point_gap(hi));
    s_star = gap_lo < gap_hi ? lo : hi;
  }

  TotalSolution out;
  out.s_star = s_star;
  out.residual = std::abs(fixed_point_gap(s_star));
  out.relaxed = r;
  out.rounded.r.reserve(problem.size());
  for (std::size_t i = 0; i < problem.size(); ++i) {
    out.rounded.r.push_back(round_entry(r[i], problem.t[i]));
  }
  return out;
}

namespace {

void gated_relaxed(const RuntimeProblem& p, double sigma,
                   std::vector<double>& r) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    r[i] = std::max(lower_limit(p.t[i]), branch(p.t[i] * p.t[i], sigma));
  }
}

double sigma_floor(const RuntimeProblem& p) {
  double t2_min = std::numeric_limits<double>::infinity();
  for (double t : p.t) t2_min = std::min(t2_min, t * t);
  return -0.25 * t2_min;
}

}  // namespace

double gated_floor(const RuntimeProblem& problem) {
  check_problem(problem);
  std::vector<double> r(problem.size());
  gated_relaxed(problem, sigma_floor(problem), r);
  return relaxed_gate(problem, r);
}

GatedSolution minimize_samples(const RuntimeProblem& problem, double g) {
  check_problem(problem);
  if (!(g > 0.0) || !std::isfinite(g)) {
    throw ValidationError(fmt::format("gate budget g must be positive: {}", g));
  }
  std::vector<double> r(problem.size());
  auto excess = [&](double sigma) {
    gated_relaxed(problem, sigma, r);
    return relaxed_gate(problem, r) - g;
  };

  const double lo = sigma_floor(problem);
  const double floor_excess = excess(lo);
  if (floor_excess > 0.0) {
    throw ValidationError(fmt::format(
        "gate budget g = {} is infeasible; the smallest supported value is {}",
        g, floor_excess + g));
  }
  double sigma;
  if (floor_excess == 0.0) {
    sigma = lo;
  } else {
    double hi = std::max({1.0, std::abs(lo), g});
    int grow = 0;
    while (excess(hi) < 0.0) {
      hi *= 4.0;
      if (++grow > 400) throw NumericError("cannot bracket the gated optimum");
    }
    std::uintmax_t max_iter = 500;
    auto tol = boost::math::tools::eps_tolerance<double>(52);
    const auto [a, b] =
        boost::math::tools::toms748_solve(excess, lo, hi, tol, max_iter);
    sigma = 0.5 * (a + b);
    if (excess(sigma) > 0.0) sigma = a;
  }
  gated_relaxed(problem, sigma, r);

  GatedSolution out;
  out.g = g;
  out.sigma = sigma;
  out.multiplier = 1.0 / (sigma + g);
  out.relaxed = r;

  // Integer search on f = sum w u under S(r) <= 1.01 g. Two starts: the
  // rounded relaxed optimum, and on small problems sigma re-bisected on the
  // integer problem with each entry minimizing u(r) (r + sigma) over
  // floor/ceil. Each start is repaired and refined by +-1 moves, plus paired
  // moves on small problems.
  const double budget = 1.01 * g;
  const std::size_t n = problem.size();
  std::vector<std::int64_t> floor(n);
  for (std::size_t i = 0; i < n; ++i) {
    floor[i] = static_cast<std::int64_t>(std::ceil(lower_limit(problem.t[i])));
  }
  auto sums_of = [&](const std::vector<std::int64_t>& ri) {
    Sums s;
    for (std::size_t i = 0; i < n; ++i) {
      const double wu = problem.weight[i] * term_u(problem.t[i], static_cast<double>(ri[i]));
      s.a += wu;
      s.b += wu * static_cast<double>(ri[i]);
    }
    return s;
  };

  auto refine = [&](std::vector<std::int64_t>& ri) {
    std::vector<double> wu(n);
    Sums sums;
    for (std::size_t i = 0; i < n; ++i) {
      wu[i] = problem.weight[i] * term_u(problem.t[i], static_cast<double>(ri[i]));
      sums.a += wu[i];
      sums.b += wu[i] * static_cast<double>(ri[i]);
    }
    double next_wu = 0.0;
    auto delta_sums = [&](std::size_t i, std::int64_t to) {
      next_wu = problem.weight[i] * term_u(problem.t[i], static_cast<double>(to));
      return Sums{sums.a - wu[i] + next_wu,
                  sums.b - wu[i] * static_cast<double>(ri[i]) +
                      next_wu * static_cast<double>(to)};
    };
    for (int pass = 0; pass < 64 && sums.b / sums.a > budget; ++pass) {
      bool moved = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (ri[i] > floor[i] && sums.b / sums.a > budget) {
          sums = delta_sums(i, ri[i] - 1);
          wu[i] = next_wu;
          --ri[i];
          moved = true;
        }
      }
      if (!moved) break;
    }
    for (int pass = 0; pass < 64; ++pass) {
      const double before = sums.a;
      bool improved = false;
      for (std::size_t i = 0; i < n; ++i) {
        for (int step : {-1, 1}) {
          const std::int64_t to = ri[i] + step;
          if (to < floor[i]) continue;
          const Sums next = delta_sums(i, to);
          if (next.b / next.a <= budget && next.a < sums.a * (1.0 - 1e-15)) {
            sums = next;
            wu[i] = next_wu;
            ri[i] = to;
            improved = true;
          }
        }
      }
      if (n <= kSmallProblem) {
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            if (i == j || ri[j] <= floor[j]) continue;
            const Sums keep_sums = sums;
            const double keep_wu = wu[i];
            sums = delta_sums(i, ri[i] + 1);
            wu[i] = next_wu;
            ++ri[i];
            const Sums next = delta_sums(j, ri[j] - 1);
            if (next.b / next.a <= budget && next.a < keep_sums.a * (1.0 - 1e-15)) {
              sums = next;
              wu[j] = next_wu;
              --ri[j];
              improved = true;
            } else {
              sums = keep_sums;
              wu[i] = keep_wu;
              --ri[i];
            }
          }
        }
      }
      if (!improved || before - sums.a <= 1e-7 * before) break;
    }
    return sums;
  };

  std::vector<std::int64_t> best(n);
  for (std::size_t i = 0; i < n; ++i) best[i] = round_entry(r[i], problem.t[i]);
  Sums best_sums = refine(best);

  if (n <= kSmallProblem) {
    std::vector<double> rs(n);
    std::vector<std::int64_t> ri(n);
    auto integer_at = [&](double s) {
      gated_relaxed(problem, s, rs);
      for (std::size_t i = 0; i < n; ++i) {
        const auto down = std::max(floor[i], static_cast<std::int64_t>(std::floor(rs[i])));
        const auto up = std::max(floor[i], down + 1);
        auto cost = [&](std::int64_t v) {
          const double x = static_cast<double>(v);
          return term_u(problem.t[i], x) * (x + s);
        };
        ri[i] = cost(up) < cost(down) ? up : down;
      }
      return sums_of(ri);
    };
    double s_lo = lo;
    double s_hi = sigma;
    while (true) {
      const Sums s = integer_at(s_hi);
      if (s.b / s.a > budget) break;
      if (s_hi >= 1e300) break;
      s_hi = std::max(2.0 * std::abs(s_hi), 1.0);
    }
    std::vector<std::int64_t> lagrange;
    for (int iter = 0; iter < 200 && s_hi - s_lo > 1e-15 * std::max(1.0, std::abs(s_hi)); ++iter) {
      const double mid = 0.5 * (s_lo + s_hi);
      const Sums s = integer_at(mid);
      if (s.b / s.a <= budget) {
        s_lo = mid;
        lagrange = ri;
      } else {
        s_hi = mid;
      }
    }
    if (lagrange.empty()) {
      const Sums s = integer_at(s_lo);
      if (s.b / s.a <= budget) lagrange = ri;
    }
    integer_at(s_hi);
    std::vector<std::int64_t> above = ri;
    for (auto* start : {&lagrange, &above}) {
      if (start->empty()) continue;
      const Sums s = refine(*start);
      if (s.b / s.a <= budget && s.a < best_sums.a) {
        best = *start;
        best_sums = s;
      }
    }
  }
  out.rounded.r = std::move(best);
  return out;
}

Complexities complexity_report(const RuntimeProblem& problem,
                               const RuntimeVector& r, double eta, double eps,
                               double theta, bool exact_mu, int M,
                               double bias) {
  check_problem(problem);
  detail::require(r.r.size() == problem.size(),
                  "runtime vector does not match the problem");
  if (!(eta > 0.0) || !(eta <= 1.0)) {
    throw ValidationError(fmt::format("eta must lie in (0, 1], got {}", eta));
  }
  if (!(eps > 0.0) || !(eps < eta / 2)) {
    throw ValidationError(
        fmt::format("eps must lie in (0, eta/2), got eps = {}", eps));
  }
  if (!(theta > 0.0) || !(theta < 1.0)) {
    throw ValidationError(fmt::format("theta must lie in (0, 1), got {}", theta));
  }
  Complexities c;
  c.exact_mu = exact_mu;
  c.margin = eta / 2 - eps - bias;
  if (!(c.margin > 0.0)) {
    throw ValidationError("truncation bias exhausts the decision margin");
  }
  double weighted_r = 0.0;
  for (std::size_t i = 0; i < problem.size(); ++i) {
    const double ri = static_cast<double>(r.r[i]);
    const double mu = exact_mu ? weight_mu(problem.t[i], r.r[i], M)
                               : term_u(problem.t[i], ri);
    c.weight_A += problem.weight[i] * mu;
    weighted_r += problem.weight[i] * mu * ri;
  }
  const double ratio = 2.0 * c.weight_A / c.margin;
  c.c_sample = static_cast<std::int64_t>(
      std::ceil(ratio * ratio * std::log(1.0 / theta)));
  c.c_sample = std::max<std::int64_t>(c.c_sample, 1);
  c.c_gate = weighted_r / c.weight_A;
  c.c_total = 2.0 * static_cast<double>(c.c_sample) * c.c_gate;
  return c;
}

}  // namespace rspe
