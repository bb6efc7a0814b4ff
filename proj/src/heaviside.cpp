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

#include "rspe/heaviside.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>
#include <utility>

#include "rspe/error.hpp"
#include "rspe/specfun.hpp"

namespace rspe {

namespace {

struct SplitCandidate {
  ApproxParams params;
  double d_relaxed;  // sqrt(t * w) before any ceiling

  bool better_than(const SplitCandidate& other) const {
    if (params.d != other.params.d) return params.d < other.params.d;
    return d_relaxed < other.d_relaxed;
  }
};

void validate_inputs(double delta, double eps1, double eps2, double eps3) {
  if (!(delta > 0.0) || !(delta < std::numbers::pi / 2)) {
    throw ValidationError(
        fmt::format("delta must lie in (0, pi/2), got {}", delta));
  }
  if (!(eps1 > 0.0) || !(eps2 > 0.0) || !(eps3 > 0.0)) {
    throw ValidationError(fmt::format(
        "eps1, eps2, eps3 must be positive, got {}, {}, {}", eps1, eps2, eps3));
  }
}

SplitCandidate evaluate_split(double delta, double eps1, double eps2,
                              double eps3) {
  validate_inputs(delta, eps1, eps2, eps3);
  ApproxParams p;
  p.delta = delta;
  p.eps1 = eps1;
  p.eps2 = eps2;
  p.eps3 = eps3;
  const double s = std::sin(delta);
  p.beta = std::max(
      lambert_w0(2.0 / (std::numbers::pi * eps3 * eps3)) / (4.0 * s * s), 1.0);
  p.w_eps1 = lambert_w0(8.0 / (std::numbers::pi * eps1 * eps1));

  const double scaled_eps2 = std::sqrt(2.0 * std::numbers::pi * p.w_eps1) * eps2;
  const double t_relaxed =
      scaled_eps2 < 1.0 ? f_threshold(p.beta, scaled_eps2) : p.beta;
  p.t_int = static_cast<std::int64_t>(std::ceil(t_relaxed));
  p.d = static_cast<std::int64_t>(
      std::ceil(std::sqrt(static_cast<double>(p.t_int) * p.w_eps1)));
  p.d = std::max<std::int64_t>(p.d, 1);
  return {p, std::sqrt(t_relaxed * p.w_eps1)};
}

// Candidate with eps1 = total * a, eps2 = total * b, eps3 = the rest.
SplitCandidate evaluate_fractions(double delta, double total, double a,
                                  double b) {
  return evaluate_split(delta, total * a, total * b, total * (1.0 - a - b));
}

}  // namespace

ApproxParams select_parameters(double delta, double eps1, double eps2,
                               double eps3) {
  return evaluate_split(delta, eps1, eps2, eps3).params;
}

ApproxParams optimize_split(double delta, double eps) {
  if (!(eps > 0.0)) {
    throw ValidationError(fmt::format("eps must be positive, got {}", eps));
  }
  const double total = 2.0 * eps;
  constexpr int kGrid = 20;
  constexpr double kStep = 1.0 / (kGrid + 1);

  SplitCandidate best = evaluate_fractions(delta, total, 1.0 / 3, 1.0 / 3);
  int best_i = 0;
  int best_k = 0;
  for (int i = 1; i <= kGrid; ++i) {
    for (int k = 1; i + k <= kGrid; ++k) {
      auto candidate = evaluate_fractions(delta, total, i * kStep, k * kStep);
      if (candidate.better_than(best)) {
        best = candidate;
        best_i = i;
        best_k = k;
      }
    }
  }
  if (best_i == 0) return best.params;

  // Golden-section refinement of the relaxed d along each axis through the
  // best grid point; the other eps3 share absorbs the change.
  const double a0 = best_i * kStep;
  const double b0 = best_k * kStep;
  auto refine = [&](bool along_a) {
    const double fixed = along_a ? b0 : a0;
    const double centre = along_a ? a0 : b0;
    double lo = std::max(centre - kStep, 1e-6);
    double hi = std::min(centre + kStep, 1.0 - fixed - 1e-6);
    auto at = [&](double v) {
      return along_a ? evaluate_fractions(delta, total, v, fixed)
                     : evaluate_fractions(delta, total, fixed, v);
    };
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    auto c1 = at(x1);
    auto c2 = at(x2);
    for (int iter = 0; iter < 60 && hi - lo > 1e-9; ++iter) {
      if (c1.d_relaxed < c2.d_relaxed) {
        hi = x2;
        x2 = x1;
        c2 = c1;
        x1 = hi - kInvPhi * (hi - lo);
        c1 = at(x1);
      } else {
        lo = x1;
        x1 = x2;
        c1 = c2;
        x2 = lo + kInvPhi * (hi - lo);
        c2 = at(x2);
      }
      if (c1.better_than(best)) best = c1;
      if (c2.better_than(best)) best = c2;
    }
  };
  refine(true);
  refine(false);
  return best.params;
}

FourierSeries::FourierSeries(double beta, std::int64_t d,
                             std::vector<double> magnitudes)
    : beta_(beta), d_(d), magnitudes_(std::move(magnitudes)) {
  detail::require(d >= 0, "Fourier degree must be non-negative");
  detail::require(magnitudes_.size() == static_cast<std::size_t>(d) + 1,
                  "expected d + 1 odd coefficients");
  for (double m : magnitudes_) odd_weight_ += m;
  weight_ = 0.5 + 2.0 * odd_weight_;
}

std::complex<double> FourierSeries::coefficient(std::int64_t k) const {
  if (k == 0) return {0.5, 0.0};
  const std::int64_t a = k < 0 ? -k : k;
  if (a % 2 == 0 || (a - 1) / 2 > d_) return {0.0, 0.0};
  const double m = magnitudes_[static_cast<std::size_t>((a - 1) / 2)];
  return {0.0, k > 0 ? -m : m};
}

FourierSeries build_fourier(double beta, std::int64_t d) {
  detail::require(beta > 0.0, "beta must be positive");
  detail::require(d >= 1, "d must be at least 1");
  const auto bessel = bessel_i_scaled_sequence(d + 1, beta);
  const double prefactor = std::sqrt(beta / (2.0 * std::numbers::pi));
  std::vector<double> magnitudes(static_cast<std::size_t>(d) + 1);
  for (std::int64_t j = 0; j < d; ++j) {
    const auto u = static_cast<std::size_t>(j);
    magnitudes[u] = prefactor * (bessel[u] + bessel[u + 1]) / (2.0 * j + 1.0);
  }
  magnitudes[static_cast<std::size_t>(d)] =
      prefactor * bessel[static_cast<std::size_t>(d)] / (2.0 * d + 1.0);
  return FourierSeries(beta, d, std::move(magnitudes));
}

FourierSeries build_fourier(const ApproxParams& params) {
  return build_fourier(params.beta, params.d);
}

double eval_fourier(const FourierSeries& series, double x) {
  std::complex<double> total = series.coefficient(0);
  for (std::int64_t j = 0; j <= series.d(); ++j) {
    const std::int64_t k = 2 * j + 1;
    const auto phase = std::polar(1.0, static_cast<double>(k) * x);
    total += series.coefficient(k) * phase +
             series.coefficient(-k) * std::conj(phase);
  }
  if (std::abs(total.imag()) > 1e-10) {
    throw NumericError(fmt::format(
        "Fourier series has imaginary residue {} at x = {}", total.imag(), x));
  }
  return total.real();
}

void write_coefficients_csv(const FourierSeries& series, std::ostream& out) {
  auto number = [](double v) {
    return v == 0.0 ? std::string("0.0") : fmt::format("{:.17g}", v);
  };
  out << "j,re,im\n";
  out << "0," << number(0.5) << ",0.0\n";
  for (std::int64_t j = 0; j <= series.d(); ++j) {
    for (std::int64_t k : {2 * j + 1, -(2 * j + 1)}) {
      const auto c = series.coefficient(k);
      out << k << ',' << number(c.real()) << ',' << number(c.imag()) << '\n';
    }
  }
}

ChebSeries::ChebSeries(double beta, std::int64_t d, std::vector<double> q)
    : beta_(beta), d_(d), q_(std::move(q)) {
  detail::require(q_.size() == static_cast<std::size_t>(2 * d + 2),
                  "expected 2d + 2 Chebyshev coefficients");
}

double ChebSeries::p_coefficient(std::int64_t k) const {
  if (k < 0 || k >= static_cast<std::int64_t>(q_.size())) return 0.0;
  return (k == 0 ? 0.5 : 0.0) + 0.5 * q_[static_cast<std::size_t>(k)];
}

double ChebSeries::eval_q(double x) const {
  // Clenshaw recurrence for sum_k q_k T_k(x).
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t k = q_.size(); k-- > 1;) {
    const double b0 = 2.0 * x * b1 - b2 + q_[k];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + q_[0];
}

ChebSeries build_cheb(double beta, std::int64_t d) {
  detail::require(beta > 0.0, "beta must be positive");
  detail::require(d >= 1, "d must be at least 1");
  const auto bessel = bessel_i_scaled_sequence(d + 1, beta);
  const double c = 2.0 * std::sqrt(2.0 * beta / std::numbers::pi);
  std::vector<double> q(static_cast<std::size_t>(2 * d + 2), 0.0);
  for (std::int64_t j = 0; j <= d; ++j) {
    const auto u = static_cast<std::size_t>(j);
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    const double pair = j < d ? bessel[u] + bessel[u + 1] : bessel[u];
    q[static_cast<std::size_t>(2 * j + 1)] = c * sign * pair / (2.0 * j + 1.0);
  }
  return ChebSeries(beta, d, std::move(q));
}

ChebSeries build_cheb(const ApproxParams& params) {
  return build_cheb(params.beta, params.d);
}

}  // namespace rspe
