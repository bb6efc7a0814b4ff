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

#include "rspe/specfun.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>

#include "rspe/error.hpp"

namespace rspe {

namespace {

constexpr double kRescaleThreshold = 1e200;
constexpr double kLogRescale = 460.51701859880914;  // ln(1e200)

}  // namespace

std::vector<double> bessel_i_scaled_sequence(std::int64_t nmax, double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw ValidationError(fmt::format("Bessel argument must be positive: {}",
                                      beta));
  }
  detail::require(nmax >= 0, "Bessel order must be non-negative");
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);

  if (beta < 1e-150) {
    // Leading term of the power series; the next correction is O(beta^2).
    for (std::int64_t n = 0; n <= nmax; ++n) {
      const double log_value = n * std::log(0.5 * beta) - std::lgamma(n + 1.0);
      out[static_cast<std::size_t>(n)] = std::exp(log_value);
    }
    return out;
  }

  const auto start =
      nmax + 32 + static_cast<std::int64_t>(std::ceil(12.0 * std::sqrt(beta)));
  std::vector<int> scale_at(out.size(), 0);
  int rescales = 0;
  double next = 0.0;  // v_{k+1}
  double cur = 1e-300;  // v_k
  double sum = 0.0;   // sum over k >= 1 of v_k, at the current scale
  const double two_over_beta = 2.0 / beta;
  for (std::int64_t k = start; k >= 1; --k) {
    if (k <= nmax) {
      out[static_cast<std::size_t>(k)] = cur;
      scale_at[static_cast<std::size_t>(k)] = rescales;
    }
    sum += cur;
    const double prev = next + static_cast<double>(k) * two_over_beta * cur;
    next = cur;
    cur = prev;
    if (std::abs(cur) > kRescaleThreshold) {
      cur /= kRescaleThreshold;
      next /= kRescaleThreshold;
      sum /= kRescaleThreshold;
      ++rescales;
    }
  }
  out[0] = cur;
  scale_at[0] = rescales;
  const double norm = cur + 2.0 * sum;
  for (std::size_t k = 0; k < out.size(); ++k) {
    const int lag = rescales - scale_at[k];
    double value = out[k] / norm;
    if (lag > 0) value *= std::exp(-lag * kLogRescale);
    out[k] = value;
  }
  return out;
}

double bessel_i_scaled(std::int64_t n, double beta) {
  return bessel_i_scaled_sequence(n, beta).back();
}

double lambert_w0(double x) {
  constexpr double kBranch = -1.0 / std::numbers::e;
  if (std::isnan(x) || x < kBranch - 1e-16) {
    throw ValidationError(fmt::format("lambert_w0 needs x >= -1/e, got {}", x));
  }
  if (x == 0.0) return 0.0;
  if (x <= kBranch) return -1.0;
  if (std::isinf(x)) return x;

  double w;
  if (x < -0.25) {
    const double p = std::sqrt(2.0 * (std::numbers::e * x + 1.0));
    w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  } else if (x < 3.0) {
    w = std::log1p(x) * (1.0 - std::log1p(std::log1p(x)) / (2.0 + std::log1p(x)));
  } else {
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }

  for (int iter = 0; iter < 100; ++iter) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double step = f / denom;
    w -= step;
    if (w < -1.0) w = -1.0;
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(w))) break;
  }
  const double residual = std::abs(w * std::exp(w) - x);
  if (residual > 1e-12 * std::abs(x) && std::abs(w + 1.0) > 1e-6) {
    throw NumericError(fmt::format("lambert_w0 did not converge at x = {}", x));
  }
  return w;
}

double f_threshold(double beta, double eps) {
  detail::require(beta > 0.0 && std::isfinite(beta),
                  "f_threshold needs beta > 0");
  if (!(eps > 0.0) || !(eps < 1.0)) {
    throw ValidationError(fmt::format(
        "f_threshold needs 0 < eps < 1 (use t = beta otherwise), got {}", eps));
  }
  const double y =
      (std::log(1.0 / eps) - beta) / (std::numbers::e * beta);
  return std::numbers::e * beta * std::exp(lambert_w0(y));
}

double harmonic_half(std::int64_t d) {
  detail::require(d >= 0, "harmonic_half needs d >= 0");
  double h = 2.0 - 2.0 * std::numbers::ln2;
  double carry = 0.0;
  for (std::int64_t k = 1; k <= d; ++k) {
    const double term = 1.0 / (static_cast<double>(k) + 0.5) - carry;
    const double next = h + term;
    carry = (next - h) - term;
    h = next;
  }
  return h;
}

double erf(double x) { return std::erf(x); }

}  // namespace rspe
