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

#include <complex>
#include <cstdint>
#include <ostream>
#include <vector>

namespace rspe {

/**
 * @brief Certified parameters of the Heaviside approximation.
 *
 * With these parameters the Fourier series F satisfies |Theta(x) - F(x)| <=
 * error_bound() for delta <= |x| <= pi - delta and stays within
 * [-range_bound(), 1 + range_bound()] everywhere.
 */
struct ApproxParams {
  double delta = 0.0;
  double eps1 = 0.0;
  double eps2 = 0.0;
  double eps3 = 0.0;
  double beta = 0.0;
  std::int64_t t_int = 0;
  double w_eps1 = 0.0;
  std::int64_t d = 0;

  double error_bound() const { return 0.5 * (eps1 + eps2 + eps3); }
  double range_bound() const { return 0.5 * (eps1 + eps2); }
};

ApproxParams select_parameters(double delta, double eps1, double eps2,
                               double eps3);

/// Minimizes d over splits with eps1 + eps2 + eps3 = 2 * eps.
ApproxParams optimize_split(double delta, double eps);

/**
 * @brief Odd Fourier series F(x) = F_0 + sum_k F_k e^{ikx}.
 *
 * Indices are 0 and +-(2j+1) for j = 0..d. F_0 = 1/2 and each odd
 * coefficient is -i * magnitude(j) with F_{-k} = -F_k, so only the
 * magnitudes |F_{2j+1}| are stored.
 */
class FourierSeries {
 public:
  FourierSeries(double beta, std::int64_t d, std::vector<double> magnitudes);

  double beta() const { return beta_; }
  std::int64_t d() const { return d_; }

  /// |F_{2j+1}| for j = 0..d.
  const std::vector<double>& magnitudes() const { return magnitudes_; }
  double magnitude(std::int64_t j) const {
    return magnitudes_[static_cast<std::size_t>(j)];
  }

  /// F_k for any integer k; zero outside the index set.
  std::complex<double> coefficient(std::int64_t k) const;

  /// sum over all indices of |F_j|, including F_0.
  double weight() const { return weight_; }
  /// sum_{j=0}^{d} |F_{2j+1}|.
  double odd_weight() const { return odd_weight_; }

 private:
  double beta_;
  std::int64_t d_;
  std::vector<double> magnitudes_;
  double weight_ = 0.0;
  double odd_weight_ = 0.0;
};

FourierSeries build_fourier(double beta, std::int64_t d);
FourierSeries build_fourier(const ApproxParams& params);

/// Real part of the series at x; throws NumericError if the imaginary part
/// exceeds 1e-10.
double eval_fourier(const FourierSeries& series, double x);

/// Writes "j,re,im" rows for j = 0, then each odd index in +-pairs.
void write_coefficients_csv(const FourierSeries& series, std::ostream& out);

/// Chebyshev form of the odd polynomial Q and of P = (Q + 1)/2.
class ChebSeries {
 public:
  ChebSeries(double beta, std::int64_t d, std::vector<double> q_coeffs);

  double beta() const { return beta_; }
  std::int64_t d() const { return d_; }

  /// Coefficient of T_k in Q, zero for even k. Size 2d + 2.
  const std::vector<double>& q_coefficients() const { return q_; }
  /// Coefficient of T_k in P.
  double p_coefficient(std::int64_t k) const;

  double eval_q(double x) const;
  double eval_p(double x) const { return 0.5 * (eval_q(x) + 1.0); }

 private:
  double beta_;
  std::int64_t d_;
  std::vector<double> q_;
};

ChebSeries build_cheb(double beta, std::int64_t d);
ChebSeries build_cheb(const ApproxParams& params);

}  // namespace rspe
