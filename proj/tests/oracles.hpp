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

// Reference computations for the tests. Nothing here calls into the library's
// numerical routines; each value is computed by a different method (quadrature,
// power series, bisection, dense linear algebra).

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "rspe/pauli.hpp"

namespace oracle {

using cplx = std::complex<double>;

/// e^{-beta} I_n(beta) = (1/pi) int_0^pi e^{beta (cos th - 1)} cos(n th) dth,
/// by the trapezoid rule (exponentially convergent for periodic integrands).
inline double bessel_scaled_quad(std::int64_t n, double beta, int panels = 0) {
  if (panels == 0) {
    panels = 400 + static_cast<int>(40.0 * std::sqrt(beta)) + 4 * static_cast<int>(n);
  }
  const double h = std::numbers::pi / panels;
  double sum = 0.0;
  for (int i = 0; i <= panels; ++i) {
    const double th = i * h;
    const double f = std::exp(beta * (std::cos(th) - 1.0)) *
                     std::cos(static_cast<double>(n) * th);
    sum += (i == 0 || i == panels) ? 0.5 * f : f;
  }
  return sum * h / std::numbers::pi;
}

/// Power series sum_m (beta/2)^{2m+n} / (m! (m+n)!) times e^{-beta}, in long
/// double. All terms are positive; usable while e^{-beta} is representable.
inline double bessel_scaled_series(int n, double beta) {
  long double term = std::exp(static_cast<long double>(n) * std::log(0.5L * beta) -
                              std::lgamma(static_cast<long double>(n) + 1.0L) -
                              static_cast<long double>(beta));
  long double sum = 0.0L;
  const long double q = 0.25L * beta * beta;
  for (int m = 0; m < 1000000; ++m) {
    sum += term;
    term *= q / (static_cast<long double>(m + 1) * static_cast<long double>(m + 1 + n));
    if (m > beta && term < 1e-22L * sum) break;
  }
  return static_cast<double>(sum);
}

/// w with w e^w = x on the principal branch, by bisection.
inline double lambert_w_bisect(double x) {
  double lo = -1.0;
  double hi = std::max(1.0, std::log1p(x) + 1.0);
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid * std::exp(mid) < x) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// t > beta with (e beta / t)^t e^{-beta} = eps, by bisection on the log form.
inline double f_threshold_root(double beta, double eps) {
  auto g = [&](double t) {
    return t * (1.0 + std::log(beta) - std::log(t)) - beta - std::log(eps);
  };
  double lo = beta;
  double hi = 2.0 * beta + 10.0;
  while (g(hi) > 0.0) hi *= 2.0;
  for (int i = 0; i < 300; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// H_{d+1/2} from the series H_x = sum_{k>=1} x / (k (k + x)).
inline double harmonic_half_series(std::int64_t d) {
  const long double x = static_cast<long double>(d) + 0.5L;
  long double sum = 0.0L;
  const std::int64_t terms = 2000000;
  for (std::int64_t k = terms; k >= 1; --k) {
    const long double kk = static_cast<long double>(k);
    sum += x / (kk * (kk + x));
  }
  // Euler-Maclaurin tail over k > terms of f(k) = x / (k (k + x)).
  const long double n = static_cast<long double>(terms);
  const long double f = x / (n * (n + x));
  const long double df = -x * (2.0L * n + x) / (n * n * (n + x) * (n + x));
  sum += std::log1p(x / n) - 0.5L * f - df / 12.0L;
  return static_cast<double>(sum);
}

/// Chebyshev coefficient of T_k for erf(gamma x) on [-1, 1]:
/// (2/pi) int_0^pi erf(gamma cos th) cos(k th) dth.
inline double erf_cheb_coefficient(std::int64_t k, double gamma, int panels = 0) {
  if (panels == 0) panels = 2000 + 40 * static_cast<int>(gamma) + 8 * static_cast<int>(k);
  const double h = std::numbers::pi / panels;
  double sum = 0.0;
  for (int i = 0; i <= panels; ++i) {
    const double th = i * h;
    const double f = std::erf(gamma * std::cos(th)) * std::cos(static_cast<double>(k) * th);
    sum += (i == 0 || i == panels) ? 0.5 * f : f;
  }
  return 2.0 * sum * h / std::numbers::pi;
}

/// Chebyshev coefficients of the truncated odd series Q (size 2d + 2): the
/// erf(sqrt(2 beta) x) coefficients for orders 1..2d-1 and, for order 2d+1, the
/// single-Bessel end term sqrt(8 beta/pi) (-1)^d e^{-beta} I_d(beta) / (2d + 1).
inline std::vector<double> q_coefficients(double beta, std::int64_t d) {
  std::vector<double> q(static_cast<std::size_t>(2 * d + 2), 0.0);
  const double gamma = std::sqrt(2.0 * beta);
  for (std::int64_t j = 0; j < d; ++j) {
    q[static_cast<std::size_t>(2 * j + 1)] = erf_cheb_coefficient(2 * j + 1, gamma);
  }
  const double sign = (d % 2 == 0) ? 1.0 : -1.0;
  q[static_cast<std::size_t>(2 * d + 1)] = std::sqrt(8.0 * beta / std::numbers::pi) * sign *
                                           bessel_scaled_quad(d, beta) /
                                           static_cast<double>(2 * d + 1);
  return q;
}

/// Sum_k c_k T_k(y) with T_k(y) = cos(k arccos y).
inline double cheb_eval(const std::vector<double>& c, double y) {
  const double th = std::acos(std::clamp(y, -1.0, 1.0));
  double s = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) s += c[k] * std::cos(static_cast<double>(k) * th);
  return s;
}

/// Complex Fourier coefficient F_k of x -> (1 + Q(sin x)) / 2 from N
/// equispaced samples (exact for trigonometric polynomials of degree < N/2).
inline cplx fourier_coefficient(const std::vector<double>& q, std::int64_t k) {
  const int degree = static_cast<int>(q.size());
  const int n = 4 * degree + 16;
  cplx sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = 2.0 * std::numbers::pi * i / n;
    const double f = 0.5 * (1.0 + cheb_eval(q, std::sin(x)));
    sum += f * std::exp(cplx(0.0, -static_cast<double>(k) * x));
  }
  return sum / static_cast<double>(n);
}

inline Eigen::Matrix2cd pauli_2x2(char c) {
  Eigen::Matrix2cd m;
  switch (c) {
    case 'X':
      m << 0, 1, 1, 0;
      break;
    case 'Y':
      m << 0, cplx(0, -1), cplx(0, 1), 0;
      break;
    case 'Z':
      m << 1, 0, 0, -1;
      break;
    default:
      m << 1, 0, 0, 1;
  }
  return m;
}

/// Kronecker product with letter q on qubit q, qubit 0 least significant:
/// word[n-1] (x) ... (x) word[0].
inline Eigen::MatrixXcd kron_word(const std::string& word) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (char c : word) {
    const Eigen::Matrix2cd p = pauli_2x2(c);
    Eigen::MatrixXcd next(2 * m.rows(), 2 * m.cols());
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        next.block(a * m.rows(), b * m.cols(), m.rows(), m.cols()) = p(a, b) * m;
      }
    }
    m = std::move(next);
  }
  return m;
}

inline Eigen::MatrixXcd kron_hamiltonian(const rspe::Hamiltonian& h) {
  const auto dim = static_cast<Eigen::Index>(1) << h.width();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& term : h.terms()) {
    m += term.weight * static_cast<double>(term.op.sign) * kron_word(term.op.pauli.word());
  }
  return m;
}

/// exp(i t H) for Hermitian H via eigendecomposition.
inline Eigen::MatrixXcd expm_i(const Eigen::MatrixXcd& h, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXcd phases(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    phases[i] = std::exp(cplx(0.0, t * es.eigenvalues()[i]));
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline double spectral_norm(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()[0];
}

/// Random Hamiltonian with distinct non-identity words and coefficients of
/// magnitude in [0.1, 1] and random sign.
inline rspe::Hamiltonian random_hamiltonian(std::mt19937_64& rng, std::size_t width,
                                            std::size_t terms) {
  static constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};
  std::uniform_int_distribution<int> letter(0, 3);
  std::uniform_real_distribution<double> mag(0.1, 1.0);
  std::vector<std::string> words;
  const std::size_t max_words = (std::size_t{1} << (2 * width)) - 1;
  while (words.size() < std::min(terms, max_words)) {
    std::string w;
    for (std::size_t q = 0; q < width; ++q) w.push_back(kLetters[letter(rng)]);
    if (w == std::string(width, 'I')) continue;
    if (std::find(words.begin(), words.end(), w) != words.end()) continue;
    words.push_back(w);
  }
  std::vector<std::pair<double, rspe::PauliString>> coeffs;
  for (const auto& w : words) {
    const double sign = (rng() & 1U) ? 1.0 : -1.0;
    coeffs.emplace_back(sign * mag(rng), rspe::PauliString::from_word(w));
  }
  return rspe::Hamiltonian::from_coefficients(coeffs);
}

/// Eigenvalues and overlaps |<E_k|psi>|^2 without any level grouping.
struct Spectrum {
  std::vector<double> energies;
  std::vector<double> weights;
};

inline Spectrum dense_spectrum(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& psi) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Spectrum s;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    s.energies.push_back(es.eigenvalues()[k]);
    s.weights.push_back(std::norm(es.eigenvectors().col(k).dot(psi)));
  }
  return s;
}

/// C(x) = sum of weights with tau E_k <= x.
inline double step_cdf(const Spectrum& s, double tau, double x) {
  double c = 0.0;
  for (std::size_t k = 0; k < s.energies.size(); ++k) {
    if (tau * s.energies[k] <= x) c += s.weights[k];
  }
  return c;
}

}  // namespace oracle
