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

namespace rspe {

/// e^{-beta} I_n(beta) for the modified Bessel function of the first kind.
double bessel_i_scaled(std::int64_t n, double beta);

/**
 * @brief e^{-beta} I_k(beta) for k = 0..nmax.
 *
 * Miller's backward recurrence normalized with the generating identity
 * I_0 + 2 sum_k I_k = e^beta, so no unscaled value is ever formed.
 */
std::vector<double> bessel_i_scaled_sequence(std::int64_t nmax, double beta);

/// Principal branch of the Lambert W function, x >= -1/e.
double lambert_w0(double x);

/**
 * @brief Solution t > beta of (e*beta/t)^t e^{-beta} = eps.
 *
 * Evaluated as e*beta*exp(W(y)) with y = (ln(1/eps) - beta)/(e*beta), which
 * equals (ln(1/eps) - beta) / W(y) without the 0/0 at ln(1/eps) = beta.
 */
double f_threshold(double beta, double eps);

/// Harmonic number at half-integers, H_{d+1/2}.
double harmonic_half(std::int64_t d);

double erf(double x);

}  // namespace rspe
