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

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <string_view>
#include <vector>

#include "rspe/lcu.hpp"
#include "rspe/pauli.hpp"
#include "rspe/random.hpp"

namespace rspe {

/// Pure state on `width` qubits; qubit q is bit q of the amplitude index.
class StateVector {
 public:
  StateVector(std::size_t width, Eigen::VectorXcd amplitudes);

  static StateVector basis(std::size_t width, std::uint64_t index);

  std::size_t width() const { return width_; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }

 private:
  std::size_t width_;
  Eigen::VectorXcd amplitudes_;
};

/**
 * @brief Builds a state from a descriptor.
 *
 * "basis:<bits>" with character q giving qubit q; "file:<path>" with one
 * "re im" line per amplitude; "groundmix:<eta>[:<seed>]" giving
 * sqrt(eta)|ground> + sqrt(1-eta)|orthogonal> for the Hamiltonian h.
 */
StateVector prepare_state(std::string_view spec,
                          const Hamiltonian* h = nullptr);

/// Applies the factors of u to psi in place, using `scratch` as workspace.
void apply(const LcuUnitary& u, Eigen::VectorXcd& psi,
           Eigen::VectorXcd& scratch);

/// <psi|U|psi>.
std::complex<double> expectation(const StateVector& state,
                                 const LcuUnitary& u);

/// Outcome pair of the real and imaginary Hadamard tests, each +-1.
std::complex<double> hadamard_sample(std::complex<double> expectation,
                                     Rng& rng);
std::complex<double> hadamard_sample(const StateVector& state,
                                     const LcuUnitary& u, Rng& rng);

struct SpectralData {
  std::vector<double> eigenvalues;  // ascending, degenerate levels merged
  std::vector<double> overlaps;
};

/// Dense eigendecomposition of h with the overlaps of `state` per level.
SpectralData exact_spectrum(const Hamiltonian& h, const StateVector& state);

/// C(x) = sum of overlaps over levels with tau * E_k <= x.
double exact_cdf(const SpectralData& spec, double tau, double x);

}  // namespace rspe
