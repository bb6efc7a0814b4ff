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
#include <compare>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rspe {

/// Largest qubit count for which dense 2^n matrices and state vectors are
/// materialized.
inline constexpr std::size_t kDenseWidthCap = 12;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Pauli p);

/**
 * @brief Tensor product of single-qubit Pauli operators.
 *
 * Letter q of the word acts on qubit q. In dense realizations qubit q is
 * bit q of the computational basis index (little-endian), so the word "XZ"
 * is the matrix Z (x) X in Kronecker order.
 */
class PauliString {
 public:
  explicit PauliString(std::vector<Pauli> axes);

  /// Parses a word over {I, X, Y, Z}, case-insensitive.
  static PauliString from_word(std::string_view word);
  static PauliString identity(std::size_t width);

  std::size_t width() const { return axes_.size(); }
  Pauli operator[](std::size_t qubit) const { return axes_[qubit]; }
  std::span<const Pauli> axes() const { return axes_; }
  std::string word() const;

  /// Bit q set when letter q is X or Y. Requires width <= 64.
  std::uint64_t x_mask() const;
  /// Bit q set when letter q is Z or Y. Requires width <= 64.
  std::uint64_t z_mask() const;
  std::size_t y_count() const;
  bool is_identity() const;

  auto operator<=>(const PauliString&) const = default;
  bool operator==(const PauliString&) const = default;

 private:
  std::vector<Pauli> axes_;
};

/// A Pauli string with a real sign; Hermitian and unitary.
struct SignedPauli {
  PauliString pauli;
  int sign = 1;

  SignedPauli(PauliString p, int s = 1);

  std::size_t width() const { return pauli.width(); }
  /// "XYZ" or "-XYZ"; a leading '+' is accepted by parse().
  std::string str() const;
  static SignedPauli parse(std::string_view text);

  auto operator<=>(const SignedPauli&) const = default;
  bool operator==(const SignedPauli&) const = default;
};

/// Exact product a*b = i^quarter_turns * product.
struct PauliProduct {
  int quarter_turns = 0;  // in [0, 4)
  PauliString product;

  std::complex<double> phase() const;
};

PauliProduct pauli_multiply(const SignedPauli& a, const SignedPauli& b);

/// i^q for integer q, returned exactly.
std::complex<double> quarter_turn_phase(int q);

struct HamiltonianTerm {
  double weight;  // > 0
  SignedPauli op;
};

/**
 * @brief H = sum_l weight_l * op_l with all weights positive.
 *
 * Negative input coefficients are absorbed into the sign of the Pauli
 * operator. Terms with identical signed operators are merged. The one-norm
 * lambda = sum of weights upper-bounds the spectral norm.
 */
class Hamiltonian {
 public:
  /// Merges duplicate operators and validates weights and widths.
  explicit Hamiltonian(std::vector<HamiltonianTerm> terms);

  /// Builds from signed real coefficients; |c| becomes the weight.
  static Hamiltonian from_coefficients(
      const std::vector<std::pair<double, PauliString>>& coefficients);

  const std::vector<HamiltonianTerm>& terms() const { return terms_; }
  double lambda() const { return lambda_; }
  std::size_t width() const { return width_; }

 private:
  std::vector<HamiltonianTerm> terms_;
  double lambda_ = 0.0;
  std::size_t width_ = 0;
};

/// Parses "<coefficient> <word>" lines; '#' starts a comment.
Hamiltonian parse_hamiltonian(std::istream& in);
Hamiltonian parse_hamiltonian(std::string_view text);
Hamiltonian load_hamiltonian(const std::string& path);

/// One line per term with the sign folded back into the coefficient.
std::string serialize(const Hamiltonian& h);

struct WeightedPauli {
  double probability;
  SignedPauli op;
};

/// p_l = weight_l / lambda for each term, in term order.
std::vector<WeightedPauli> normalized_distribution(const Hamiltonian& h);

Eigen::MatrixXcd to_matrix(const SignedPauli& op,
                           std::size_t width_cap = kDenseWidthCap);
Eigen::MatrixXcd to_matrix(const Hamiltonian& h,
                           std::size_t width_cap = kDenseWidthCap);

}  // namespace rspe
