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
#include <cstdint>
#include <istream>
#include <memory>
#include <string>
#include <vector>

#include "rspe/pauli.hpp"
#include "rspe/random.hpp"

namespace rspe {

/// Bit-mask form of a signed Pauli: P|b> = i^quarter_turns (-1)^{|b & z|}
/// |b ^ x>.
struct CompiledPauli {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  int quarter_turns = 0;
};

CompiledPauli compile(const SignedPauli& op);

/// Operators referenced by index from LCU factors.
struct PauliTable {
  explicit PauliTable(std::vector<SignedPauli> ops);

  std::vector<SignedPauli> ops;
  std::vector<CompiledPauli> compiled;  // empty when width > 64
  std::size_t width = 0;
};

/// The normalized distribution {p_l} of a Hamiltonian, ready for sampling.
class PauliDistribution {
 public:
  explicit PauliDistribution(const Hamiltonian& h);

  std::size_t size() const { return probs_.size(); }
  std::size_t width() const { return table_->width; }
  double probability(std::size_t i) const { return probs_[i]; }
  const std::shared_ptr<const PauliTable>& table() const { return table_; }

  /// Index l with P[l] = p_l, driven by one uniform draw in [0, 1).
  std::size_t sample(double u) const;

 private:
  std::shared_ptr<const PauliTable> table_;
  std::vector<double> probs_;
  std::vector<double> cumulative_;
};

struct LcuFactor {
  enum class Kind : std::uint8_t { Rotation, Pauli, Phase };

  Kind kind = Kind::Phase;
  double angle = 0.0;       // Rotation: exp(i * angle * P)
  std::uint32_t term = 0;   // Rotation, Pauli: index into the table
  int quarter_turns = 0;    // Phase: i^quarter_turns
};

/**
 * @brief One sampled unitary U as a product of primitive factors.
 *
 * Factors are stored in application order: factors[0] acts first, so the
 * matrix is factors[n-1] * ... * factors[0].
 */
struct LcuUnitary {
  std::shared_ptr<const PauliTable> table;
  std::vector<LcuFactor> factors;
  std::int64_t rotation_count = 0;

  std::size_t width() const { return table->width; }
};

/// Normalized law of the even Taylor order n of a single segment.
struct SegmentDistribution {
  double x = 0.0;  // t / r
  int M = 0;
  std::vector<double> probs;   // index n/2
  std::vector<double> thetas;  // index n/2
  std::vector<double> cumulative;
  double mu_segment = 1.0;
  double mu_segment_minus_one = 0.0;

  int order(std::size_t index) const { return 2 * static_cast<int>(index); }
  /// Index n/2 sampled from one uniform draw.
  std::size_t sample(double u) const;
};

SegmentDistribution segment_distribution(double t, std::int64_t r, int M);

/// Smallest even M >= ln(1/g) / W(ln(1/g)/e) with g = 2 gamma / (A cgate);
/// zero when g >= 1.
int truncation_order(double gamma, double weight_A, double cgate);

LcuUnitary sample_unitary(const PauliDistribution& dist,
                          const SegmentDistribution& segment, double t,
                          std::int64_t r, Rng& rng);
LcuUnitary sample_unitary(const PauliDistribution& dist, double t,
                          std::int64_t r, int M, Rng& rng);

/// Truncated weight mu_segment(t, r, M)^r.
double weight_mu(double t, std::int64_t r, int M);
/// Untruncated weight (M taken to infinity).
double weight_mu_full(double t, std::int64_t r);
/// Operator-norm bound on || e^{iHt} - mu * E[U] || caused by truncation at
/// order M: r * mu_full_seg^{r-1} * (tail of the segment weights above M).
double truncation_bias_bound(double t, std::int64_t r, int M);

/// One factor per line: "ROT <angle> <op>", "PAULI <op>", "PHASE <q>".
std::string serialize(const LcuUnitary& u);
/// Inverse of serialize; '#' starts a comment.
LcuUnitary parse_unitary(std::istream& in);
/// Splits a stream of unitaries separated by "UNITARY <k>" lines.
std::vector<LcuUnitary> parse_unitary_stream(std::istream& in);

Eigen::MatrixXcd to_matrix(const LcuUnitary& u,
                           std::size_t width_cap = kDenseWidthCap);

}  // namespace rspe
