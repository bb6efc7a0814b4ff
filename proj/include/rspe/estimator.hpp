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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rspe/heaviside.hpp"
#include "rspe/lcu.hpp"
#include "rspe/runtime.hpp"
#include "rspe/state.hpp"

namespace rspe {

enum class RuntimeMode { Constant, Total, Gated };

struct RuntimeChoice {
  RuntimeMode mode = RuntimeMode::Total;
  double g = 0.0;  // gate budget for Gated

  static RuntimeChoice parse(const std::string& text);
  std::string str() const;
};

/// tau = pi / (2 lambda / b + Delta).
double rescale_tau(double lambda, double Delta, double b);

struct PlanRequest {
  double Delta = 0.0;
  double eta = 1.0;
  double eps = 0.0;
  double theta = 0.05;
  double b = 1.0;
  RuntimeChoice rmode;
  double delta_fraction = 1.0;  // delta = delta_fraction * tau * Delta
  std::optional<int> M_override;
};

/**
 * @brief Everything Algorithm-1 style thresholding needs, fixed up front.
 *
 * Runtime entries pair the indices +k and -k: entry i covers both with a
 * weight of 2|F_k|, and the sampler picks the sign uniformly.
 */
struct Plan {
  double lambda = 0.0;
  std::size_t width = 0;
  double Delta = 0.0;
  double tau = 0.0;
  double delta = 0.0;
  double eta = 0.0;
  double eps = 0.0;
  double theta = 0.0;
  double b = 1.0;
  RuntimeChoice rmode;
  ApproxParams params;
  std::shared_ptr<const FourierSeries> fourier;
  RuntimeProblem problem;
  RuntimeVector rvec;
  int M = 0;
  double gamma = 0.0;
  Complexities bound_complexities;  // with mu replaced by exp(t^2/r)
  Complexities complexities;        // exact truncated mu, margin minus gamma
  std::shared_ptr<const PauliDistribution> dist;
  std::vector<SegmentDistribution> segments;
  std::vector<double> class_cumulative;

  /// t_j = -j * tau * lambda.
  double time(std::int64_t j) const { return -static_cast<double>(j) * tau * lambda; }
  std::string json() const;
  std::uint64_t hash() const;
};

Plan build_plan(const Hamiltonian& h, const PlanRequest& request);

struct SampleRecord {
  std::int64_t j;
  std::complex<double> m;
};

struct SampleSet {
  std::vector<SampleRecord> records;
  double weight_A = 0.0;  // excludes the j = 0 term
  std::uint64_t seed = 0;

  /// Byte-stable text form, one "j re im" line per record.
  std::string serialize() const;
};

/// Draws c_sample Hadamard-test records. Record i uses the stream
/// stream_for(seed, i), so results do not depend on `threads`.
SampleSet collect_samples(const Plan& plan, const StateVector& state,
                          std::uint64_t seed, unsigned threads = 1);

/// z(x) = F_0 + (A/N) sum_i e^{i(arg F_j + j x)} m_i.
std::complex<double> acdf_estimate(const SampleSet& samples, double x);

/// sum_j F_j e^{ijx} tr[rho e^{i H t_j / lambda}] from the exact spectrum.
double acdf_exact(const Plan& plan, const SpectralData& spectrum, double x);
double acdf_exact(const Plan& plan, const Hamiltonian& h,
                  const StateVector& state, double x);

/// 0 when Re z(x) < eta / 2, else 1.
int threshold_query(const SampleSet& samples, const Plan& plan, double x);

struct GroundEnergyRequest {
  double Delta = 0.0;
  double eta = 1.0;
  double xi = 0.1;
  double b = 1.0;
  std::optional<double> eps;  // defaults to eta / 4
  RuntimeChoice rmode;
  std::optional<int> M_override;
};

struct GroundEnergyResult {
  double estimate = 0.0;
  double interval_lo = 0.0;  // open end
  double interval_hi = 0.0;  // closed end
  std::int64_t s_queries = 0;
  std::int64_t queries_made = 0;
  double theta = 0.0;
  std::int64_t c_sample = 0;
  double c_gate_expected = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t plan_hash = 0;

  std::string json() const;
};

/// Planned query count s = ceil(log2((2 tau lambda + 4 delta) / (2 delta))).
std::int64_t planned_queries(double tau, double lambda, double delta);

/// Plan with delta = tau * Delta / 2, theta = xi / s and eps defaulting to
/// eta / 4.
Plan build_ground_plan(const Hamiltonian& h, const GroundEnergyRequest& request);

/// Bisection over one fixed sample set; every query reuses `samples`.
GroundEnergyResult bisect_ground_energy(const Plan& plan,
                                        const SampleSet& samples);

GroundEnergyResult ground_energy(const Hamiltonian& h, const StateVector& state,
                                 const GroundEnergyRequest& request,
                                 std::uint64_t seed, unsigned threads = 1);

}  // namespace rspe
