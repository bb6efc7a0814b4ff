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

#include "rspe/state.hpp"

#include <fmt/format.h>

#include <Eigen/Eigenvalues>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "rspe/error.hpp"

namespace rspe {

namespace {

void check_width(std::size_t width) {
  if (width == 0 || width > kDenseWidthCap) {
    throw ValidationError(fmt::format(
        "state width {} outside [1, {}] qubits", width, kDenseWidthCap));
  }
}

StateVector from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open amplitude file: " + path);
  std::vector<std::complex<double>> values;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    double re = 0.0;
    double im = 0.0;
    if (!(fields >> re)) continue;
    std::string extra;
    if (!(fields >> im) || (fields >> extra)) {
      throw ValidationError(fmt::format(
          "{}:{}: expected '<re> <im>'", path, line_number));
    }
    values.emplace_back(re, im);
  }
  if (values.empty() || !std::has_single_bit(values.size())) {
    throw ValidationError(fmt::format(
        "amplitude file {} must hold 2^n values, found {}", path, values.size()));
  }
  const auto width = static_cast<std::size_t>(std::countr_zero(values.size()));
  check_width(width);
  Eigen::VectorXcd amps(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    amps[static_cast<Eigen::Index>(i)] = values[i];
  }
  const double norm = amps.norm();
  if (!(norm > 1e-300) || !std::isfinite(norm)) {
    throw ValidationError("amplitude file " + path + " is not normalizable");
  }
  return StateVector(width, amps / norm);
}

struct Eigensystem {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
};

Eigensystem diagonalize(const Hamiltonian& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_matrix(h));
  if (solver.info() != Eigen::Success) {
    throw NumericError("Hermitian eigensolver failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

StateVector ground_mix(const Hamiltonian& h, double eta, std::uint64_t seed) {
  if (!(eta > 0.0) || !(eta <= 1.0)) {
    throw ValidationError(fmt::format("groundmix needs eta in (0, 1], got {}", eta));
  }
  const auto sys = diagonalize(h);
  const Eigen::Index dim = sys.values.size();
  const double tol = 1e-9 * h.lambda();
  Eigen::Index ground_dim = 1;
  while (ground_dim < dim && sys.values[ground_dim] - sys.values[0] <= tol) {
    ++ground_dim;
  }
  const Eigen::VectorXcd ground = sys.vectors.col(0);
  if (eta == 1.0 || ground_dim == dim) {
    return StateVector(h.width(), ground);
  }
  Rng rng(splitmix64(seed));
  std::normal_distribution<double> normal;
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = {normal(rng), normal(rng)};
  const auto basis = sys.vectors.leftCols(ground_dim);
  v -= basis * (basis.adjoint() * v);
  v.normalize();
  Eigen::VectorXcd psi = std::sqrt(eta) * ground + std::sqrt(1.0 - eta) * v;
  psi.normalize();
  return StateVector(h.width(), psi);
}

template <typename T>
T parse_number(std::string_view text, const char* what) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ValidationError(fmt::format("malformed {} '{}'", what, text));
  }
  return value;
}

// i^q * s * (-1)^{popcount(b & z)} psi[b] written to out[b ^ x].
void apply_pauli(const CompiledPauli& p, const Eigen::VectorXcd& psi,
                 Eigen::VectorXcd& out) {
  const std::complex<double> phase = quarter_turn_phase(p.quarter_turns);
  const auto dim = static_cast<std::uint64_t>(psi.size());
  for (std::uint64_t b = 0; b < dim; ++b) {
    const auto v = psi[static_cast<Eigen::Index>(b)];
    out[static_cast<Eigen::Index>(b ^ p.x)] =
        (std::popcount(b & p.z) & 1) ? -phase * v : phase * v;
  }
}

}  // namespace

StateVector::StateVector(std::size_t width, Eigen::VectorXcd amplitudes)
    : width_(width), amplitudes_(std::move(amplitudes)) {
  check_width(width);
  detail::require(amplitudes_.size() == (Eigen::Index{1} << width),
                  "amplitude count must be 2^width");
  detail::require(std::abs(amplitudes_.norm() - 1.0) <= 1e-10,
                  "state is not normalized");
}

StateVector StateVector::basis(std::size_t width, std::uint64_t index) {
  check_width(width);
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(Eigen::Index{1} << width);
  detail::require(index < (std::uint64_t{1} << width), "basis index too large");
  amps[static_cast<Eigen::Index>(index)] = 1.0;
  return StateVector(width, amps);
}

StateVector prepare_state(std::string_view spec, const Hamiltonian* h) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw ValidationError(fmt::format("malformed state descriptor '{}'", spec));
  }
  const auto kind = spec.substr(0, colon);
  const auto rest = spec.substr(colon + 1);
  if (kind == "basis") {
    std::uint64_t index = 0;
    for (std::size_t q = 0; q < rest.size(); ++q) {
      if (rest[q] == '1') {
        index |= std::uint64_t{1} << q;
      } else if (rest[q] != '0') {
        throw ValidationError(fmt::format("basis bits must be 0/1: '{}'", rest));
      }
    }
    if (h && h->width() != rest.size()) {
      throw ValidationError(fmt::format(
          "basis state has {} qubits, Hamiltonian has {}", rest.size(), h->width()));
    }
    return StateVector::basis(rest.size(), index);
  }
  if (kind == "file") {
    auto state = from_file(std::string(rest));
    if (h && h->width() != state.width()) {
      throw ValidationError("amplitude file width does not match Hamiltonian");
    }
    return state;
  }
  if (kind == "groundmix") {
    if (!h) throw ValidationError("groundmix needs a Hamiltonian");
    check_width(h->width());
    const auto second = rest.find(':');
    const double eta = parse_number<double>(rest.substr(0, second), "eta");
    std::uint64_t seed = 0;
    if (second != std::string_view::npos) {
      seed = parse_number<std::uint64_t>(rest.substr(second + 1), "seed");
    }
    return ground_mix(*h, eta, seed);
  }
  throw ValidationError(fmt::format("unknown state kind '{}'", kind));
}

void apply(const LcuUnitary& u, Eigen::VectorXcd& psi,
           Eigen::VectorXcd& scratch) {
  detail::require(u.width() <= kDenseWidthCap, "unitary exceeds the width cap");
  detail::require(psi.size() == (Eigen::Index{1} << u.width()),
                  "state and unitary widths differ");
  scratch.resize(psi.size());
  int quarter_turns = 0;
  const auto& compiled = u.table->compiled;
  for (const auto& f : u.factors) {
    switch (f.kind) {
      case LcuFactor::Kind::Rotation: {
        if (f.angle == 0.0) break;
        apply_pauli(compiled[f.term], psi, scratch);
        const double c = std::cos(f.angle);
        const std::complex<double> is(0.0, std::sin(f.angle));
        psi = c * psi + is * scratch;
        break;
      }
      case LcuFactor::Kind::Pauli:
        apply_pauli(compiled[f.term], psi, scratch);
        psi.swap(scratch);
        break;
      case LcuFactor::Kind::Phase:
        quarter_turns += f.quarter_turns;
        break;
    }
  }
  if (quarter_turns % 4 != 0) psi *= quarter_turn_phase(quarter_turns);
}

std::complex<double> expectation(const StateVector& state, const LcuUnitary& u) {
  if (state.width() != u.width()) {
    throw ValidationError(fmt::format("state has {} qubits, unitary has {}",
                                      state.width(), u.width()));
  }
  Eigen::VectorXcd psi = state.amplitudes();
  Eigen::VectorXcd scratch;
  apply(u, psi, scratch);
  return state.amplitudes().dot(psi);
}

std::complex<double> hadamard_sample(std::complex<double> e, Rng& rng) {
  const double re = uniform01(rng) < 0.5 * (1.0 + e.real()) ? 1.0 : -1.0;
  const double im = uniform01(rng) < 0.5 * (1.0 + e.imag()) ? 1.0 : -1.0;
  return {re, im};
}

std::complex<double> hadamard_sample(const StateVector& state,
                                     const LcuUnitary& u, Rng& rng) {
  return hadamard_sample(expectation(state, u), rng);
}

SpectralData exact_spectrum(const Hamiltonian& h, const StateVector& state) {
  check_width(h.width());
  if (state.width() != h.width()) {
    throw ValidationError("state and Hamiltonian widths differ");
  }
  const auto sys = diagonalize(h);
  const Eigen::VectorXcd proj = sys.vectors.adjoint() * state.amplitudes();
  const double tol = 1e-9 * h.lambda();
  SpectralData out;
  for (Eigen::Index k = 0; k < sys.values.size(); ++k) {
    const double w = std::norm(proj[k]);
    if (!out.eigenvalues.empty() &&
        sys.values[k] - out.eigenvalues.back() <= tol) {
      out.overlaps.back() += w;
    } else {
      out.eigenvalues.push_back(sys.values[k]);
      out.overlaps.push_back(w);
    }
  }
  return out;
}

double exact_cdf(const SpectralData& spec, double tau, double x) {
  detail::require(tau > 0.0, "tau must be positive");
  double emax = 0.0;
  for (double e : spec.eigenvalues) emax = std::max(emax, std::abs(e));
  if (tau * emax >= std::numbers::pi / 2) {
    throw ValidationError("tau * max|E| must stay below pi/2");
  }
  double c = 0.0;
  for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k) {
    if (tau * spec.eigenvalues[k] <= x) c += spec.overlaps[k];
  }
  return std::min(c, 1.0);
}

}  // namespace rspe
