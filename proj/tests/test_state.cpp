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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "rspe/error.hpp"
#include "rspe/lcu.hpp"
#include "rspe/state.hpp"

namespace rspe {
namespace {

LcuUnitary unitary_from_text(const std::string& text) {
  std::istringstream in(text);
  return parse_unitary(in);
}

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path;
}

double ground_overlap(const Hamiltonian& h, const StateVector& s) {
  const auto spec = exact_spectrum(h, s);
  return spec.overlaps.front();
}

TEST(PrepareState, Basis) {
  const auto s = prepare_state("basis:0");
  EXPECT_EQ(s.width(), 1U);
  EXPECT_EQ(s.amplitudes()[0], oracle::cplx(1.0));
  EXPECT_EQ(s.amplitudes()[1], oracle::cplx(0.0));
  // Character q is qubit q, the bit of weight 2^q.
  const auto t = prepare_state("basis:011");
  EXPECT_EQ(t.amplitudes()[6], oracle::cplx(1.0));
  EXPECT_THROW(prepare_state("basis:012"), ValidationError);
  const auto h = parse_hamiltonian("1 ZZ");
  EXPECT_THROW(prepare_state("basis:0", &h), ValidationError);
}

TEST(PrepareState, AmplitudeFile) {
  const auto path = write_temp("rspe_state_test.amp", "# comment\n1 0\n0 1\n\n0 0\n1 1\n");
  const auto s = prepare_state("file:" + path.string());
  EXPECT_EQ(s.width(), 2U);
  EXPECT_NEAR(std::abs(s.amplitudes()[1] - oracle::cplx(0, 0.5)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s.amplitudes()[3] - oracle::cplx(0.5, 0.5)), 0.0, 1e-15);
  EXPECT_NEAR(s.amplitudes().norm(), 1.0, 1e-15);
  const auto odd = write_temp("rspe_state_odd.amp", "1 0\n0 1\n1 0\n");
  EXPECT_THROW(prepare_state("file:" + odd.string()), ValidationError);
  const auto zero = write_temp("rspe_state_zero.amp", "0 0\n0 0\n");
  EXPECT_THROW(prepare_state("file:" + zero.string()), ValidationError);
  const auto bad = write_temp("rspe_state_bad.amp", "1 0 7\n0 0\n");
  EXPECT_THROW(prepare_state("file:" + bad.string()), ValidationError);
  EXPECT_THROW(prepare_state("file:/nonexistent/rspe.amp"), ValidationError);
  std::filesystem::remove(path);
  std::filesystem::remove(odd);
  std::filesystem::remove(zero);
  std::filesystem::remove(bad);
}

TEST(PrepareState, GroundMix) {
  const auto z = parse_hamiltonian("1 Z");
  const auto g = prepare_state("groundmix:1.0", &z);
  EXPECT_NEAR(std::abs(g.amplitudes()[1]), 1.0, 1e-12);
  const auto half = prepare_state("groundmix:0.5", &z);
  EXPECT_NEAR(std::norm(half.amplitudes()[1]), 0.5, 1e-10);

  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 5; ++trial) {
    const auto h = oracle::random_hamiltonian(rng, 4, 8);
    for (double eta : {0.1, 0.6, 0.95}) {
      const auto s = prepare_state("groundmix:" + std::to_string(eta) + ":7", &h);
      EXPECT_NEAR(ground_overlap(h, s), eta, 1e-10);
      const auto again = prepare_state("groundmix:" + std::to_string(eta) + ":7", &h);
      EXPECT_EQ(s.amplitudes(), again.amplitudes());
    }
  }
  EXPECT_THROW(prepare_state("groundmix:0.5"), ValidationError);
  EXPECT_THROW(prepare_state("groundmix:0", &z), ValidationError);
  EXPECT_THROW(prepare_state("groundmix:1.5", &z), ValidationError);
  EXPECT_THROW(prepare_state("mystery:1"), ValidationError);
}

TEST(Expectation, SimpleCases) {
  const auto s = prepare_state("basis:0");
  EXPECT_NEAR(std::abs(expectation(s, unitary_from_text("PAULI X\n"))), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(expectation(s, unitary_from_text("PHASE 0\n")) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(expectation(s, unitary_from_text("PHASE 1\n")) - oracle::cplx(0, 1)), 0.0,
              1e-15);
  const auto one = prepare_state("basis:1");
  const auto rot = unitary_from_text("ROT 0.3 Z\n");
  EXPECT_NEAR(std::abs(expectation(one, rot) - std::exp(oracle::cplx(0, -0.3))), 0.0, 1e-15);
  EXPECT_THROW(expectation(prepare_state("basis:00"), rot), ValidationError);
}

TEST(Expectation, MatchesDenseMatrices) {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = oracle::random_hamiltonian(rng, 3, 6);
    const PauliDistribution dist(h);
    const auto u = sample_unitary(dist, 3.0, 5, 8, rng);
    Eigen::VectorXcd v(8);
    for (auto& a : v) a = {normal(rng), normal(rng)};
    v.normalize();
    const StateVector s(3, v);
    const auto e = expectation(s, u);
    const auto want = v.dot(to_matrix(u) * v);
    EXPECT_LT(std::abs(e - want), 1e-10);
    EXPECT_LE(std::abs(e), 1.0 + 1e-10);
  }
}

TEST(Expectation, AgreesWithKroneckerOracle) {
  const auto u = unitary_from_text("ROT -0.7 XY\nPAULI -ZX\nROT 1.1 YI\nPHASE 3\n");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(4, 4);
  auto rot = [](double a, const std::string& w) {
    return (std::cos(a) * Eigen::MatrixXcd::Identity(4, 4) +
            oracle::cplx(0, std::sin(a)) * oracle::kron_word(w))
        .eval();
  };
  m = rot(-0.7, "XY") * m;
  m = (-oracle::kron_word("ZX")) * m;
  m = rot(1.1, "YI") * m;
  m = oracle::cplx(0, -1) * m;
  EXPECT_LT((to_matrix(u) - m).norm(), 1e-14);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> normal;
  Eigen::VectorXcd v(4);
  for (auto& a : v) a = {normal(rng), normal(rng)};
  v.normalize();
  EXPECT_LT(std::abs(expectation(StateVector(2, v), u) - v.dot(m * v)), 1e-14);
}

TEST(HadamardSample, Outcomes) {
  Rng rng(1);
  const auto s = prepare_state("basis:0");
  const auto id = unitary_from_text("PHASE 0\n");
  int re_plus = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const auto m = hadamard_sample(s, id, rng);
    EXPECT_EQ(m.real(), 1.0);
    EXPECT_TRUE(m.imag() == 1.0 || m.imag() == -1.0);
    EXPECT_DOUBLE_EQ(std::norm(m), 2.0);
  }
  const auto x = unitary_from_text("PAULI X\n");
  for (int i = 0; i < n; ++i) re_plus += hadamard_sample(s, x, rng).real() > 0 ? 1 : 0;
  EXPECT_NEAR(re_plus / static_cast<double>(n), 0.5, 4 * 0.5 / std::sqrt(n));
}

TEST(HadamardSample, MeanMatchesExpectation) {
  std::mt19937_64 gen(3);
  const auto h = oracle::random_hamiltonian(gen, 3, 5);
  const auto s = prepare_state("groundmix:0.4:2", &h);
  Rng rng(8);
  const auto u = sample_unitary(PauliDistribution(h), -2.0, 4, 6, rng);
  const auto e = expectation(s, u);
  const int n = 100000;
  oracle::cplx sum = 0.0;
  for (int i = 0; i < n; ++i) sum += hadamard_sample(s, u, rng);
  const oracle::cplx mean = sum / static_cast<double>(n);
  EXPECT_LE(std::abs(mean.real() - e.real()), 4 * std::sqrt((1 - e.real() * e.real()) / n));
  EXPECT_LE(std::abs(mean.imag() - e.imag()), 4 * std::sqrt((1 - e.imag() * e.imag()) / n));
}

TEST(ExactSpectrum, SmallCases) {
  const auto z = exact_spectrum(parse_hamiltonian("1 Z"), prepare_state("basis:0"));
  ASSERT_EQ(z.eigenvalues.size(), 2U);
  EXPECT_NEAR(z.eigenvalues[0], -1.0, 1e-15);
  EXPECT_NEAR(z.eigenvalues[1], 1.0, 1e-15);
  EXPECT_NEAR(z.overlaps[0], 0.0, 1e-15);
  EXPECT_NEAR(z.overlaps[1], 1.0, 1e-15);
  const auto x = exact_spectrum(parse_hamiltonian("1 X"), prepare_state("basis:0"));
  EXPECT_NEAR(x.overlaps[0], 0.5, 1e-14);
  EXPECT_NEAR(x.overlaps[1], 0.5, 1e-14);
  const auto degenerate = exact_spectrum(parse_hamiltonian("1 ZI\n1 IZ\n"), prepare_state("basis:10"));
  ASSERT_EQ(degenerate.eigenvalues.size(), 3U);
  EXPECT_NEAR(degenerate.eigenvalues[1], 0.0, 1e-14);
  EXPECT_NEAR(degenerate.overlaps[1], 1.0, 1e-14);
}

TEST(ExactSpectrum, RandomInstancesAgreeWithOracle) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const auto h = oracle::random_hamiltonian(rng, 4, 8);
    const auto s = prepare_state("groundmix:0.3:1", &h);
    const auto spec = exact_spectrum(h, s);
    const Eigen::MatrixXcd m = oracle::kron_hamiltonian(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    for (Eigen::Index k = 0; k < 16; ++k) {
      const double residual =
          (m * es.eigenvectors().col(k) - es.eigenvalues()[k] * es.eigenvectors().col(k)).norm();
      EXPECT_LE(residual, 1e-9 * h.lambda());
    }
    double total = 0.0;
    for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k) {
      total += spec.overlaps[k];
      EXPECT_LE(std::abs(spec.eigenvalues[k]), h.lambda());
      if (k > 0) {
        EXPECT_GT(spec.eigenvalues[k], spec.eigenvalues[k - 1]);
      }
    }
    EXPECT_NEAR(total, 1.0, 1e-10);
    const auto dense = oracle::dense_spectrum(m, s.amplitudes());
    const double tau = 0.5 / h.lambda();
    for (int i = -50; i <= 50; ++i) {
      const double x = 0.6 * i / 50.0 + 1e-7;
      EXPECT_NEAR(exact_cdf(spec, tau, x), oracle::step_cdf(dense, tau, x), 1e-10);
    }
  }
}

TEST(ExactCdf, StepsAndRange) {
  const auto spec = exact_spectrum(parse_hamiltonian("1 Z"), prepare_state("basis:0"));
  EXPECT_EQ(exact_cdf(spec, 1.0, 0.5), 0.0);
  EXPECT_EQ(exact_cdf(spec, 1.0, 1.0), 1.0);
  EXPECT_EQ(exact_cdf(spec, 1.0, -1.2), 0.0);
  EXPECT_THROW(exact_cdf(spec, 1.6, 0.0), ValidationError);
  EXPECT_THROW(exact_cdf(spec, 0.0, 0.0), ValidationError);

  std::mt19937_64 rng(6);
  const auto h = oracle::random_hamiltonian(rng, 3, 6);
  const auto mixed = exact_spectrum(h, prepare_state("groundmix:0.5:3", &h));
  const double tau = 1.0 / h.lambda();
  double previous = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double x = -1.1 + 2.2 * i / 400.0;
    const double c = exact_cdf(mixed, tau, x);
    EXPECT_GE(c, previous);
    EXPECT_LE(c, 1.0);
    previous = c;
  }
  EXPECT_EQ(exact_cdf(mixed, tau, tau * mixed.eigenvalues.front() - 1e-12), 0.0);
  EXPECT_NEAR(exact_cdf(mixed, tau, tau * mixed.eigenvalues.back()), 1.0, 1e-12);
}

}  // namespace
}  // namespace rspe
