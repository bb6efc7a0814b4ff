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

#include "rspe/lcu.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "rspe/error.hpp"
#include "rspe/specfun.hpp"

namespace rspe {

namespace {

// Segment weight a_n = |x|^n/n! * sqrt(1 + (x/(n+1))^2) for even n.
struct SegmentTerm {
  double weight;
  double theta;
};

SegmentTerm segment_term(double x, int n, double power_over_factorial) {
  const double ratio = x / (n + 1);
  const double norm = std::sqrt(1.0 + ratio * ratio);
  return {power_over_factorial * norm, std::acos(1.0 / norm)};
}

// Value of |x|^n/n! for the next even order.
double advance(double x, int n, double current) {
  return current * x * x / ((n + 1.0) * (n + 2.0));
}

// sum_{even n > M} a_n, summed until the terms are negligible.
double segment_tail(double x, int M) {
  double pf = 1.0;
  for (int n = 0; n < M + 2; n += 2) pf = advance(x, n, pf);
  double tail = 0.0;
  for (int n = M + 2;; n += 2) {
    const double term = segment_term(x, n, pf).weight;
    tail += term;
    if (n > 2.0 * std::abs(x) + 4 && term <= 1e-18 * tail) break;
    if (pf == 0.0) break;
    pf = advance(x, n, pf);
  }
  return tail;
}

// mu_segment - 1 for the truncated (or, with M < 0, the full) series.
double segment_excess(double x, int M) {
  const double x2 = x * x;
  double excess = x2 / (1.0 + std::sqrt(1.0 + x2));
  if (M == 0) return excess;
  double pf = 1.0;
  for (int n = 2; M < 0 || n <= M; n += 2) {
    pf = advance(x, n - 2, pf);
    const double term = segment_term(x, n, pf).weight;
    excess += term;
    if (M < 0 && n > 2.0 * std::abs(x) + 4 && term <= 1e-18 * (1.0 + excess)) {
      break;
    }
    if (pf == 0.0) break;
  }
  return excess;
}

void check_segment_args(std::int64_t r, int M) {
  if (r < 1) throw ValidationError(fmt::format("r must be >= 1, got {}", r));
  if (M < 0 || M % 2 != 0) {
    throw ValidationError(
        fmt::format("truncation order must be even and >= 0, got {}", M));
  }
}

}  // namespace

CompiledPauli compile(const SignedPauli& op) {
  return {op.pauli.x_mask(), op.pauli.z_mask(),
          static_cast<int>((op.pauli.y_count() + (op.sign < 0 ? 2 : 0)) % 4)};
}

PauliTable::PauliTable(std::vector<SignedPauli> list) : ops(std::move(list)) {
  detail::require(!ops.empty(), "Pauli table is empty");
  width = ops.front().width();
  for (const auto& op : ops) {
    detail::require(op.width() == width, "Pauli table widths differ");
  }
  if (width <= 64) {
    compiled.reserve(ops.size());
    for (const auto& op : ops) compiled.push_back(compile(op));
  }
}

PauliDistribution::PauliDistribution(const Hamiltonian& h) {
  std::vector<SignedPauli> ops;
  ops.reserve(h.terms().size());
  for (const auto& [p, op] : normalized_distribution(h)) {
    probs_.push_back(p);
    ops.push_back(op);
  }
  table_ = std::make_shared<const PauliTable>(std::move(ops));
  cumulative_.resize(probs_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    acc += probs_[i];
    cumulative_[i] = acc;
  }
}

std::size_t PauliDistribution::sample(double u) const {
  const double target = u * cumulative_.back();
  const auto it =
      std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
  return std::min<std::size_t>(it - cumulative_.begin(), probs_.size() - 1);
}

std::size_t SegmentDistribution::sample(double u) const {
  const double target = u * cumulative.back();
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
  return std::min<std::size_t>(it - cumulative.begin(), probs.size() - 1);
}

SegmentDistribution segment_distribution(double t, std::int64_t r, int M) {
  check_segment_args(r, M);
  SegmentDistribution seg;
  seg.x = t / static_cast<double>(r);
  seg.M = M;
  const std::size_t count = static_cast<std::size_t>(M / 2) + 1;
  seg.probs.resize(count);
  seg.thetas.resize(count);
  double pf = 1.0;
  double total = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const int n = 2 * static_cast<int>(i);
    if (i > 0) pf = advance(seg.x, n - 2, pf);
    const auto term = segment_term(seg.x, n, pf);
    seg.probs[i] = term.weight;
    seg.thetas[i] = term.theta;
    total += term.weight;
  }
  seg.cumulative.resize(count);
  double acc = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    seg.probs[i] /= total;
    acc += seg.probs[i];
    seg.cumulative[i] = acc;
  }
  seg.mu_segment_minus_one = segment_excess(seg.x, M);
  seg.mu_segment = 1.0 + seg.mu_segment_minus_one;
  return seg;
}

int truncation_order(double gamma, double weight_A, double cgate) {
  if (!(gamma > 0.0) || !(weight_A > 0.0) || !(cgate > 0.0)) {
    throw ValidationError(
        "truncation_order needs positive gamma, weight and gate count");
  }
  const double g = 2.0 * gamma / (weight_A * cgate);
  if (g >= 1.0) return 0;
  const double L = std::log(1.0 / g);
  const double bound = L / lambert_w0(L / std::numbers::e);
  auto M = static_cast<int>(std::ceil(bound));
  if (M % 2 != 0) ++M;
  return M;
}

LcuUnitary sample_unitary(const PauliDistribution& dist,
                          const SegmentDistribution& segment, double t,
                          std::int64_t r, Rng& rng) {
  detail::require(r >= 1, "r must be >= 1");
  LcuUnitary u;
  u.table = dist.table();
  u.rotation_count = r;
  u.factors.reserve(static_cast<std::size_t>(r));
  const double sign = t < 0 ? -1.0 : 1.0;
  for (std::int64_t seg = 0; seg < r; ++seg) {
    const std::size_t index = segment.sample(uniform01(rng));
    const int n = segment.order(index);
    LcuFactor rot;
    rot.kind = LcuFactor::Kind::Rotation;
    rot.angle = sign * segment.thetas[index];
    rot.term = static_cast<std::uint32_t>(dist.sample(uniform01(rng)));
    u.factors.push_back(rot);
    for (int k = 0; k < n; ++k) {
      LcuFactor pauli;
      pauli.kind = LcuFactor::Kind::Pauli;
      pauli.term = static_cast<std::uint32_t>(dist.sample(uniform01(rng)));
      u.factors.push_back(pauli);
    }
    if (n % 4 != 0) {
      LcuFactor phase;
      phase.kind = LcuFactor::Kind::Phase;
      phase.quarter_turns = n % 4;
      u.factors.push_back(phase);
    }
  }
  return u;
}

LcuUnitary sample_unitary(const PauliDistribution& dist, double t,
                          std::int64_t r, int M, Rng& rng) {
  return sample_unitary(dist, segment_distribution(t, r, M), t, r, rng);
}

double weight_mu(double t, std::int64_t r, int M) {
  check_segment_args(r, M);
  const double x = t / static_cast<double>(r);
  return std::exp(static_cast<double>(r) * std::log1p(segment_excess(x, M)));
}

double weight_mu_full(double t, std::int64_t r) {
  check_segment_args(r, 0);
  const double x = t / static_cast<double>(r);
  return std::exp(static_cast<double>(r) * std::log1p(segment_excess(x, -1)));
}

double truncation_bias_bound(double t, std::int64_t r, int M) {
  check_segment_args(r, M);
  const double x = t / static_cast<double>(r);
  const double full = std::log1p(segment_excess(x, -1));
  return static_cast<double>(r) *
         std::exp(static_cast<double>(r - 1) * full) * segment_tail(x, M);
}

std::string serialize(const LcuUnitary& u) {
  std::string out;
  for (const auto& f : u.factors) {
    switch (f.kind) {
      case LcuFactor::Kind::Rotation:
        out += fmt::format("ROT {:+.17g} {}\n", f.angle,
                           u.table->ops[f.term].str());
        break;
      case LcuFactor::Kind::Pauli:
        out += fmt::format("PAULI {}\n", u.table->ops[f.term].str());
        break;
      case LcuFactor::Kind::Phase:
        out += fmt::format("PHASE {}\n", f.quarter_turns);
        break;
    }
  }
  return out;
}

namespace {

struct UnitaryBuilder {
  std::vector<SignedPauli> ops;
  std::map<SignedPauli, std::uint32_t> index;
  std::vector<LcuFactor> factors;
  std::int64_t rotations = 0;

  std::uint32_t intern(std::string_view text) {
    auto op = SignedPauli::parse(text);
    auto [it, inserted] =
        index.try_emplace(op, static_cast<std::uint32_t>(ops.size()));
    if (inserted) ops.push_back(std::move(op));
    return it->second;
  }

  void add_line(const std::string& raw, std::size_t line_number) {
    std::string_view view(raw);
    if (auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    std::istringstream in{std::string(view)};
    std::string keyword;
    if (!(in >> keyword)) return;
    auto fail = [&] {
      throw ValidationError(
          fmt::format("line {}: malformed factor '{}'", line_number, raw));
    };
    LcuFactor f;
    if (keyword == "ROT") {
      std::string angle;
      std::string op;
      if (!(in >> angle >> op)) fail();
      f.kind = LcuFactor::Kind::Rotation;
      try {
        f.angle = std::stod(angle);
      } catch (const std::exception&) {
        fail();
      }
      f.term = intern(op);
      ++rotations;
    } else if (keyword == "PAULI") {
      std::string op;
      if (!(in >> op)) fail();
      f.kind = LcuFactor::Kind::Pauli;
      f.term = intern(op);
    } else if (keyword == "PHASE") {
      int q = 0;
      if (!(in >> q)) fail();
      f.kind = LcuFactor::Kind::Phase;
      f.quarter_turns = ((q % 4) + 4) % 4;
    } else {
      fail();
    }
    std::string extra;
    if (in >> extra) fail();
    factors.push_back(f);
  }

  LcuUnitary finish(std::size_t fallback_width) {
    LcuUnitary u;
    if (ops.empty()) ops.push_back(SignedPauli(PauliString::identity(
        std::max<std::size_t>(fallback_width, 1))));
    u.table = std::make_shared<const PauliTable>(std::move(ops));
    u.factors = std::move(factors);
    u.rotation_count = rotations;
    *this = UnitaryBuilder{};
    return u;
  }
};

}  // namespace

LcuUnitary parse_unitary(std::istream& in) {
  UnitaryBuilder builder;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) builder.add_line(line, ++line_number);
  return builder.finish(1);
}

std::vector<LcuUnitary> parse_unitary_stream(std::istream& in) {
  std::vector<LcuUnitary> out;
  UnitaryBuilder builder;
  bool open = false;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.rfind("UNITARY", 0) == 0) {
      if (open) out.push_back(builder.finish(1));
      open = true;
      continue;
    }
    if (!open) {
      std::istringstream probe(line.substr(0, line.find('#')));
      std::string token;
      if (probe >> token) {
        throw ValidationError(fmt::format(
            "line {}: factor before the first UNITARY line", line_number));
      }
      continue;
    }
    builder.add_line(line, line_number);
  }
  if (open) out.push_back(builder.finish(1));
  return out;
}

Eigen::MatrixXcd to_matrix(const LcuUnitary& u, std::size_t width_cap) {
  const std::size_t width = u.width();
  if (width > width_cap) {
    throw ValidationError(fmt::format(
        "width {} exceeds the dense-matrix cap of {} qubits", width, width_cap));
  }
  const Eigen::Index dim = Eigen::Index{1} << width;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim);
  std::vector<Eigen::MatrixXcd> cache(u.table->ops.size());
  auto pauli_matrix = [&](std::uint32_t term) -> const Eigen::MatrixXcd& {
    if (cache[term].size() == 0) cache[term] = to_matrix(u.table->ops[term]);
    return cache[term];
  };
  const std::complex<double> i(0.0, 1.0);
  for (const auto& f : u.factors) {
    switch (f.kind) {
      case LcuFactor::Kind::Rotation:
        m = (std::cos(f.angle) * Eigen::MatrixXcd::Identity(dim, dim) +
             i * std::sin(f.angle) * pauli_matrix(f.term)) *
            m;
        break;
      case LcuFactor::Kind::Pauli:
        m = pauli_matrix(f.term) * m;
        break;
      case LcuFactor::Kind::Phase:
        m *= quarter_turn_phase(f.quarter_turns);
        break;
    }
  }
  return m;
}

}  // namespace rspe
