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

#include "rspe/pauli.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "rspe/error.hpp"

namespace rspe {

namespace {

// kProductTable[a][b] = (quarter turns, letter) such that a*b = i^q * letter.
struct SingleProduct {
  int quarter_turns;
  Pauli letter;
};

constexpr SingleProduct kProductTable[4][4] = {
    // I*
    {{0, Pauli::I}, {0, Pauli::X}, {0, Pauli::Y}, {0, Pauli::Z}},
    // X*
    {{0, Pauli::X}, {0, Pauli::I}, {1, Pauli::Z}, {3, Pauli::Y}},
    // Y*
    {{0, Pauli::Y}, {3, Pauli::Z}, {0, Pauli::I}, {1, Pauli::X}},
    // Z*
    {{0, Pauli::Z}, {1, Pauli::Y}, {3, Pauli::X}, {0, Pauli::I}},
};

Pauli letter_from_char(char c) {
  switch (c) {
    case 'I':
    case 'i':
      return Pauli::I;
    case 'X':
    case 'x':
      return Pauli::X;
    case 'Y':
    case 'y':
      return Pauli::Y;
    case 'Z':
    case 'z':
      return Pauli::Z;
    default:
      throw ValidationError(fmt::format("invalid Pauli letter '{}'", c));
  }
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

void check_dense_width(std::size_t width, std::size_t cap) {
  if (width > cap) {
    throw ValidationError(fmt::format(
        "width {} exceeds the dense-matrix cap of {} qubits", width, cap));
  }
}

}  // namespace

char to_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

PauliString::PauliString(std::vector<Pauli> axes) : axes_(std::move(axes)) {
  detail::require(!axes_.empty(), "Pauli string must act on at least 1 qubit");
}

PauliString PauliString::from_word(std::string_view word) {
  std::vector<Pauli> axes;
  axes.reserve(word.size());
  for (char c : word) axes.push_back(letter_from_char(c));
  return PauliString(std::move(axes));
}

PauliString PauliString::identity(std::size_t width) {
  return PauliString(std::vector<Pauli>(width, Pauli::I));
}

std::string PauliString::word() const {
  std::string out;
  out.reserve(axes_.size());
  for (Pauli p : axes_) out.push_back(to_char(p));
  return out;
}

std::uint64_t PauliString::x_mask() const {
  detail::require(width() <= 64, "bit masks need width <= 64");
  std::uint64_t mask = 0;
  for (std::size_t q = 0; q < axes_.size(); ++q) {
    if (axes_[q] == Pauli::X || axes_[q] == Pauli::Y) mask |= 1ULL << q;
  }
  return mask;
}

std::uint64_t PauliString::z_mask() const {
  detail::require(width() <= 64, "bit masks need width <= 64");
  std::uint64_t mask = 0;
  for (std::size_t q = 0; q < axes_.size(); ++q) {
    if (axes_[q] == Pauli::Z || axes_[q] == Pauli::Y) mask |= 1ULL << q;
  }
  return mask;
}

std::size_t PauliString::y_count() const {
  return static_cast<std::size_t>(
      std::count(axes_.begin(), axes_.end(), Pauli::Y));
}

bool PauliString::is_identity() const {
  return std::all_of(axes_.begin(), axes_.end(),
                     [](Pauli p) { return p == Pauli::I; });
}

SignedPauli::SignedPauli(PauliString p, int s) : pauli(std::move(p)), sign(s) {
  detail::require(s == 1 || s == -1, "Pauli sign must be +1 or -1");
}

std::string SignedPauli::str() const {
  return sign < 0 ? "-" + pauli.word() : pauli.word();
}

SignedPauli SignedPauli::parse(std::string_view text) {
  text = trim(text);
  int sign = 1;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    sign = text.front() == '-' ? -1 : 1;
    text.remove_prefix(1);
  }
  return SignedPauli(PauliString::from_word(text), sign);
}

std::complex<double> quarter_turn_phase(int q) {
  switch (((q % 4) + 4) % 4) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, 1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, -1.0};
  }
}

std::complex<double> PauliProduct::phase() const {
  return quarter_turn_phase(quarter_turns);
}

PauliProduct pauli_multiply(const SignedPauli& a, const SignedPauli& b) {
  if (a.width() != b.width()) {
    throw ValidationError(fmt::format("Pauli width mismatch: {} vs {}",
                                      a.width(), b.width()));
  }
  int quarter_turns = 0;
  if (a.sign < 0) quarter_turns += 2;
  if (b.sign < 0) quarter_turns += 2;
  std::vector<Pauli> axes(a.width());
  for (std::size_t q = 0; q < a.width(); ++q) {
    const auto& entry = kProductTable[static_cast<int>(a.pauli[q])]
                                     [static_cast<int>(b.pauli[q])];
    quarter_turns += entry.quarter_turns;
    axes[q] = entry.letter;
  }
  return PauliProduct{quarter_turns % 4, PauliString(std::move(axes))};
}

Hamiltonian::Hamiltonian(std::vector<HamiltonianTerm> terms) {
  detail::require(!terms.empty(), "Hamiltonian has no terms");
  width_ = terms.front().op.width();
  std::map<SignedPauli, std::size_t> position;
  for (auto& term : terms) {
    if (term.op.width() != width_) {
      throw ValidationError(fmt::format(
          "inconsistent width: term {} has {} qubits, expected {}",
          term.op.str(), term.op.width(), width_));
    }
    if (!(term.weight > 0.0) || !std::isfinite(term.weight)) {
      throw ValidationError(fmt::format(
          "term {} has non-positive weight {}", term.op.str(), term.weight));
    }
    auto [it, inserted] = position.try_emplace(term.op, terms_.size());
    if (inserted) {
      terms_.push_back(std::move(term));
    } else {
      terms_[it->second].weight += term.weight;
    }
  }
  for (const auto& term : terms_) lambda_ += term.weight;
}

Hamiltonian Hamiltonian::from_coefficients(
    const std::vector<std::pair<double, PauliString>>& coefficients) {
  std::vector<HamiltonianTerm> terms;
  terms.reserve(coefficients.size());
  for (const auto& [c, p] : coefficients) {
    detail::require(c != 0.0, "zero coefficient for " + p.word());
    terms.push_back({std::abs(c), SignedPauli(p, c < 0 ? -1 : 1)});
  }
  return Hamiltonian(std::move(terms));
}

Hamiltonian parse_hamiltonian(std::istream& in) {
  std::vector<std::pair<double, PauliString>> coefficients;
  std::string line;
  std::size_t line_number = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view view(line);
    if (auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;

    const auto split = view.find_first_of(" \t");
    if (split == std::string_view::npos) {
      throw ValidationError(fmt::format(
          "line {}: expected '<coefficient> <pauli word>'", line_number));
    }
    const std::string coefficient_text(view.substr(0, split));
    const std::string_view word = trim(view.substr(split));
    double coefficient = 0.0;
    std::size_t consumed = 0;
    try {
      coefficient = std::stod(coefficient_text, &consumed);
    } catch (const std::exception&) {
      consumed = 0;
    }
    if (consumed != coefficient_text.size() || !std::isfinite(coefficient)) {
      throw ValidationError(fmt::format("line {}: malformed coefficient '{}'",
                                        line_number, coefficient_text));
    }
    if (word.find_first_of(" \t") != std::string_view::npos) {
      throw ValidationError(
          fmt::format("line {}: trailing tokens after Pauli word", line_number));
    }
    if (coefficient == 0.0) {
      throw ValidationError(
          fmt::format("line {}: zero coefficient", line_number));
    }
    PauliString pauli = [&] {
      try {
        return PauliString::from_word(word);
      } catch (const ValidationError& e) {
        throw ValidationError(fmt::format("line {}: {}", line_number, e.what()));
      }
    }();
    if (width == 0) {
      width = pauli.width();
    } else if (pauli.width() != width) {
      throw ValidationError(fmt::format(
          "line {}: inconsistent width {} (expected {})", line_number,
          pauli.width(), width));
    }
    coefficients.emplace_back(coefficient, std::move(pauli));
  }
  if (coefficients.empty()) throw ValidationError("Hamiltonian file is empty");
  return Hamiltonian::from_coefficients(coefficients);
}

Hamiltonian parse_hamiltonian(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_hamiltonian(in);
}

Hamiltonian load_hamiltonian(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open Hamiltonian file: " + path);
  return parse_hamiltonian(in);
}

std::string serialize(const Hamiltonian& h) {
  std::string out;
  for (const auto& term : h.terms()) {
    out += fmt::format("{} {}\n", term.op.sign * term.weight,
                       term.op.pauli.word());
  }
  return out;
}

std::vector<WeightedPauli> normalized_distribution(const Hamiltonian& h) {
  std::vector<WeightedPauli> out;
  out.reserve(h.terms().size());
  for (const auto& term : h.terms()) {
    out.push_back({term.weight / h.lambda(), term.op});
  }
  return out;
}

namespace {

void add_pauli(Eigen::MatrixXcd& m, const SignedPauli& op,
               std::complex<double> scale) {
  const std::uint64_t x = op.pauli.x_mask();
  const std::uint64_t z = op.pauli.z_mask();
  const std::complex<double> base =
      scale * quarter_turn_phase(static_cast<int>(op.pauli.y_count())) *
      static_cast<double>(op.sign);
  const auto dim = static_cast<std::uint64_t>(m.rows());
  for (std::uint64_t b = 0; b < dim; ++b) {
    const double parity = (std::popcount(b & z) & 1) ? -1.0 : 1.0;
    m(static_cast<Eigen::Index>(b ^ x), static_cast<Eigen::Index>(b)) +=
        base * parity;
  }
}

}  // namespace

Eigen::MatrixXcd to_matrix(const SignedPauli& op, std::size_t width_cap) {
  check_dense_width(op.width(), width_cap);
  const Eigen::Index dim = Eigen::Index{1} << op.width();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  add_pauli(m, op, 1.0);
  return m;
}

Eigen::MatrixXcd to_matrix(const Hamiltonian& h, std::size_t width_cap) {
  check_dense_width(h.width(), width_cap);
  const Eigen::Index dim = Eigen::Index{1} << h.width();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& term : h.terms()) add_pauli(m, term.op, term.weight);
  return m;
}

}  // namespace rspe
