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

#include "rspe/estimator.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <numbers>
#include <thread>

#include "rspe/error.hpp"

namespace rspe {

namespace {

using Json = nlohmann::ordered_json;

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void validate_request(const Hamiltonian& h, const PlanRequest& r) {
  if (!(r.b >= 1.0)) throw ValidationError(fmt::format("b must be >= 1, got {}", r.b));
  if (!(r.Delta > 0.0) || !(r.Delta <= 2.0 * h.lambda() / r.b)) {
    throw ValidationError(fmt::format(
        "Delta must lie in (0, 2 lambda / b] = (0, {}], got {}",
        2.0 * h.lambda() / r.b, r.Delta));
  }
  if (!(r.eta > 0.0) || !(r.eta <= 1.0)) {
    throw ValidationError(fmt::format("eta must lie in (0, 1], got {}", r.eta));
  }
  if (!(r.eps > 0.0) || !(r.eps < r.eta / 2)) {
    throw ValidationError(fmt::format(
        "eps must lie in (0, eta/2) = (0, {}), got {}", r.eta / 2, r.eps));
  }
  if (!(r.theta > 0.0) || !(r.theta < 1.0)) {
    throw ValidationError(fmt::format("theta must lie in (0, 1), got {}", r.theta));
  }
  if (!(r.delta_fraction > 0.0) || !(r.delta_fraction <= 1.0)) {
    throw ValidationError("delta fraction must lie in (0, 1]");
  }
}

RuntimeVector choose_runtime(const RuntimeProblem& problem,
                             const RuntimeChoice& choice) {
  switch (choice.mode) {
    case RuntimeMode::Constant:
      return constant_weight(problem);
    case RuntimeMode::Total:
      return minimize_total(problem).rounded;
    case RuntimeMode::Gated:
      return minimize_samples(problem, choice.g).rounded;
  }
  throw ValidationError("unknown runtime mode");
}

}  // namespace

RuntimeChoice RuntimeChoice::parse(const std::string& text) {
  if (text == "constant") return {RuntimeMode::Constant, 0.0};
  if (text == "total") return {RuntimeMode::Total, 0.0};
  const std::string prefix = "gated:";
  if (text.rfind(prefix, 0) == 0) {
    double g = 0.0;
    try {
      std::size_t used = 0;
      g = std::stod(text.substr(prefix.size()), &used);
      if (used != text.size() - prefix.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw ValidationError("malformed gate budget in '" + text + "'");
    }
    return {RuntimeMode::Gated, g};
  }
  throw ValidationError(
      "runtime mode must be constant, total or gated:<g>, got '" + text + "'");
}

std::string RuntimeChoice::str() const {
  switch (mode) {
    case RuntimeMode::Constant:
      return "constant";
    case RuntimeMode::Total:
      return "total";
    case RuntimeMode::Gated:
      return fmt::format("gated:{}", g);
  }
  return "?";
}

double rescale_tau(double lambda, double Delta, double b) {
  return std::numbers::pi / (2.0 * lambda / b + Delta);
}

Plan build_plan(const Hamiltonian& h, const PlanRequest& request) {
  validate_request(h, request);
  Plan plan;
  plan.lambda = h.lambda();
  plan.width = h.width();
  plan.Delta = request.Delta;
  plan.eta = request.eta;
  plan.eps = request.eps;
  plan.theta = request.theta;
  plan.b = request.b;
  plan.rmode = request.rmode;
  plan.tau = rescale_tau(plan.lambda, plan.Delta, plan.b);
  plan.delta = request.delta_fraction * plan.tau * plan.Delta;
  plan.params = optimize_split(plan.delta, plan.eps);
  plan.fourier = std::make_shared<const FourierSeries>(build_fourier(plan.params));
  plan.problem = make_problem(*plan.fourier, plan.tau * plan.lambda);
  plan.rvec = choose_runtime(plan.problem, plan.rmode);

  plan.bound_complexities = complexity_report(
      plan.problem, plan.rvec, plan.eta, plan.eps, plan.theta, false, 0);
  plan.gamma = 0.01 * (plan.eta / 2 - plan.eps);
  plan.M = request.M_override.value_or(truncation_order(
      plan.gamma, plan.bound_complexities.weight_A,
      plan.bound_complexities.c_gate));
  plan.complexities = complexity_report(plan.problem, plan.rvec, plan.eta,
                                        plan.eps, plan.theta, true, plan.M,
                                        plan.gamma);

  plan.dist = std::make_shared<const PauliDistribution>(h);
  plan.segments.reserve(plan.problem.size());
  plan.class_cumulative.reserve(plan.problem.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < plan.problem.size(); ++i) {
    plan.segments.push_back(
        segment_distribution(plan.problem.t[i], plan.rvec.r[i], plan.M));
    acc += plan.problem.weight[i] *
           weight_mu(plan.problem.t[i], plan.rvec.r[i], plan.M);
    plan.class_cumulative.push_back(acc);
  }
  return plan;
}

std::string Plan::json() const {
  Json j;
  j["lambda"] = lambda;
  j["width"] = width;
  j["Delta"] = Delta;
  j["tau"] = tau;
  j["delta"] = delta;
  j["eta"] = eta;
  j["eps"] = eps;
  j["theta"] = theta;
  j["b"] = b;
  j["rmode"] = rmode.str();
  j["fourier"] = {{"beta", params.beta},   {"d", params.d},
                  {"eps1", params.eps1},   {"eps2", params.eps2},
                  {"eps3", params.eps3},   {"t_int", params.t_int},
                  {"w_eps1", params.w_eps1}, {"weight", fourier->weight()},
                  {"error_bound", params.error_bound()}};
  j["M"] = M;
  j["gamma"] = gamma;
  j["weight_A"] = complexities.weight_A;
  j["weight_A_bound"] = bound_complexities.weight_A;
  j["c_sample"] = complexities.c_sample;
  j["c_gate"] = complexities.c_gate;
  j["c_total"] = complexities.c_total;
  j["margin"] = complexities.margin;
  Json entries = Json::array();
  for (std::size_t i = 0; i < problem.size(); ++i) {
    entries.push_back({{"j", problem.index[i]},
                       {"abs_F", 0.5 * problem.weight[i]},
                       {"t", problem.t[i]},
                       {"r", rvec.r[i]}});
  }
  j["runtime"] = std::move(entries);
  return j.dump(2);
}

std::uint64_t Plan::hash() const { return fnv1a(json()); }

std::string SampleSet::serialize() const {
  std::string out;
  for (const auto& r : records) {
    out += fmt::format("{} {} {}\n", r.j, r.m.real(), r.m.imag());
  }
  return out;
}

SampleSet collect_samples(const Plan& plan, const StateVector& state,
                          std::uint64_t seed, unsigned threads) {
  if (state.width() != plan.width) {
    throw ValidationError(fmt::format("state has {} qubits, plan expects {}",
                                      state.width(), plan.width));
  }
  const auto n = static_cast<std::size_t>(plan.complexities.c_sample);
  SampleSet out;
  out.weight_A = plan.complexities.weight_A;
  out.seed = seed;
  out.records.resize(n);

  auto work = [&](std::size_t begin, std::size_t end) {
    Eigen::VectorXcd psi;
    Eigen::VectorXcd scratch;
    for (std::size_t i = begin; i < end; ++i) {
      Rng rng = stream_for(seed, i);
      const double target = uniform01(rng) * plan.class_cumulative.back();
      const auto it = std::upper_bound(plan.class_cumulative.begin(),
                                       plan.class_cumulative.end(), target);
      const auto cls = std::min<std::size_t>(
          it - plan.class_cumulative.begin(), plan.problem.size() - 1);
      const std::int64_t k = plan.problem.index[cls];
      const std::int64_t j = uniform01(rng) < 0.5 ? k : -k;
      const double t = plan.time(j);
      const auto u = sample_unitary(*plan.dist, plan.segments[cls], t,
                                    plan.rvec.r[cls], rng);
      psi = state.amplitudes();
      apply(u, psi, scratch);
      const auto e = state.amplitudes().dot(psi);
      out.records[i] = {j, hadamard_sample(e, rng)};
    }
  };

  threads = std::max(1u, threads);
  if (threads == 1 || n < 2 * threads) {
    work(0, n);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      const std::size_t begin = std::min(n, w * chunk);
      const std::size_t end = std::min(n, begin + chunk);
      pool.emplace_back(work, begin, end);
    }
    for (auto& t : pool) t.join();
  }
  return out;
}

std::complex<double> acdf_estimate(const SampleSet& samples, double x) {
  if (samples.records.empty()) throw ValidationError("sample set is empty");
  std::complex<double> acc = 0.0;
  for (const auto& r : samples.records) {
    // arg F_j = -pi/2 for j > 0 and +pi/2 for j < 0.
    const double arg = (r.j > 0 ? -0.5 : 0.5) * std::numbers::pi +
                       static_cast<double>(r.j) * x;
    acc += std::polar(1.0, arg) * r.m;
  }
  return 0.5 + samples.weight_A * acc /
                   static_cast<double>(samples.records.size());
}

double acdf_exact(const Plan& plan, const SpectralData& spectrum, double x) {
  const auto& f = *plan.fourier;
  std::complex<double> total = f.coefficient(0);
  for (std::int64_t jj = 0; jj <= f.d(); ++jj) {
    for (std::int64_t j : {2 * jj + 1, -(2 * jj + 1)}) {
      const double t = plan.time(j);
      std::complex<double> trace = 0.0;
      for (std::size_t k = 0; k < spectrum.eigenvalues.size(); ++k) {
        trace += spectrum.overlaps[k] *
                 std::polar(1.0, t * spectrum.eigenvalues[k] / plan.lambda);
      }
      total += f.coefficient(j) * std::polar(1.0, static_cast<double>(j) * x) *
               trace;
    }
  }
  if (std::abs(total.imag()) > 1e-9) {
    throw NumericError(fmt::format(
        "approximate CDF has imaginary residue {} at x = {}", total.imag(), x));
  }
  return total.real();
}

double acdf_exact(const Plan& plan, const Hamiltonian& h,
                  const StateVector& state, double x) {
  return acdf_exact(plan, exact_spectrum(h, state), x);
}

int threshold_query(const SampleSet& samples, const Plan& plan, double x) {
  const double bound = plan.tau * plan.lambda;
  if (x < -bound - 1e-12 || x > bound + 1e-12) {
    throw ValidationError(fmt::format(
        "query point {} outside [-tau lambda, tau lambda] = [{}, {}]", x,
        -bound, bound));
  }
  return acdf_estimate(samples, x).real() < plan.eta / 2 ? 0 : 1;
}

std::int64_t planned_queries(double tau, double lambda, double delta) {
  return static_cast<std::int64_t>(
      std::ceil(std::log2((2.0 * tau * lambda + 4.0 * delta) / (2.0 * delta))));
}

std::string GroundEnergyResult::json() const {
  Json j;
  j["estimate"] = estimate;
  j["interval_lo"] = interval_lo;
  j["interval_hi"] = interval_hi;
  j["s_queries"] = s_queries;
  j["queries_made"] = queries_made;
  j["theta"] = theta;
  j["c_sample"] = c_sample;
  j["c_gate_expected"] = c_gate_expected;
  j["seed"] = seed;
  j["plan_hash"] = fmt::format("{:016x}", plan_hash);
  return j.dump(2);
}

GroundEnergyResult bisect_ground_energy(const Plan& plan,
                                        const SampleSet& samples) {
  GroundEnergyResult out;
  const double bound = plan.tau * plan.lambda;
  const double delta = plan.delta;
  double lo = -bound - 2.0 * delta;
  double hi = bound;
  while (hi - lo > 2.0 * delta) {
    const double mid = 0.5 * (lo + hi);
    int answer = 0;
    if (mid >= -bound) {
      answer = threshold_query(samples, plan, mid);
      ++out.queries_made;
    }
    (answer == 0 ? lo : hi) = mid;
  }
  out.estimate = 0.5 * (lo + hi) / plan.tau;
  out.interval_lo = (lo - delta) / plan.tau;
  out.interval_hi = (hi + delta) / plan.tau;
  out.theta = plan.theta;
  out.c_sample = plan.complexities.c_sample;
  out.c_gate_expected = plan.complexities.c_gate;
  out.seed = samples.seed;
  out.plan_hash = plan.hash();
  return out;
}

Plan build_ground_plan(const Hamiltonian& h, const GroundEnergyRequest& request) {
  if (!(request.xi > 0.0) || !(request.xi < 1.0)) {
    throw ValidationError(fmt::format("xi must lie in (0, 1), got {}", request.xi));
  }
  if (!(request.b >= 1.0)) throw ValidationError("b must be >= 1");
  if (!(request.Delta > 0.0)) throw ValidationError("Delta must be positive");
  const double tau = rescale_tau(h.lambda(), request.Delta, request.b);
  const double delta = 0.5 * tau * request.Delta;
  const auto s = planned_queries(tau, h.lambda(), delta);
  PlanRequest pr;
  pr.Delta = request.Delta;
  pr.eta = request.eta;
  pr.eps = request.eps.value_or(request.eta / 4);
  pr.theta = request.xi / static_cast<double>(s);
  pr.b = request.b;
  pr.rmode = request.rmode;
  pr.delta_fraction = 0.5;
  pr.M_override = request.M_override;
  return build_plan(h, pr);
}

GroundEnergyResult ground_energy(const Hamiltonian& h, const StateVector& state,
                                 const GroundEnergyRequest& request,
                                 std::uint64_t seed, unsigned threads) {
  const Plan plan = build_ground_plan(h, request);
  const SampleSet samples = collect_samples(plan, state, seed, threads);
  auto out = bisect_ground_energy(plan, samples);
  out.s_queries = planned_queries(plan.tau, plan.lambda, plan.delta);
  return out;
}

}  // namespace rspe
