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

#include "rspe/cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include "rspe/error.hpp"
#include "rspe/estimator.hpp"
#include "rspe/heaviside.hpp"
#include "rspe/lcu.hpp"
#include "rspe/resources.hpp"
#include "rspe/state.hpp"

namespace rspe::cli {

namespace {

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Writes to --out when given, otherwise to the command's stdout stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ValidationError("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

struct FourierArgs {
  double delta = 0.0;
  double eps = 0.0;
  std::optional<double> eps1, eps2, eps3;
  int grid = 2000;
  std::string out;
};

struct PlanArgs {
  std::string ham;
  double Delta = 0.0;
  double eta = 1.0;
  double eps = 0.0;
  double theta = 0.05;
  double b = 1.0;
  std::string rmode = "total";
  std::optional<int> M;
  std::string out;
};

struct LcuArgs {
  std::string ham;
  double t = 0.0;
  std::int64_t r = 1;
  int M = 8;
  std::int64_t count = 1;
  std::uint64_t seed = 0;
  std::string out;
};

struct CdfArgs {
  PlanArgs plan;
  std::string state;
  std::uint64_t seed = 0;
  std::vector<double> x;
  bool exact = false;
  unsigned threads = 1;
};

struct GroundArgs {
  std::string ham;
  std::string state;
  double Delta = 0.0;
  double eta = 1.0;
  double xi = 0.1;
  double b = 1.0;
  std::optional<double> eps;
  std::string rmode = "total";
  std::optional<int> M;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string out;
};

struct CurveArgs {
  double lambda = 0.0;
  double Delta = 0.0;
  double eta = 1.0;
  std::vector<double> eps;
  double b = 1.0;
  std::vector<double> g;
  int points = 40;
  std::string out;
};

void add_plan_options(CLI::App* cmd, PlanArgs& a) {
  cmd->add_option("--ham", a.ham, "Hamiltonian file")->required();
  cmd->add_option("--Delta,--delta", a.Delta, "energy precision")->required();
  cmd->add_option("--eta", a.eta, "ground-space overlap lower bound");
  cmd->add_option("--eps", a.eps, "CDF approximation error")->required();
  cmd->add_option("--theta", a.theta, "failure probability per query");
  cmd->add_option("--b", a.b, "rescaling factor b >= 1");
  cmd->add_option("--rmode", a.rmode, "constant | total | gated:<g>");
  cmd->add_option("--M", a.M, "override the truncation order");
}

PlanRequest to_request(const PlanArgs& a) {
  PlanRequest r;
  r.Delta = a.Delta;
  r.eta = a.eta;
  r.eps = a.eps;
  r.theta = a.theta;
  r.b = a.b;
  r.rmode = RuntimeChoice::parse(a.rmode);
  r.M_override = a.M;
  return r;
}

void run_fourier(const FourierArgs& a, std::ostream& out, std::ostream& err) {
  ApproxParams p;
  if (a.eps1 || a.eps2 || a.eps3) {
    if (!(a.eps1 && a.eps2 && a.eps3)) {
      throw ValidationError("--eps1, --eps2 and --eps3 must be given together");
    }
    p = select_parameters(a.delta, *a.eps1, *a.eps2, *a.eps3);
  } else {
    p = optimize_split(a.delta, a.eps);
  }
  const auto series = build_fourier(p);
  Sink sink(a.out, out);
  write_coefficients_csv(series, sink.stream());

  // Certification grid over [delta, pi - delta] (and its mirror by symmetry)
  // plus the range check over [-pi, pi].
  const int n = std::max(a.grid, 2);
  double worst = 0.0;
  double lowest = 1.0;
  double highest = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double x = p.delta + (std::numbers::pi - 2.0 * p.delta) * i / n;
    worst = std::max({worst, std::abs(1.0 - eval_fourier(series, x)),
                      std::abs(eval_fourier(series, -x))});
    const double y = -std::numbers::pi + 2.0 * std::numbers::pi * i / n;
    const double fy = eval_fourier(series, y);
    lowest = std::min(lowest, fy);
    highest = std::max(highest, fy);
  }
  const double bound = p.error_bound();
  err << fmt::format(
      "# beta={} d={} eps1={} eps2={} eps3={} weight={}\n"
      "# grid={} max_heaviside_error={:.6g} bound={:.6g} {}\n"
      "# range=[{:.6g}, {:.6g}] allowed=[{:.6g}, {:.6g}] {}\n",
      p.beta, p.d, p.eps1, p.eps2, p.eps3, series.weight(), n, worst, bound,
      worst <= bound ? "PASS" : "FAIL", lowest, highest, -bound, 1.0 + bound,
      (lowest >= -bound && highest <= 1.0 + bound) ? "PASS" : "FAIL");
}

void run_plan(const PlanArgs& a, std::ostream& out) {
  const auto h = load_hamiltonian(a.ham);
  const auto plan = build_plan(h, to_request(a));
  Sink sink(a.out, out);
  sink.stream() << plan.json() << '\n';
}

void run_sample_lcu(const LcuArgs& a, std::ostream& out) {
  const auto h = load_hamiltonian(a.ham);
  if (a.count < 1) throw ValidationError("--count must be >= 1");
  const PauliDistribution dist(h);
  const auto segment = segment_distribution(a.t, a.r, a.M);
  const std::string key =
      fmt::format("{}t={:.17g} r={} M={}", serialize(h), a.t, a.r, a.M);
  Sink sink(a.out, out);
  auto& s = sink.stream();
  s << fmt::format("# seed={} c_sample={} plan_hash={:016x}\n", a.seed, a.count,
                   fnv1a(key));
  s << fmt::format("# t={:.17g} r={} M={} mu={:.17g}\n", a.t, a.r, a.M,
                   weight_mu(a.t, a.r, a.M));
  for (std::int64_t k = 0; k < a.count; ++k) {
    Rng rng = stream_for(a.seed, static_cast<std::uint64_t>(k));
    const auto u = sample_unitary(dist, segment, a.t, a.r, rng);
    s << "UNITARY " << k << '\n' << serialize(u);
  }
}

void run_estimate_cdf(const CdfArgs& a, std::ostream& out) {
  const auto h = load_hamiltonian(a.plan.ham);
  const auto state = prepare_state(a.state, &h);
  const auto plan = build_plan(h, to_request(a.plan));
  const auto samples = collect_samples(plan, state, a.seed, a.threads);
  std::optional<SpectralData> spectrum;
  if (a.exact) spectrum = exact_spectrum(h, state);
  Sink sink(a.plan.out, out);
  auto& s = sink.stream();
  s << fmt::format("# seed={} c_sample={} plan_hash={:016x}\n", a.seed,
                   plan.complexities.c_sample, plan.hash());
  s << fmt::format("# tau={:.17g} delta={:.17g} eta={} eps={} theta={}\n",
                   plan.tau, plan.delta, plan.eta, plan.eps, plan.theta);
  s << (a.exact ? "x,re,im,decision,exact\n" : "x,re,im,decision\n");
  for (double x : a.x) {
    const auto z = acdf_estimate(samples, x);
    const int bit = threshold_query(samples, plan, x);
    s << fmt::format("{:.17g},{:.17g},{:.17g},{}", x, z.real(), z.imag(), bit);
    if (spectrum) s << fmt::format(",{:.17g}", acdf_exact(plan, *spectrum, x));
    s << '\n';
  }
}

void run_ground_energy(const GroundArgs& a, std::ostream& out) {
  const auto h = load_hamiltonian(a.ham);
  const auto state = prepare_state(a.state, &h);
  GroundEnergyRequest r;
  r.Delta = a.Delta;
  r.eta = a.eta;
  r.xi = a.xi;
  r.b = a.b;
  r.eps = a.eps;
  r.rmode = RuntimeChoice::parse(a.rmode);
  r.M_override = a.M;
  const auto result = ground_energy(h, state, r, a.seed, a.threads);
  Sink sink(a.out, out);
  sink.stream() << result.json() << '\n';
}

void run_resource_curve(const CurveArgs& a, std::ostream& out) {
  CurveConfig config;
  config.lambda = a.lambda;
  config.Delta = a.Delta;
  config.eta = a.eta;
  config.b = a.b;
  config.g_grid = a.g;
  config.default_points = a.points;
  if (a.out.empty() || a.eps.size() == 1) {
    config.eps_list = a.eps;
    const auto curve = tradeoff_curve(config);
    Sink sink(a.out, out);
    write_curve_csv(curve, sink.stream());
    return;
  }
  // One file per (eps, b) configuration: <out>-eps<eps>-b<b>.csv.
  std::string stem = a.out;
  if (stem.size() > 4 && stem.substr(stem.size() - 4) == ".csv") {
    stem.resize(stem.size() - 4);
  }
  for (double eps : a.eps) {
    config.eps_list = {eps};
    const auto curve = tradeoff_curve(config);
    const std::string path = fmt::format("{}-eps{}-b{}.csv", stem, eps, a.b);
    Sink sink(path, out);
    write_curve_csv(curve, sink.stream());
    out << path << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Randomized statistical phase estimation toolkit", "rspe"};
  app.require_subcommand(1);

  FourierArgs fa;
  auto* fourier = app.add_subcommand(
      "fourier", "Heaviside Fourier coefficients as CSV plus a grid report");
  fourier->add_option("--delta", fa.delta, "half-width of the transition")
      ->required();
  fourier->add_option("--eps", fa.eps, "target error (split optimized)");
  fourier->add_option("--eps1", fa.eps1, "explicit split component 1");
  fourier->add_option("--eps2", fa.eps2, "explicit split component 2");
  fourier->add_option("--eps3", fa.eps3, "explicit split component 3");
  fourier->add_option("--grid", fa.grid, "certification grid points");
  fourier->add_option("--out", fa.out, "output CSV path");

  PlanArgs pa;
  auto* plan = app.add_subcommand("plan", "Build a plan and print it as JSON");
  add_plan_options(plan, pa);
  plan->add_option("--out", pa.out, "output path");

  LcuArgs la;
  auto* lcu = app.add_subcommand("sample-lcu", "Sample LCU unitaries for e^{iHt/lambda}");
  lcu->add_option("--ham", la.ham, "Hamiltonian file")->required();
  lcu->add_option("--t", la.t, "evolution time for the normalized H")->required();
  lcu->add_option("--r", la.r, "segment count")->required();
  lcu->add_option("--M", la.M, "even truncation order");
  lcu->add_option("--count", la.count, "number of unitaries");
  lcu->add_option("--seed", la.seed, "master seed")->required();
  lcu->add_option("--out", la.out, "output path");

  CdfArgs ca;
  auto* cdf = app.add_subcommand("estimate-cdf", "Estimate the approximate CDF");
  add_plan_options(cdf, ca.plan);
  cdf->add_option("--state", ca.state, "basis:<bits> | file:<path> | groundmix:<eta>[:seed]")
      ->required();
  cdf->add_option("--seed", ca.seed, "master seed")->required();
  cdf->add_option("--x", ca.x, "query points (scaled energies)")
      ->required()
      ->delimiter(',');
  cdf->add_flag("--exact", ca.exact, "also print the exact approximate CDF");
  cdf->add_option("--threads", ca.threads, "worker threads");
  cdf->add_option("--out", ca.plan.out, "output path");

  GroundArgs ga;
  auto* ground = app.add_subcommand("ground-energy", "Ground-state energy search");
  ground->add_option("--ham", ga.ham, "Hamiltonian file")->required();
  ground->add_option("--state", ga.state, "ansatz state descriptor")->required();
  ground->add_option("--Delta,--delta", ga.Delta, "target precision")->required();
  ground->add_option("--eta", ga.eta, "ground-space overlap lower bound");
  ground->add_option("--xi", ga.xi, "total failure probability");
  ground->add_option("--b", ga.b, "rescaling factor b >= 1");
  ground->add_option("--eps", ga.eps, "CDF approximation error (default eta/4)");
  ground->add_option("--rmode", ga.rmode, "constant | total | gated:<g>");
  ground->add_option("--M", ga.M, "override the truncation order");
  ground->add_option("--seed", ga.seed, "master seed")->required();
  ground->add_option("--threads", ga.threads, "worker threads");
  ground->add_option("--out", ga.out, "output path");

  CurveArgs ra;
  auto* curve = app.add_subcommand("resource-curve", "Sample/gate trade-off curves");
  curve->add_option("--lambda", ra.lambda, "Hamiltonian one-norm")->required();
  curve->add_option("--Delta,--delta", ra.Delta, "target precision")->required();
  curve->add_option("--eta", ra.eta, "ground-space overlap lower bound");
  curve->add_option("--eps", ra.eps, "CDF errors")->required()->delimiter(',');
  curve->add_option("--b", ra.b, "rescaling factor b >= 1");
  curve->add_option("--g", ra.g, "explicit gate budgets")->delimiter(',');
  curve->add_option("--points", ra.points, "default grid size");
  curve->add_option("--out", ra.out, "output CSV path or stem");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      for (auto* sub : app.get_subcommands()) out << sub->help();
      if (app.get_subcommands().empty()) out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    if (fourier->parsed()) {
      if (!(fa.eps1 || fa.eps2 || fa.eps3) && fourier->count("--eps") == 0) {
        throw ValidationError("fourier needs --eps or an explicit split");
      }
      run_fourier(fa, out, err);
    } else if (plan->parsed()) {
      run_plan(pa, out);
    } else if (lcu->parsed()) {
      run_sample_lcu(la, out);
    } else if (cdf->parsed()) {
      run_estimate_cdf(ca, out);
    } else if (ground->parsed()) {
      run_ground_energy(ga, out);
    } else if (curve->parsed()) {
      run_resource_curve(ra, out);
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitOk;
}

}  // namespace rspe::cli
