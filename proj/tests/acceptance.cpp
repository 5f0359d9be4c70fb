// Copyright 2026 The rotft Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance run: criteria 1-8, PASS/FAIL per criterion.
//   rotft_acceptance [criterion ...]     (default: all)
// Artifacts of the experiment-backed criteria go to $ROTFT_ACCEPTANCE_OUT
// (default acceptance_out/).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "rotft/builders.h"
#include "rotft/channel.h"
#include "rotft/config.h"
#include "rotft/density_sim.h"
#include "rotft/experiments.h"
#include "rotft/frame.h"
#include "rotft/lindblad.h"
#include "rotft/resources.h"
#include "rotft/rus.h"

using namespace rotft;

namespace {

constexpr double kPi = std::numbers::pi;

struct Criterion {
  int id;
  std::string title;
  std::vector<Check> checks;
  std::vector<std::string> notes;
  bool ok() const {
    if (checks.empty()) return false;
    for (const auto& c : checks)
      if (!c.pass()) return false;
    return true;
  }
};

std::string out_root() {
  const char* e = std::getenv("ROTFT_ACCEPTANCE_OUT");
  return e ? e : "acceptance_out";
}

// Runs a registered experiment with its default config and keeps its checks.
void run_default(Criterion& cr, const std::string& id) {
  auto cfg = ExperimentConfig::defaults(id);
  cfg.out = out_root() + "/" + id;
  auto t0 = std::chrono::steady_clock::now();
  auto res = run_experiment(cfg);
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_artifacts(cfg, res, cfg.out, wall);
  for (auto c : res.checks) {
    c.name = id + ": " + c.name;
    cr.checks.push_back(c);
  }
  for (const auto& e : res.errors) cr.notes.push_back(id + " error: " + e);
  if (res.partial) cr.checks.push_back({id + ": complete", 0.0, 1.0, 1.0});
  char buf[128];
  std::snprintf(buf, sizeof buf, "%s: %.1f s", id.c_str(), wall);
  cr.notes.push_back(buf);
}

Check boolean(const std::string& name, bool v) { return {name, v ? 1.0 : 0.0, 1.0, 1.0}; }

Check near(const std::string& name, double v, double target, double tol) {
  return {name, v, target - tol, target + tol};
}

// ---- 8: oracle equivalences

NoisyCircuit parity_circuit(double p, int rounds) {
  NoisyCircuit c(5);
  NoisyBuilder b(c, p);
  b.set_active({0, 1, 2, 3, 4});
  b.reset({0, 1, 2, 3, 4});
  b.tick();
  std::vector<std::size_t> prev;
  for (int r = 0; r < rounds; ++r) {
    b.cx({0, 3, 1, 4});
    b.tick();
    b.cx({1, 3, 2, 4});
    b.tick();
    std::size_t m = b.measure({3, 4});
    c.add_detector(r == 0 ? std::vector<std::size_t>{m} : std::vector<std::size_t>{prev[0], m});
    c.add_detector(r == 0 ? std::vector<std::size_t>{m + 1} : std::vector<std::size_t>{prev[1], m + 1});
    prev = {m, m + 1};
    b.reset({3, 4});
    b.tick();
  }
  std::size_t m = b.measure({0, 1, 2});
  c.add_observable({m}, "Z0");
  return c;
}

void frame_vs_density(Criterion& cr, const std::string& name, const NoisyCircuit& c, std::uint64_t seed) {
  DensitySimulator ds(c);
  ds.run();
  auto st = FrameSampler(c).sample(1000000, seed);
  double pass = ds.pass_probability();
  double se = std::sqrt(pass * (1 - pass) / double(st.shots)) + 1e-15;
  cr.checks.push_back({name + " pass (sigmas)", std::abs(st.pass_rate() - pass) / se, 0.0, 3.0});
  auto dist = ds.distribution();
  // per-detector firing rates
  for (std::size_t d = 0; d < c.detectors().size(); ++d) {
    double q = 0;
    for (const auto& [k, w] : dist) q += k[d] ? w : 0.0;
    double fse = std::sqrt(q * (1 - q) / double(st.shots)) + 1e-15;
    double obs = double(st.det_fires[d]) / double(st.shots);
    cr.checks.push_back(
        {name + " det" + std::to_string(d) + " (sigmas)", std::abs(obs - q) / fse, 0.0, 3.0});
  }
  for (std::size_t o = 0; o < c.observables().size(); ++o) {
    double f = ds.observable_flip_given_pass(o);
    double fse = std::sqrt(f * (1 - f) / double(st.passed)) + 1e-15;
    cr.checks.push_back(
        {name + " obs" + std::to_string(o) + " (sigmas)", std::abs(st.obs_rate(o) - f) / fse, 0.0, 3.0});
  }
}

Mat random_state(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Mat a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = cplx(g(rng), g(rng));
  Mat rho = a * a.adjoint();
  return rho / rho.trace();
}

Mat random_cptp(int d, int rank, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Mat> ks;
  Mat sum = Mat::Zero(d, d);
  for (int r = 0; r < rank; ++r) {
    Mat k(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) k(i, j) = cplx(g(rng), g(rng));
    ks.push_back(k);
    sum += k.adjoint() * k;
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(sum);
  Mat inv_sqrt = es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                 es.eigenvectors().adjoint();
  for (auto& k : ks) k = k * inv_sqrt;
  return superop_from_kraus(ks);
}

void criterion8(Criterion& cr) {
  for (int r = 1; r <= 3; ++r)
    frame_vs_density(cr, "parity r=" + std::to_string(r), parity_circuit(2e-2, r), 100 + r);
  frame_vs_density(cr, "[[4,1,1,2]] prep", build_prep_4112(1e-2), 200);
  frame_vs_density(cr, "[[4,1,1,2]] prep+QED", build_qed_zx_4112(1e-2), 201);

  for (GateKind kind : {GateKind::kDirect, GateKind::kAncilla}) {
    GateParams gp;
    double phi = kPi / 4;
    auto probe = gate_model(kind, phi, gp);
    double T = probe.total_time();
    std::mt19937_64 rng(5);
    Mat rho = random_state(probe.dim(), rng);
    std::vector<double> x, y;
    for (double gt : {1e-4, 1e-3, 1e-2}) {
      gp.gamma = gt / T;
      auto m = gate_model(kind, phi, gp);
      DysonPropagator p{m, 1, 201};
      x.push_back(gt);
      y.push_back(trace_norm(evolve_full(m, rho) - evolve_truncated(p, rho)));
    }
    double slope = std::log(y.back() / y.front()) / std::log(x.back() / x.front());
    cr.checks.push_back(near(std::string("Dyson order-1 slope ") + gate_kind_name(kind), slope, 2.0, 0.15));
  }

  std::mt19937_64 rng(9);
  double worst = 0;
  for (int n : {1, 2})
    for (int t = 0; t < 20; ++t) {
      int d = 1 << n;
      Mat s = random_cptp(d, 1 + t % 4, rng);
      auto tw = pauli_twirl(s, n, 1.0);
      worst = std::max(worst, std::abs(average_fidelity(s, d) - average_fidelity(tw.superop(), d)));
    }
  for (GateKind kind : {GateKind::kDirect, GateKind::kAncilla, GateKind::kNaive}) {
    auto c = gate_channel(kind, 0.4, 1e-3);
    worst = std::max(worst, std::abs(average_fidelity(c.error_superop, 4) -
                                     average_fidelity(c.pauli_twirled.superop(), 4)));
  }
  cr.checks.push_back({"twirl average-fidelity change", worst, 0.0, 1e-9});
}

// ---- 5, 6: analytic

void criterion5(Criterion& cr) {
  run_default(cr, "fig14-alpha");
  RusOptions opt;
  double worst = 0;
  for (double phi : {1e-3, 0.02, 0.11, -0.3}) {
    double a = rus_average(phi, opt).p_tilde;
    double b = rus_average(phi + kPi / 4, opt).p_tilde;
    worst = std::max(worst, std::abs(a - b) / a);
  }
  cr.checks.push_back({"p_tilde(phi + pi/4) relative change", worst, 0.0, 1e-9});
  cr.checks.push_back(near("E(n_trial)", expected_trials(64), 2.0, 1e-12));
}

void criterion6(Criterion& cr) {
  auto one = pec_budget_uniform(1e-3, 1, 1e-3, 91);
  double cap = one.phi_tot_cap;
  cr.checks.push_back(near("phi_tot cap (rad)", cap, 1.10e4, 0.005e4));
  cr.checks.push_back(near("gates at |phi| = 1e-3", cap / 1e-3, 1.10e7, 0.005e7));
  auto full = pec_budget_uniform(1e-3, cap / 1e-3, 1e-3, 91);
  cr.checks.push_back(near("gamma_tot^2 / e^4 at P_tot = 1", full.sampling_cost / std::exp(4.0), 1.0, 0.02));
  cr.checks.push_back(near("T_max (N=100, p=1e-3, h=1)", simulation_time_budget(100, 1.0, 1e-3, 91), 31.4, 0.2));
}

void criterion7(Criterion& cr) {
  run_default(cr, "fig15-resources");
  CompareOptions opt;
  opt.q_tot = 70415.0;
  auto curve = SuccessCurve::reference_anchors();
  auto ok = compare_methods(50, 50, 1e-3, 1e-3, curve, opt);
  auto big = compare_methods(100, 200, 1e-3, 1e-3, curve, opt);
  cr.checks.push_back(boolean("N_T <= 5e8 accepted (N=50, T=50)", ok.cultivation_valid));
  cr.checks.push_back(boolean("N_T > 5e8 flagged (N=100, T=200)", !big.cultivation_valid && big.counts.n_t > 5e8));
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> want;
  for (int i = 1; i < argc; ++i) want.insert(std::atoi(argv[i]));
  auto selected = [&](int id) { return want.empty() || want.count(id); };

  std::vector<std::pair<Criterion, std::function<void(Criterion&)>>> plan = {
      {{1, "FT verdicts of the R_ZZ constructions"}, [](Criterion& c) { run_default(c, "prop-ft-check"); }},
      {{2, "[[4,1,1,2]] rotation-state error scaling"}, [](Criterion& c) { run_default(c, "fig5-gate-tracedist"); }},
      {{3, "expansion scheme"}, [](Criterion& c) { run_default(c, "fig7-expansion"); }},
      {{4, "projection scheme"},
       [](Criterion& c) {
         run_default(c, "fig12-ck");
         run_default(c, "fig10-projection");
         run_default(c, "fig13-succprob");
       }},
      {{5, "RUS calculus"}, criterion5},
      {{6, "budgets"}, criterion6},
      {{7, "resource comparison"}, criterion7},
      {{8, "oracle equivalences"}, criterion8},
  };

  int failed = 0;
  for (auto& [cr, fn] : plan) {
    if (!selected(cr.id)) continue;
    auto t0 = std::chrono::steady_clock::now();
    try {
      fn(cr);
    } catch (const std::exception& e) {
      cr.notes.push_back(std::string("exception: ") + e.what());
      cr.checks.push_back(boolean("ran without exception", false));
    }
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("Criterion %d (%s): %s  [%.1f s]\n", cr.id, cr.title.c_str(), cr.ok() ? "PASS" : "FAIL", wall);
    for (const auto& c : cr.checks)
      std::printf("    %-4s %-52s %.6g in [%.6g, %.6g]\n", c.pass() ? "ok" : "FAIL", c.name.c_str(), c.value,
                  c.lo, c.hi);
    for (const auto& n : cr.notes) std::printf("    note: %s\n", n.c_str());
    std::fflush(stdout);
    failed += !cr.ok();
  }
  std::printf("%d criteria failed\n", failed);
  return failed ? 1 : 0;
}
