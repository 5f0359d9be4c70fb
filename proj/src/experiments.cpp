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

#include "rotft/experiments.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "rotft/code.h"
#include "rotft/estimators.h"
#include "rotft/lindblad.h"
#include "rotft/projection.h"
#include "rotft/resources.h"
#include "rotft/rng.h"
#include "rotft/rus.h"

namespace rotft {

namespace {

using json = nlohmann::json;
using Point = std::map<std::string, std::string>;

const std::vector<ExperimentInfo> kRegistry = {
    {"fig5-gate-tracedist",
     "[[4,1,1,2]] |r_phi> trace distance vs p (density matrix)",
     0,
     {{"gate", "dispersive,ancilla", "dispersive | ancilla | naive"},
      {"phi", "pi/8", "logical angle"},
      {"p", "3e-4,5e-4,1e-3,2e-3,3e-3", "physical error rate"}},
     {{"gamma_per_p", "2e7", "gamma / p in s^-1"}}},
    {"fig7-expansion",
     "expansion to the d = 3 surface code: logical infidelity and pass rate",
     10000000,
     {{"gate", "dispersive,ancilla", "gate channel"},
      {"p", "1e-3,2e-3,5e-3,1e-2", "physical error rate"}},
     {{"d", "3", "target distance (3 or 5)"},
      {"rounds", "3", "noisy syndrome rounds"},
      {"gamma_per_p", "2e7", ""},
      {"idle_noise", "1", ""},
      {"fast_layer_idle", "1", "idle noise in reset / H layers"},
      {"hadamard_basis", "1", "X-type ancillas via reset + H"},
      {"p_check", "1e-3", "rate at which the pass probability is checked"}}},
    {"fig10-projection",
     "projection scheme trace distance vs p, FT gate against the naive circuit",
     1600000000,
     {{"gate", "dispersive,naive", "gate channel"},
      {"p", "2.5e-4,5e-4,1e-3,2e-3", "physical error rate"}},
     {{"m", "2", ""},
      {"k", "3", ""},
      {"phi", "1e-3", ""},
      {"gamma_per_p", "2e7", ""},
      {"shots_exponent_ft", "1.5", "shots scale as (p_min / p)^e"},
      {"shots_exponent_naive", "1", ""},
      {"naive_shot_fraction", "0.0125", "naive shots relative to FT shots at p_min"},
      {"wt0_cap", "2000000", "maximum weight-0 shots per point"}}},
    {"fig12-ck",
     "c(k) = P_ud(2) / p^2",
     300000000,
     {{"k", "3,4,5,6", ""}, {"p", "1e-3", ""}},
     {{"m", "2", ""},
      {"phi", "1e-3", ""},
      {"gate", "dispersive", ""},
      {"gamma_per_p", "2e7", ""},
      {"wt0_cap", "100000", ""}}},
    {"fig13-succprob",
     "success probability of the (d, m, k) projection scheme",
     2000000,
     {{"scheme", "2x6,3x4,3x6", "m x k"}, {"p", "1e-3", ""}, {"phi", "1e-3", ""}},
     {{"gate", "dispersive", ""}, {"gamma_per_p", "2e7", ""}, {"wt1_fraction", "0.05", ""}}},
    {"fig14-alpha",
     "alpha_RUS(phi) with the compensated channel",
     0,
     {{"k", "6", ""}},
     {{"ck", "14.7", ""},
      {"p", "1e-3", ""},
      {"phi_min", "1e-4", ""},
      {"phi_max", "0.39269908169872415", ""},
      {"n_points", "400", "log-spaced angles"},
      {"k_max", "48", ""}}},
    {"fig15-resources",
     "distillation / cultivation / projection spacetime cost",
     0,
     {{"N", "10,50,100", "sites"}, {"T", "10,50", "simulation time"}},
     {{"p", "1e-3", ""},
      {"phi", "1e-3", ""},
      {"h", "1", ""},
      {"alpha", "91", ""},
      {"eps_c", "1e-11", ""},
      {"q_tot", "", "overrides the success-curve value when set"},
      {"distillation", "1840000", ""},
      {"cultivation", "60000", ""}}},
    {"prop-ft-check",
     "error-structure-tailored FT verdicts of the R_ZZ constructions",
     0,
     {{"gate", "dispersive,ancilla,naive", ""}, {"phi", "pi/4,0.05", ""}},
     {{"gamma", "1e4", "jump rate (s^-1)"}, {"tol", "1e-9", ""}}},
};

GateKind gate_of(const std::string& s) { return parse_gate_kind(s); }

double num(const Point& pt, const std::string& k) { return parse_number(pt.at(k), k); }

struct Experiment {
  std::vector<std::string> columns;
  std::function<std::vector<json>(const ExperimentConfig&, const Point&, std::uint64_t seed)> point;
  std::function<void(const ExperimentConfig&, RunResult&)> summarize;
};

// ---- fig5

std::vector<json> fig5_point(const ExperimentConfig& c, const Point& pt, std::uint64_t) {
  auto r = rotation_state_4112(gate_of(pt.at("gate")), num(pt, "phi"), num(pt, "p"),
                               c.number("gamma_per_p"));
  return {{{"gate", pt.at("gate")},
           {"phi", r.phi},
           {"p", r.p},
           {"pass_prob", r.pass_prob},
           {"gate_postselect", r.gate_postselect},
           {"d_tr", r.d_tr},
           {"d_tr_over_p2", r.p > 0 ? r.d_tr / (r.p * r.p) : 0.0}}};
}

// Groups rows by the listed keys (as text), keeping row order.
std::map<std::string, std::vector<const json*>> group_rows(const RunResult& r,
                                                          const std::vector<std::string>& keys) {
  std::map<std::string, std::vector<const json*>> g;
  for (const auto& row : r.rows) {
    std::string key;
    for (const auto& k : keys) {
      const auto& v = row.at(k);
      key += (key.empty() ? "" : ",") + (v.is_string() ? v.get<std::string>() : v.dump());
    }
    g[key].push_back(&row);
  }
  return g;
}

void fig5_summary(const ExperimentConfig&, RunResult& r) {
  json slopes = json::object();
  for (auto& [key, rows] : group_rows(r, {"gate", "phi"})) {
    std::vector<double> x, y;
    for (auto* row : rows)
      if (row->at("p").get<double>() > 0 && row->at("d_tr").get<double>() > 0) {
        x.push_back(row->at("p"));
        y.push_back(row->at("d_tr"));
      }
    if (x.size() < 2) continue;
    double s = log_log_fit(x, y).slope;
    slopes[key] = s;
    if (key.rfind("naive", 0) != 0) r.checks.push_back({"slope " + key, s, 1.85, 2.15});
  }
  r.summary["slopes"] = slopes;
  // ancilla >= dispersive at equal (phi, p)
  std::map<std::string, double> disp, anc;
  for (const auto& row : r.rows) {
    std::string k = row.at("phi").dump() + "," + row.at("p").dump();
    if (row.at("gate") == "dispersive") disp[k] = row.at("d_tr");
    if (row.at("gate") == "ancilla") anc[k] = row.at("d_tr");
  }
  double worst = 1e300;
  bool any = false;
  for (auto& [k, v] : disp)
    if (anc.count(k) && v > 0) {
      worst = std::min(worst, anc[k] / v);
      any = true;
    }
  if (any) {
    r.summary["min_ancilla_over_dispersive"] = worst;
    r.checks.push_back({"ancilla >= dispersive", worst, 1.0, 1e300});
  }
}

// ---- fig7

std::vector<json> fig7_point(const ExperimentConfig& c, const Point& pt, std::uint64_t seed) {
  ExpansionConfig ec;
  ec.d = c.integer("d");
  ec.rounds = c.integer("rounds");
  ec.p = num(pt, "p");
  ec.gate = gate_of(pt.at("gate"));
  ec.gamma_per_p = c.number("gamma_per_p");
  ec.idle_noise = c.flag("idle_noise");
  auto spec = expansion_spec(ec);
  spec.fast_layer_idle = c.flag("fast_layer_idle");
  spec.hadamard_basis = c.flag("hadamard_basis");
  auto e = build_expansion(spec);
  auto est = estimate_logical_channel(e, c.shots, seed);
  json row = logical_to_json(est);
  row["gate"] = pt.at("gate");
  row["p"] = ec.p;
  row["coef"] = est.avg_infidelity / (ec.p * ec.p);
  return {row};
}

void fig7_summary(const ExperimentConfig& c, RunResult& r) {
  double p_check = c.number("p_check");
  for (auto& [gate, rows] : group_rows(r, {"gate"})) {
    std::vector<double> x, y, se;
    for (auto* row : rows) {
      x.push_back(row->at("p"));
      y.push_back(row->at("avg_infidelity"));
      se.push_back(std::max(row->at("avg_infidelity_se").get<double>(), 1e-300));
      if (std::abs(row->at("p").get<double>() - p_check) < 1e-15) {
        r.summary["pass_prob_at_check"][gate] = row->at("pass_prob");
        r.checks.push_back({"pass " + gate, row->at("pass_prob"), 0.8, 1.0});
      }
    }
    double a = quadratic_coefficient(x, y, se);
    r.summary["coefficient"][gate] = a;
    if (gate == "dispersive") r.checks.push_back({"coef dispersive", a, 70 * 0.7, 70 * 1.3});
    if (gate == "ancilla") r.checks.push_back({"coef ancilla", a, 84 * 0.7, 84 * 1.3});
  }
}

// ---- projection shared

ProjectionConfig projection_config(const ExperimentConfig& c, const Point& pt) {
  ProjectionConfig pc;
  auto get = [&](const std::string& k) -> std::string {
    if (pt.count(k)) return pt.at(k);
    return c.text(k);
  };
  pc.m = std::size_t(parse_number(get("m"), "m"));
  pc.k = std::size_t(parse_number(get("k"), "k"));
  pc.phi = parse_number(get("phi"), "phi");
  pc.p = parse_number(get("p"), "p");
  pc.gate = gate_of(get("gate"));
  pc.gamma_per_p = c.number("gamma_per_p");
  pc.validate();
  return pc;
}

// ---- fig10

std::vector<json> fig10_point(const ExperimentConfig& c, const Point& pt, std::uint64_t seed) {
  auto pc = projection_config(c, pt);
  auto ps = c.axis_numbers("p");
  double p_min = *std::min_element(ps.begin(), ps.end());
  bool naive = pc.gate == GateKind::kNaive;
  double e = c.number(naive ? "shots_exponent_naive" : "shots_exponent_ft");
  double base = double(c.shots) * (naive ? c.number("naive_shot_fraction") : 1.0);
  auto shots = std::uint64_t(std::max(1000.0, base * std::pow(p_min / pc.p, e)));
  auto wt0 = std::min<std::uint64_t>(shots, c.integer("wt0_cap"));
  auto est = run_projection(pc, wt0, shots, seed);
  json row = estimate_to_json(est);
  row["gate"] = pt.at("gate");
  row["shots_wt0"] = wt0;
  row["shots_wt1"] = shots;
  return {row};
}

void fig10_summary(const ExperimentConfig&, RunResult& r) {
  for (auto& [gate, rows] : group_rows(r, {"gate"})) {
    std::vector<double> x, y;
    for (auto* row : rows)
      if (row->at("d_tr").get<double>() > 0) {
        x.push_back(row->at("p"));
        y.push_back(row->at("d_tr"));
      }
    if (x.size() < 2) continue;
    double s = log_log_fit(x, y).slope;
    r.summary["slope"][gate] = s;
    if (gate == "naive") r.checks.push_back({"slope naive", s, 0.85, 1.15});
    else r.checks.push_back({"slope " + gate, s, 1.85, 2.15});
  }
}

// ---- fig12

std::vector<json> fig12_point(const ExperimentConfig& c, const Point& pt, std::uint64_t seed) {
  auto pc = projection_config(c, pt);
  auto wt0 = std::min<std::uint64_t>(c.shots, c.integer("wt0_cap"));
  auto est = run_projection(pc, wt0, c.shots, seed);
  json row = estimate_to_json(est);
  row["k"] = pc.k;
  row["m"] = pc.m;
  return {row};
}

void fig12_summary(const ExperimentConfig&, RunResult& r) {
  for (auto& [k, rows] : group_rows(r, {"k"})) {
    double wsum = 0, acc = 0;
    for (auto* row : rows) {
      double se = row->at("ck_se");
      if (se <= 0) continue;
      wsum += 1 / (se * se);
      acc += row->at("ck").get<double>() / (se * se);
    }
    if (wsum == 0) continue;
    double ck = acc / wsum;
    r.summary["ck"][k] = ck;
    r.summary["ck_se"][k] = 1 / std::sqrt(wsum);
    double kk = parse_number(k, "k");
    r.checks.push_back({"c(" + k + ") <= 3.3k", ck, 0.0, 3.3 * kk});
    if (k == "3") r.checks.push_back({"c(3)", ck, 9.8 * 0.7, 9.8 * 1.3});
  }
}

// ---- fig13

std::vector<json> fig13_point(const ExperimentConfig& c, const Point& pt, std::uint64_t seed) {
  const auto& s = pt.at("scheme");
  auto x = s.find('x');
  if (x == std::string::npos) throw std::invalid_argument("scheme must be m x k, e.g. 3x6");
  Point full = pt;
  full["m"] = s.substr(0, x);
  full["k"] = s.substr(x + 1);
  auto pc = projection_config(c, full);
  auto wt1 = std::max<std::uint64_t>(1000, std::uint64_t(double(c.shots) * c.number("wt1_fraction")));
  auto est = run_projection(pc, c.shots, wt1, seed);
  json row = estimate_to_json(est);
  row["scheme"] = s;
  row["m"] = pc.m;
  row["k"] = pc.k;
  row["d"] = pc.distance();
  return {row};
}

void fig13_summary(const ExperimentConfig&, RunResult& r) {
  const std::map<std::string, std::pair<double, double>> targets = {
      {"2x6", {0.120, 0.015}}, {"3x4", {0.187, 0.02}}, {"3x6", {0.054, 0.01}}};
  for (const auto& row : r.rows) {
    std::string s = row.at("scheme");
    double pp = row.at("p_pass");
    r.summary["p_pass"][s] = pp;
    bool ref_point = std::abs(row.at("p").get<double>() - 1e-3) < 1e-15 &&
                     std::abs(row.at("phi").get<double>() - 1e-3) < 1e-15;
    auto it = targets.find(s);
    if (ref_point && it != targets.end())
      r.checks.push_back({"p_suc " + s, pp, it->second.first - it->second.second,
                          it->second.first + it->second.second});
  }
}

// ---- fig14

std::vector<json> fig14_point(const ExperimentConfig& c, const Point& pt, std::uint64_t) {
  RusOptions o;
  o.k = std::size_t(num(pt, "k"));
  o.ck = c.number("ck");
  o.p = c.number("p");
  o.k_max = c.integer("k_max");
  double lo = c.number("phi_min"), hi = c.number("phi_max");
  auto n = c.integer("n_points");
  if (!(lo > 0 && hi >= lo)) throw std::invalid_argument("fig14: 0 < phi_min <= phi_max");
  std::vector<json> rows;
  for (std::uint64_t i = 0; i < n; ++i) {
    double t = n > 1 ? double(i) / double(n - 1) : 0.0;
    double phi = std::exp(std::log(lo) + t * std::log(hi / lo));
    auto b = rus_average(phi, o);
    rows.push_back({{"k", o.k}, {"phi", phi}, {"p_tilde", b.p_tilde}, {"alpha", b.alpha},
                    {"k_max", b.k_max}});
  }
  return rows;
}

void fig14_summary(const ExperimentConfig& c, RunResult& r) {
  for (auto& [k, rows] : group_rows(r, {"k"})) {
    double best = 0, at = 0;
    for (auto* row : rows)
      if (row->at("alpha").get<double>() > best) {
        best = row->at("alpha");
        at = row->at("phi");
      }
    r.summary["max_alpha"][k] = best;
    r.summary["argmax_phi"][k] = at;
    if (k == "6" && std::abs(c.number("ck") - 14.7) < 1e-12)
      r.checks.push_back({"max alpha k=6", best, 82.0, 100.0});
  }
  r.summary["expected_trials"] = expected_trials(c.integer("k_max"));
}

// ---- fig15

CompareOptions compare_options(const ExperimentConfig& c) {
  CompareOptions o;
  o.rc.eps_c = c.number("eps_c");
  o.rc.distillation = c.number("distillation");
  o.rc.cultivation = c.number("cultivation");
  o.h = c.number("h");
  o.alpha = c.number("alpha");
  if (!c.text("q_tot").empty()) o.q_tot = c.number("q_tot");
  return o;
}

std::vector<json> fig15_point(const ExperimentConfig& c, const Point& pt, std::uint64_t) {
  auto o = compare_options(c);
  auto rep = compare_methods(std::size_t(num(pt, "N")), num(pt, "T"), c.number("p"), c.number("phi"),
                             SuccessCurve::reference_anchors(), o);
  return {report_to_json(rep)};
}

void fig15_summary(const ExperimentConfig& c, RunResult& r) {
  auto o = compare_options(c);
  double q54 = projection_cost(0.054);
  double qtot = rus_cost(c.number("phi"), SuccessCurve::reference_anchors(), o.rc).q_tot;
  double ct = t_per_rotation(o.rc.eps_c);
  r.summary["Q_5.4%"] = q54;
  r.summary["Q_tot_curve"] = qtot;
  r.summary["c_T"] = ct;
  r.summary["ratio_distillation_at_70415"] = ct * o.rc.distillation / 70415.0;
  r.summary["ratio_cultivation_at_70415"] = ct * o.rc.cultivation / 70415.0;
  r.summary["T_max_N100"] = simulation_time_budget(100, o.h, c.number("p"), o.alpha);
  r.checks.push_back({"Q(5.4%)", q54, 28536.0 - 1e-6, 28536.0 + 1e-6});
  if (std::abs(c.number("phi") - 1e-3) < 1e-15)
    r.checks.push_back({"Q_tot(1e-3)", qtot, 70415.0 * 0.95, 70415.0 * 1.05});
  r.checks.push_back({"ratio distillation", ct * o.rc.distillation / 70415.0, 1337.5 * 0.995,
                      1337.5 * 1.005});
  r.checks.push_back({"ratio cultivation", ct * o.rc.cultivation / 70415.0, 43.6 * 0.995, 43.6 * 1.005});
  int invalid = 0;
  for (const auto& row : r.rows) invalid += !row.at("cultivation_valid").get<bool>();
  r.summary["rows_over_cultivation_limit"] = invalid;
}

// ---- prop-ft-check

std::vector<json> ft_point(const ExperimentConfig& c, const Point& pt, std::uint64_t) {
  GateParams gp;
  gp.gamma = c.number("gamma");
  double phi = num(pt, "phi");
  auto kind = gate_of(pt.at("gate"));
  auto code = gauge_fixed(four_one_one_two(), PauliOperator::from_string("ZZII"));
  auto model = gate_model(kind, phi, gp, true);
  json row = {{"gate", pt.at("gate")}, {"phi", phi}};
  bool all = true;
  for (auto [rr, ss] : {std::pair{1, 0}, std::pair{0, 1}}) {
    auto v = check_ft_gate(model, code, logical_rz(phi), rr, ss, c.number("tol"));
    std::string tag = "r" + std::to_string(rr) + "s" + std::to_string(ss);
    row[tag] = verdict_to_json(v);
    all = all && v.pass;
  }
  row["verdict"] = all ? "PASS" : "FAIL";
  return {row};
}

void ft_summary(const ExperimentConfig&, RunResult& r) {
  for (auto& [gate, rows] : group_rows(r, {"gate"})) {
    bool all = true;
    for (auto* row : rows) all = all && row->at("verdict") == "PASS";
    r.summary["verdict"][gate] = all ? "PASS" : "FAIL";
    bool expect = gate != "naive";
    r.checks.push_back({"FT " + gate + (expect ? " passes" : " fails"), all == expect ? 1.0 : 0.0, 1.0, 1.0});
  }
}

const Experiment& experiment_impl(const std::string& id) {
  static const std::map<std::string, Experiment> impl = {
      {"fig5-gate-tracedist",
       {{"gate", "phi", "p", "pass_prob", "gate_postselect", "d_tr", "d_tr_over_p2"}, fig5_point,
        fig5_summary}},
      {"fig7-expansion",
       {{"gate", "p", "shots", "passed", "pass_prob", "px", "py", "pz", "r", "avg_infidelity",
         "avg_infidelity_se", "coef"},
        fig7_point,
        fig7_summary}},
      {"fig10-projection",
       {{"gate", "p", "phi", "phi1", "shots_wt0", "shots_wt1", "p_pass", "p_ud2_pass", "p_ud2",
         "d_tr", "d_tr_se", "ck"},
        fig10_point,
        fig10_summary}},
      {"fig12-ck", {{"m", "k", "p", "phi", "p_pass", "p_ud2", "p_ud2_se", "ck", "ck_se"}, fig12_point, fig12_summary}},
      {"fig13-succprob", {{"scheme", "m", "k", "d", "p", "phi", "p_pass", "p_pass_se"}, fig13_point, fig13_summary}},
      {"fig14-alpha", {{"k", "phi", "p_tilde", "alpha", "k_max"}, fig14_point, fig14_summary}},
      {"fig15-resources",
       {{"N", "T", "nu", "n_rot", "n_t", "q_tot", "distillation", "cultivation", "projection",
         "ratio_distillation", "ratio_cultivation", "cultivation_valid", "t_max"},
        fig15_point,
        fig15_summary}},
      {"prop-ft-check", {{"gate", "phi", "verdict"}, ft_point, ft_summary}},
  };
  auto it = impl.find(id);
  if (it == impl.end()) throw std::invalid_argument("unknown experiment " + id);
  return it->second;
}

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return buf;
  }
  return v.dump();
}

}  // namespace

const std::vector<ExperimentInfo>& experiment_registry() { return kRegistry; }

const ExperimentInfo& experiment_info(const std::string& id) {
  for (const auto& e : kRegistry)
    if (e.id == id) return e;
  throw std::invalid_argument("unknown experiment '" + id + "'");
}

json check_to_json(const Check& c) {
  return {{"name", c.name}, {"value", c.value}, {"lo", c.lo}, {"hi", c.hi}, {"pass", c.pass()}};
}

std::uint64_t point_seed(std::uint64_t master, std::size_t i) {
  return derive_seed(master, 0x5EED, i);
}

RunResult run_experiment(const ExperimentConfig& cfg) {
  const auto& ex = experiment_impl(cfg.id);
  RunResult res;
  res.columns = ex.columns;
  std::size_t n = cfg.points();
  std::vector<std::vector<json>> out(n);
  std::vector<std::string> err(n);
  std::vector<char> ok(n, 0);
  for (std::size_t i = 0; i < n; ++i) res.point_seeds.push_back(point_seed(cfg.seed, i));

  std::atomic<std::size_t> next{0};
  std::size_t shards = std::min(cfg.shards, std::max<std::size_t>(n, 1));
  auto worker = [&] {
    for (std::size_t s; (s = next.fetch_add(1)) < shards;) {
      for (std::size_t i = s; i < n; i += shards) {
        try {
          out[i] = ex.point(cfg, cfg.point(i), res.point_seeds[i]);
          ok[i] = 1;
        } catch (const std::exception& e) {
          err[i] = e.what();
        }
      }
    }
  };
  unsigned threads = std::max(1u, std::min<unsigned>(thread_count(), unsigned(shards)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::size_t i = 0; i < n; ++i) {
    if (!ok[i]) {
      res.partial = true;
      res.errors.push_back("point " + std::to_string(i) + ": " + err[i]);
      continue;
    }
    for (auto& row : out[i]) res.rows.push_back(std::move(row));
  }
  if (!res.rows.empty()) ex.summarize(cfg, res);
  return res;
}

void write_artifacts(const ExperimentConfig& cfg, const RunResult& r, const std::string& dir,
                     double wall_seconds) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  {
    std::ofstream csv(fs::path(dir) / "results.csv");
    for (std::size_t i = 0; i < r.columns.size(); ++i) csv << (i ? "," : "") << r.columns[i];
    csv << "\n";
    for (const auto& row : r.rows) {
      for (std::size_t i = 0; i < r.columns.size(); ++i) {
        auto it = row.find(r.columns[i]);
        csv << (i ? "," : "") << (it == row.end() ? "" : csv_cell(*it));
      }
      csv << "\n";
    }
  }
  json rows = json::array();
  for (const auto& row : r.rows) rows.push_back(row);
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(check_to_json(c));
  json summary = {{"experiment", cfg.id}, {"summary", r.summary}, {"checks", checks}, {"rows", rows}};
  std::ofstream(fs::path(dir) / "summary.json") << summary.dump(2) << "\n";

  json manifest = {{"experiment", cfg.id},
                   {"config", cfg.canonical()},
                   {"config_hash", cfg.hash()},
                   {"git_revision", git_revision()},
                   {"seed", cfg.seed},
                   {"point_seeds", r.point_seeds},
                   {"shards", cfg.shards},
                   {"points", cfg.points()},
                   {"wall_seconds", wall_seconds},
                   {"partial", r.partial},
                   {"errors", r.errors},
                   {"artifacts", {"results.csv", "summary.json"}},
                   {"checks", checks}};
  std::ofstream(fs::path(dir) / "manifest.json") << manifest.dump(2) << "\n";
}

VerifyReport verify_manifest(const std::string& path) {
  VerifyReport rep;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("verify: cannot open " + path);
  json m = json::parse(in);
  std::string cfg = m.at("config");
  if (hex64(fnv1a64(cfg)) != m.at("config_hash").get<std::string>()) {
    rep.ok = false;
    rep.problems.push_back("config hash mismatch");
  }
  if (m.value("partial", false)) {
    rep.ok = false;
    rep.problems.push_back("partial results");
  }
  for (const auto& c : m.at("checks")) {
    Check k{c.at("name"), c.at("value"), c.at("lo"), c.at("hi")};
    rep.checks.push_back(k);
    if (!k.pass()) rep.ok = false;
  }
  return rep;
}

std::string git_revision() {
  std::string out;
  if (FILE* f = popen("git rev-parse HEAD 2>/dev/null", "r")) {
    char buf[128];
    while (std::fgets(buf, sizeof buf, f)) out += buf;
    pclose(f);
  }
  while (!out.empty() && (out.back() == '\n' || out.back() == '\r')) out.pop_back();
  return out.empty() ? "unknown" : out;
}

double quadratic_coefficient(const std::vector<double>& x, const std::vector<double>& y,
                             const std::vector<double>& se) {
  if (x.empty() || x.size() != y.size() || x.size() != se.size())
    throw std::invalid_argument("quadratic_coefficient: sizes");
  if (x.size() == 1) return y[0] / (x[0] * x[0]);
  // normal equations for y = a x^2 + b x^3 with weights 1/se^2
  double s44 = 0, s45 = 0, s55 = 0, t2 = 0, t3 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double w = 1 / (se[i] * se[i]);
    double x2 = x[i] * x[i], x3 = x2 * x[i];
    s44 += w * x2 * x2;
    s45 += w * x2 * x3;
    s55 += w * x3 * x3;
    t2 += w * x2 * y[i];
    t3 += w * x3 * y[i];
  }
  double det = s44 * s55 - s45 * s45;
  if (std::abs(det) < 1e-300 * s44 * s55) return t2 / s44;
  return (t2 * s55 - t3 * s45) / det;
}

}  // namespace rotft
