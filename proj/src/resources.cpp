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

#include "rotft/resources.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace rotft {

double t_per_rotation(double eps_c) {
  if (!(eps_c > 0 && eps_c < 1)) throw std::invalid_argument("t_per_rotation: eps in (0,1)");
  return 1.149 * std::log2(1.0 / eps_c) + 9.2;
}

TrotterCounts trotter_counts(std::size_t n_sites, double time, const ResourceConstants& rc) {
  if (time < 0) throw std::invalid_argument("trotter_counts: negative time");
  TrotterCounts t;
  t.c_t = t_per_rotation(rc.eps_c);
  if (time == 0 || n_sites == 0) return t;
  double nu = std::exp(1.85) * std::pow(double(n_sites), 0.27) * std::pow(time, 1.25);
  t.nu = std::uint64_t(std::ceil(nu));
  t.n_rot = 22.0 * double(n_sites) * double(t.nu);
  t.n_t = t.n_rot * t.c_t;
  return t;
}

double projection_cost(double p_suc, std::size_t d, std::size_t qed_rounds) {
  if (!(p_suc > 0 && p_suc <= 1)) throw std::invalid_argument("projection_cost: p_suc in (0,1]");
  // Q p = p d^3 + (1 - p) d^2 r  =>  Q = d^3 - d^2 r + d^2 r / p
  double d2 = double(d) * double(d);
  double r = double(qed_rounds);
  return d2 * double(d) - d2 * r + d2 * r / p_suc;
}

SuccessCurve::SuccessCurve(std::vector<std::pair<double, double>> anchors)
    : anchors_(std::move(anchors)) {
  if (anchors_.empty()) throw std::invalid_argument("SuccessCurve: no anchors");
  std::sort(anchors_.begin(), anchors_.end());
  for (const auto& [x, y] : anchors_)
    if (!(x > 0) || !(y > 0 && y <= 1)) throw std::invalid_argument("SuccessCurve: bad anchor");
}

SuccessCurve SuccessCurve::reference_anchors() {
  return SuccessCurve({{1e-4, 0.0724}, {1e-3, 0.054}, {2e-1, 0.00612}});
}

double SuccessCurve::operator()(double phi) const {
  double x = std::abs(phi);
  if (x <= anchors_.front().first) return anchors_.front().second;
  if (x >= anchors_.back().first) return anchors_.back().second;
  for (std::size_t i = 1; i < anchors_.size(); ++i) {
    const auto& [b, pb] = anchors_[i];
    if (x > b) continue;
    const auto& [a, pa] = anchors_[i - 1];
    double t = std::log(x / a) / std::log(b / a);
    return std::exp(std::log(pa) + t * std::log(pb / pa));
  }
  return anchors_.back().second;
}

SuccessCurve SuccessCurve::scaled(double f) const {
  auto a = anchors_;
  for (auto& [x, y] : a) y = std::min(1.0, y * f);
  return SuccessCurve(a);
}

RusCost rus_cost(double phi, const SuccessCurve& curve, const ResourceConstants& rc,
                 std::size_t k_max) {
  const double pi = std::numbers::pi;
  auto wrap = [&](double x) {
    double m = pi / 8;
    double r = std::fmod(x + pi / 16, m);
    if (r < 0) r += m;
    return r - pi / 16;
  };
  RusCost c;
  c.k_max = k_max;
  double q_k = projection_cost(curve(phi), rc.d, rc.qed_rounds);
  c.q_tot = 0.5 * q_k;
  for (std::size_t k = 1; k < k_max; ++k) {
    // as written: the (k+1)-th trial is charged at 2^(k-1) phi
    double a = std::ldexp(phi, int(k) - 1);
    double extra = 0;
    double w = std::ldexp(1.0, -int(k) - 1);
    if (std::abs(a) > rc.wrap_threshold) {
      a = wrap(a);
      extra = rc.cultivation;
      c.expected_wraps += 2 * w;  // reached with probability 2^-k
    }
    q_k += projection_cost(curve(a), rc.d, rc.qed_rounds) + extra;
    c.q_tot += w * q_k;
  }
  return c;
}

double HamiltonianModel::one_norm() const {
  double s = 0;
  for (const auto& t : terms) s += std::abs(t.coeff);
  return s;
}

HamiltonianModel heisenberg(std::size_t n_sites, double h, std::optional<std::vector<double>> fields) {
  if (n_sites < 2) throw std::invalid_argument("heisenberg: N >= 2");
  HamiltonianModel m;
  m.n_sites = n_sites;
  m.h = h;
  if (fields) {
    if (fields->size() != n_sites) throw std::invalid_argument("heisenberg: fields size");
    m.fields = *fields;
  } else {
    m.fields.resize(n_sites);
    for (std::size_t j = 0; j < n_sites; ++j) m.fields[j] = (j % 2 ? -1.0 : 1.0) * h / 2;
  }
  for (std::size_t j = 0; j < n_sites; ++j) {
    std::size_t nb = (j + 1) % n_sites;
    for (char p : {'X', 'Y', 'Z'}) {
      auto& dst = (j % 2 == 0) ? m.even : m.odd;
      dst.push_back(m.terms.size());
      m.terms.push_back({1.0, PauliOperator::on(n_sites, {j, nb}, p)});
    }
  }
  for (std::size_t j = 0; j < n_sites; ++j) {
    m.even.push_back(m.terms.size());
    m.terms.push_back({m.fields[j], PauliOperator::single(n_sites, j, 'Z')});
  }
  return m;
}

double simulation_time_budget(std::size_t n_sites, double h, double p, double alpha) {
  double lambda = (3.0 + h / 2.0) * double(n_sites);
  if (!(alpha > 0 && lambda > 0 && p > 0)) throw std::invalid_argument("simulation_time_budget");
  return 1.0 / (alpha * lambda * p * p);
}

ResourceReport compare_methods(std::size_t n_sites, double time, double p, double phi,
                               const SuccessCurve& curve, const CompareOptions& opt) {
  ResourceReport r;
  r.n_sites = n_sites;
  r.time = time;
  r.p = p;
  r.phi = phi;
  r.counts = trotter_counts(n_sites, time, opt.rc);
  r.q_tot = opt.q_tot ? *opt.q_tot : rus_cost(phi, curve, opt.rc).q_tot;
  r.distillation_total = r.counts.n_t * opt.rc.distillation;
  r.cultivation_total = r.counts.n_t * opt.rc.cultivation;
  r.projection_total = r.counts.n_rot * r.q_tot;
  if (r.projection_total > 0) {
    r.ratio_distillation = r.distillation_total / r.projection_total;
    r.ratio_cultivation = r.cultivation_total / r.projection_total;
  }
  r.per_rotation_distillation = r.counts.c_t * opt.rc.distillation / r.q_tot;
  r.per_rotation_cultivation = r.counts.c_t * opt.rc.cultivation / r.q_tot;
  r.cultivation_t_limit = 1.0 / opt.rc.cultivation_error;
  r.cultivation_valid = r.counts.n_t <= r.cultivation_t_limit;
  r.t_max = simulation_time_budget(n_sites, opt.h, p, opt.alpha);
  return r;
}

nlohmann::json report_to_json(const ResourceReport& r) {
  return {{"N", r.n_sites},
          {"T", r.time},
          {"p", r.p},
          {"phi", r.phi},
          {"nu", r.counts.nu},
          {"n_rot", r.counts.n_rot},
          {"c_t", r.counts.c_t},
          {"n_t", r.counts.n_t},
          {"q_tot", r.q_tot},
          {"distillation", r.distillation_total},
          {"cultivation", r.cultivation_total},
          {"projection", r.projection_total},
          {"ratio_distillation", r.ratio_distillation},
          {"ratio_cultivation", r.ratio_cultivation},
          {"per_rotation_distillation", r.per_rotation_distillation},
          {"per_rotation_cultivation", r.per_rotation_cultivation},
          {"cultivation_t_limit", r.cultivation_t_limit},
          {"cultivation_valid", r.cultivation_valid},
          {"t_max", r.t_max}};
}

std::string report_table(const ResourceReport& r) {
  std::ostringstream os;
  os << std::setprecision(6);
  os << "N=" << r.n_sites << " T=" << r.time << " p=" << r.p << " phi=" << r.phi << "\n";
  os << "  nu            " << r.counts.nu << "\n";
  os << "  rotations     " << r.counts.n_rot << "\n";
  os << "  T per rot     " << r.counts.c_t << "\n";
  os << "  T count       " << r.counts.n_t << (r.cultivation_valid ? "" : "  (exceeds cultivation limit)")
     << "\n";
  os << "  Q_tot         " << r.q_tot << "\n";
  os << "  distillation  " << r.distillation_total << "  x" << r.ratio_distillation << "\n";
  os << "  cultivation   " << r.cultivation_total << "  x" << r.ratio_cultivation << "\n";
  os << "  projection    " << r.projection_total << "\n";
  os << "  T_max         " << r.t_max << "\n";
  return os.str();
}

}  // namespace rotft
