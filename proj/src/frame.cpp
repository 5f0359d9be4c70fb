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

#include "rotft/frame.h"

#include <atomic>
#include <bit>
#include <cmath>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "rotft/tableau.h"

namespace rotft {

namespace {

constexpr char kLetter[4] = {'I', 'X', 'Y', 'Z'};

inline bool has_x(char l) { return l == 'X' || l == 'Y'; }
inline bool has_z(char l) { return l == 'Z' || l == 'Y'; }

}  // namespace

void FrameBatch::apply(std::size_t q, char letter, std::size_t shot) {
  std::uint64_t b = std::uint64_t{1} << (shot & 63);
  std::size_t i = q * words + (shot >> 6);
  if (has_x(letter)) x[i] ^= b;
  if (has_z(letter)) z[i] ^= b;
}

void ShotStats::merge(const ShotStats& o) {
  auto add = [](std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  };
  shots += o.shots;
  passed += o.passed;
  add(det_fires, o.det_fires);
  add(obs_flips_pass, o.obs_flips_pass);
  add(tag_shots, o.tag_shots);
  add(tag_passed, o.tag_passed);
}

double ShotStats::obs_rate(std::size_t o) const {
  return passed ? double(obs_flips_pass.at(o)) / double(passed) : 0.0;
}

double ShotStats::obs_se(std::size_t o) const {
  if (!passed) return 0.0;
  double r = obs_rate(o);
  return std::sqrt(std::max(r * (1 - r), 1.0 / double(passed)) / double(passed));
}

FrameSampler::FrameSampler(NoisyCircuit c) : c_(std::move(c)) {
  c_.validate();
  if (c_.has_dense_only_ops())
    throw std::invalid_argument("frame sampler: circuit contains Kraus operations");
  comp_.resize(c_.ops().size());
  for (std::size_t i = 0; i < c_.ops().size(); ++i) {
    const Op& o = c_.ops()[i];
    Compiled& k = comp_[i];
    std::vector<double> w;
    switch (o.type) {
      case OpType::kXError:
        w = {o.args[0], 0, 0};
        break;
      case OpType::kZError:
        w = {0, 0, o.args[0]};
        break;
      case OpType::kDepolarize1:
        w.assign(3, o.args[0] / 3);
        break;
      case OpType::kDepolarize2:
        w.assign(15, o.args[0] / 15);
        break;
      case OpType::kPauliChannel1:
      case OpType::kPauliChannel2:
        w = o.args;
        break;
      case OpType::kMpp:
      case OpType::kPauli:
        for (auto& p : o.paulis) {
          std::vector<std::pair<std::size_t, char>> t;
          for (auto q : p.support()) t.emplace_back(q, p.at(q));
          k.terms.push_back(std::move(t));
        }
        break;
      default:
        break;
    }
    if (!w.empty()) {
      for (double v : w) k.total += v;
      double acc = 0;
      for (double v : w) {
        acc += k.total > 0 ? v / k.total : 0;
        k.cum.push_back(acc);
      }
      k.cum.back() = 1.0;
    }
  }
  ref_ = reference_record(c_);
  for (auto& d : c_.detectors()) {
    std::uint8_t v = 0;
    for (auto m : d.meas) v ^= ref_[m];
    det_ref_.push_back(v);
  }
  for (auto& d : c_.observables()) {
    std::uint8_t v = 0;
    for (auto m : d.meas) v ^= ref_[m];
    obs_ref_.push_back(v);
  }
  // Random measurement kicks expose any parity that is not deterministic.
  Rng rng(0x5eed5eedULL);
  BatchResult r = run_batch(4, rng, {}, false);
  for (std::size_t d = 0; d < c_.detectors().size(); ++d)
    for (std::size_t w = 0; w < r.words; ++w)
      if (r.det[d * r.words + w])
        throw std::invalid_argument("detector " + std::to_string(d) + " (" +
                                    c_.detectors()[d].tag + ") is not deterministic");
  for (std::size_t o = 0; o < c_.observables().size(); ++o)
    for (std::size_t w = 0; w < r.words; ++w)
      if (r.obs[o * r.words + w])
        throw std::invalid_argument("observable " + std::to_string(o) + " is not deterministic");
}

BatchResult FrameSampler::run_batch(std::size_t W, Rng& rng, const HookMap& hooks,
                                    bool noise) const {
  const std::size_t n = c_.n_qubits();
  FrameBatch f;
  f.n = n;
  f.words = W;
  f.x.assign(n * W, 0);
  f.z.assign(n * W, 0);
  f.tags.assign(64 * W, 0);
  std::vector<std::uint64_t> meas(c_.num_measurements() * W, 0);
  std::size_t mi = 0;
  const std::size_t B = 64 * W;
  auto X = [&](std::size_t q) { return &f.x[q * W]; };
  auto Z = [&](std::size_t q) { return &f.z[q * W]; };

  for (std::size_t oi = 0; oi < c_.ops().size(); ++oi) {
    const Op& o = c_.ops()[oi];
    const auto& t = o.targets;
    switch (o.type) {
      case OpType::kReset:
        for (auto q : t)
          for (std::size_t w = 0; w < W; ++w) {
            X(q)[w] = 0;
            Z(q)[w] = rng();
          }
        break;
      case OpType::kResetX:
        for (auto q : t)
          for (std::size_t w = 0; w < W; ++w) {
            Z(q)[w] = 0;
            X(q)[w] = rng();
          }
        break;
      case OpType::kH:
        for (auto q : t)
          for (std::size_t w = 0; w < W; ++w) std::swap(X(q)[w], Z(q)[w]);
        break;
      case OpType::kS:
      case OpType::kSDag:
        for (auto q : t)
          for (std::size_t w = 0; w < W; ++w) Z(q)[w] ^= X(q)[w];
        break;
      case OpType::kCX:
        for (std::size_t i = 0; i < t.size(); i += 2) {
          auto *xc = X(t[i]), *zc = Z(t[i]), *xt = X(t[i + 1]), *zt = Z(t[i + 1]);
          for (std::size_t w = 0; w < W; ++w) {
            xt[w] ^= xc[w];
            zc[w] ^= zt[w];
          }
        }
        break;
      case OpType::kCZ:
        for (std::size_t i = 0; i < t.size(); i += 2) {
          auto *xa = X(t[i]), *za = Z(t[i]), *xb = X(t[i + 1]), *zb = Z(t[i + 1]);
          for (std::size_t w = 0; w < W; ++w) {
            za[w] ^= xb[w];
            zb[w] ^= xa[w];
          }
        }
        break;
      case OpType::kSqrtZZ:
        for (std::size_t i = 0; i < t.size(); i += 2) {
          auto *xa = X(t[i]), *za = Z(t[i]), *xb = X(t[i + 1]), *zb = Z(t[i + 1]);
          for (std::size_t w = 0; w < W; ++w) {
            std::uint64_t s = xa[w] ^ xb[w];
            za[w] ^= s;
            zb[w] ^= s;
          }
        }
        break;
      case OpType::kMeasure:
        for (auto q : t) {
          for (std::size_t w = 0; w < W; ++w) {
            meas[mi * W + w] = X(q)[w];
            Z(q)[w] ^= rng();
          }
          ++mi;
        }
        break;
      case OpType::kMeasureX:
        for (auto q : t) {
          for (std::size_t w = 0; w < W; ++w) {
            meas[mi * W + w] = Z(q)[w];
            X(q)[w] ^= rng();
          }
          ++mi;
        }
        break;
      case OpType::kMpp:
        for (auto& terms : comp_[oi].terms) {
          for (std::size_t w = 0; w < W; ++w) {
            std::uint64_t flip = 0;
            for (auto [q, l] : terms) {
              if (has_z(l)) flip ^= X(q)[w];
              if (has_x(l)) flip ^= Z(q)[w];
            }
            meas[mi * W + w] = flip;
            std::uint64_t kick = rng();
            for (auto [q, l] : terms) {
              if (has_x(l)) X(q)[w] ^= kick;
              if (has_z(l)) Z(q)[w] ^= kick;
            }
          }
          ++mi;
        }
        break;
      case OpType::kPauli:
      case OpType::kTick:
        break;
      case OpType::kSlot: {
        auto it = hooks.find(o.slot);
        if (it != hooks.end()) it->second(f, rng);
        break;
      }
      case OpType::kXError:
      case OpType::kZError:
      case OpType::kDepolarize1:
      case OpType::kPauliChannel1:
      case OpType::kDepolarize2:
      case OpType::kPauliChannel2: {
        const Compiled& k = comp_[oi];
        if (!noise || k.total <= 0) break;
        bool two = is_two_qubit(o.type);
        std::size_t locs = two ? t.size() / 2 : t.size();
        std::uint64_t trials = std::uint64_t(locs) * B;
        std::uniform_real_distribution<double> u(0, 1);
        auto pick = [&]() {
          double r = u(rng);
          std::size_t j = 0;
          while (j + 1 < k.cum.size() && r >= k.cum[j]) ++j;
          return j + 1;  // Pauli index, identity excluded
        };
        auto hit = [&](std::uint64_t idx) {
          std::size_t loc = idx / B, shot = idx % B;
          std::size_t pk = pick();
          if (!two) {
            char l = o.type == OpType::kXError ? 'X' : o.type == OpType::kZError ? 'Z' : kLetter[pk];
            f.apply(t[loc], l, shot);
          } else {
            f.apply(t[2 * loc], kLetter[pk & 3], shot);
            f.apply(t[2 * loc + 1], kLetter[pk >> 2], shot);
          }
        };
        if (k.total >= 1.0) {
          for (std::uint64_t idx = 0; idx < trials; ++idx) hit(idx);
        } else {
          std::geometric_distribution<std::uint64_t> g(k.total);
          for (std::uint64_t idx = g(rng); idx < trials; idx += 1 + g(rng)) hit(idx);
        }
        break;
      }
      case OpType::kKraus:
        throw std::logic_error("unreachable");
    }
  }

  BatchResult r;
  r.shots = B;
  r.words = W;
  const auto& dets = c_.detectors();
  const auto& obss = c_.observables();
  r.det.assign(dets.size() * W, 0);
  r.obs.assign(obss.size() * W, 0);
  r.pass.assign(W, ~std::uint64_t{0});
  for (std::size_t d = 0; d < dets.size(); ++d) {
    for (auto m : dets[d].meas)
      for (std::size_t w = 0; w < W; ++w) r.det[d * W + w] ^= meas[m * W + w];
    if (dets[d].postselect)
      for (std::size_t w = 0; w < W; ++w) r.pass[w] &= ~r.det[d * W + w];
  }
  for (std::size_t o = 0; o < obss.size(); ++o)
    for (auto m : obss[o].meas)
      for (std::size_t w = 0; w < W; ++w) r.obs[o * W + w] ^= meas[m * W + w];
  r.tags = std::move(f.tags);
  return r;
}

namespace {

ShotStats batch_stats(const BatchResult& r, std::size_t valid, std::size_t n_det,
                      std::size_t n_obs) {
  ShotStats s;
  s.shots = valid;
  s.det_fires.assign(n_det, 0);
  s.obs_flips_pass.assign(n_obs, 0);
  std::vector<std::uint64_t> mask(r.words, 0);
  for (std::size_t w = 0; w < r.words; ++w) {
    std::size_t lo = 64 * w;
    if (valid >= lo + 64) mask[w] = ~std::uint64_t{0};
    else if (valid > lo) mask[w] = (std::uint64_t{1} << (valid - lo)) - 1;
  }
  for (std::size_t w = 0; w < r.words; ++w) {
    std::uint64_t pm = r.pass[w] & mask[w];
    s.passed += std::popcount(pm);
    for (std::size_t d = 0; d < n_det; ++d) s.det_fires[d] += std::popcount(r.det[d * r.words + w] & mask[w]);
    for (std::size_t o = 0; o < n_obs; ++o) s.obs_flips_pass[o] += std::popcount(r.obs[o * r.words + w] & pm);
  }
  bool any_tag = false;
  for (std::size_t i = 0; i < valid; ++i) any_tag |= r.tags[i] != 0;
  if (any_tag) {
    s.tag_shots.assign(64, 0);
    s.tag_passed.assign(64, 0);
    for (std::size_t i = 0; i < valid; ++i) {
      std::uint32_t tg = std::min<std::uint32_t>(r.tags[i], 63);
      ++s.tag_shots[tg];
      if (r.pass_bit(i)) ++s.tag_passed[tg];
    }
  }
  return s;
}

}  // namespace

ShotStats FrameSampler::sample(std::uint64_t shots, std::uint64_t seed, const HookMap& hooks,
                               std::uint64_t stream) const {
  const std::uint64_t nb = (shots + kBlockShots - 1) / kBlockShots;
  std::vector<ShotStats> per(nb);
  std::atomic<std::uint64_t> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  auto worker = [&]() {
    try {
      for (;;) {
        std::uint64_t b = next.fetch_add(1);
        if (b >= nb) return;
        Rng rng = make_rng(seed, stream, b);
        BatchResult r = run_batch(kBlockShots / 64, rng, hooks);
        std::size_t valid = std::min<std::uint64_t>(kBlockShots, shots - b * kBlockShots);
        per[b] = batch_stats(r, valid, c_.detectors().size(), c_.observables().size());
      }
    } catch (...) {
      std::lock_guard<std::mutex> lk(err_mu);
      err = std::current_exception();
      next = nb;
    }
  };
  unsigned nt = static_cast<unsigned>(std::min<std::uint64_t>(thread_count(), std::max<std::uint64_t>(nb, 1)));
  if (nt <= 1) {
    worker();
  } else {
    std::vector<std::thread> ts;
    for (unsigned i = 0; i < nt; ++i) ts.emplace_back(worker);
    for (auto& t : ts) t.join();
  }
  if (err) std::rethrow_exception(err);
  ShotStats total;
  total.det_fires.assign(c_.detectors().size(), 0);
  total.obs_flips_pass.assign(c_.observables().size(), 0);
  for (auto& s : per) total.merge(s);
  return total;
}

std::vector<ShotRecord> FrameSampler::sample_records(std::uint64_t shots, std::uint64_t seed,
                                                     const HookMap& hooks) const {
  std::vector<ShotRecord> out;
  out.reserve(shots);
  const std::uint64_t nb = (shots + kBlockShots - 1) / kBlockShots;
  for (std::uint64_t b = 0; b < nb; ++b) {
    Rng rng = make_rng(seed, 0, b);
    BatchResult r = run_batch(kBlockShots / 64, rng, hooks);
    std::size_t valid = std::min<std::uint64_t>(kBlockShots, shots - b * kBlockShots);
    for (std::size_t s = 0; s < valid; ++s) {
      ShotRecord rec;
      for (std::size_t d = 0; d < c_.detectors().size(); ++d) rec.detectors.push_back(r.det_bit(d, s));
      for (std::size_t o = 0; o < c_.observables().size(); ++o) rec.observables.push_back(r.obs_bit(o, s));
      rec.pass = r.pass_bit(s);
      rec.tag = r.tags[s];
      out.push_back(std::move(rec));
    }
  }
  return out;
}

ShotStats run_monte_carlo(const NoisyCircuit& c, std::uint64_t shots, std::uint64_t seed,
                          const HookMap& hooks) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  return FrameSampler(c).sample(shots, seed, hooks);
}

void write_shot_records(const std::string& path, const std::vector<ShotRecord>& recs) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path);
  std::uint32_t nd = recs.empty() ? 0 : static_cast<std::uint32_t>(recs[0].detectors.size());
  std::uint32_t no = recs.empty() ? 0 : static_cast<std::uint32_t>(recs[0].observables.size());
  std::uint64_t ns = recs.size();
  os.write("RTFS", 4);
  os.write(reinterpret_cast<const char*>(&ns), 8);
  os.write(reinterpret_cast<const char*>(&nd), 4);
  os.write(reinterpret_cast<const char*>(&no), 4);
  std::size_t nbits = nd + no + 1, nbytes = (nbits + 7) / 8;
  std::vector<std::uint8_t> buf(nbytes);
  for (auto& r : recs) {
    std::fill(buf.begin(), buf.end(), 0);
    std::size_t b = 0;
    auto put = [&](bool v) {
      if (v) buf[b / 8] |= std::uint8_t(1u << (b % 8));
      ++b;
    };
    for (auto v : r.detectors) put(v);
    for (auto v : r.observables) put(v);
    put(r.pass);
    os.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(nbytes));
  }
}

std::vector<ShotRecord> read_shot_records(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (std::string(magic, 4) != "RTFS") throw std::runtime_error("bad shot file magic");
  std::uint64_t ns = 0;
  std::uint32_t nd = 0, no = 0;
  is.read(reinterpret_cast<char*>(&ns), 8);
  is.read(reinterpret_cast<char*>(&nd), 4);
  is.read(reinterpret_cast<char*>(&no), 4);
  std::size_t nbytes = (nd + no + 1 + 7) / 8;
  std::vector<std::uint8_t> buf(nbytes);
  std::vector<ShotRecord> out(ns);
  for (auto& r : out) {
    is.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(nbytes));
    if (!is) throw std::runtime_error("truncated shot file");
    std::size_t b = 0;
    auto get = [&]() {
      bool v = (buf[b / 8] >> (b % 8)) & 1;
      ++b;
      return v;
    };
    for (std::uint32_t i = 0; i < nd; ++i) r.detectors.push_back(get());
    for (std::uint32_t i = 0; i < no; ++i) r.observables.push_back(get());
    r.pass = get();
  }
  return out;
}

}  // namespace rotft
