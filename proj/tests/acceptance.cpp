/*
 * Copyright 2026 The mimo-detect Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Acceptance suite: runs every exit criterion at its stated scale and
// tolerance, printing one PASS/FAIL line each. Exit status is nonzero if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "mimo/config.hpp"
#include "mimo/sim.hpp"

using namespace mimo;

namespace {

unsigned g_threads = 4;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double combined_se(const SerPoint& a, const SerPoint& b, unsigned nt) {
  const double sa = standard_error(a, nt);
  const double sb = standard_error(b, nt);
  return std::sqrt(sa * sa + sb * sb);
}

/// a <= b within three combined standard errors.
bool leq_3se(const SerPoint& a, const SerPoint& b, unsigned nt) {
  return a.ser <= b.ser + 3.0 * combined_se(a, b, nt);
}

SimulationConfig base_config(unsigned nt, unsigned nr, const char* mod) {
  SimulationConfig cfg;
  cfg.nt = nt;
  cfg.nr = nr;
  cfg.modulation = mod;
  cfg.min_errors = 0;
  cfg.seed = 20260101;
  cfg.threads = g_threads;
  return cfg;
}

// Gaussian tail by composite Simpson quadrature of the density on
// [x, x + 12]; independent of std::erfc.
double q_function_quadrature(double x) {
  const int n = 200000;
  const double a = x;
  const double b = x + 12.0;
  const double h = (b - a) / n;
  auto pdf = [](double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * M_PI); };
  double s = pdf(a) + pdf(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * pdf(a + i * h);
  return s * h / 3.0;
}

Verdict detector_ranking() {
  SimulationConfig cfg = base_config(4, 4, "4qam");
  cfg.detectors = {{Algorithm::Ml}, {Algorithm::VblastMmse}, {Algorithm::VblastZf},
                   {Algorithm::Mmse}, {Algorithm::Zf}};
  cfg.snr_grid_db = {12.0};
  cfg.max_channel_uses = 200000;
  const SerCurve c = estimate_ser(cfg);

  Verdict v;
  for (const SerPoint& p : c.points) {
    v.note(std::string(algorithm_name(p.detector)) + "=" + fmt("%.5f", p.ser));
  }
  for (std::size_t i = 0; i + 1 < c.points.size(); ++i) {
    const SerPoint& a = c.points[i];
    const SerPoint& b = c.points[i + 1];
    v.require(leq_3se(a, b, cfg.nt), std::string(algorithm_name(a.detector)) + " <= " +
                                         std::string(algorithm_name(b.detector)));
  }
  return v;
}

Verdict sphere_equals_ml() {
  Verdict v;
  const std::vector<std::pair<unsigned, unsigned>> sizes = {
      {2, 4}, {3, 4}, {4, 4}, {2, 16}, {3, 16}};
  const int per_size = 10000;
  std::uint64_t instances = 0;
  std::uint64_t metric_mismatch = 0;
  std::uint64_t estimate_mismatch = 0;
  std::uint64_t stream = 0;
  for (const auto& [nt, m] : sizes) {
    const Constellation c = build_constellation(m);
    const ChannelModel model = ChannelModel::iid(nt, nt);
    for (int t = 0; t < per_size; ++t) {
      RngStream rng(777, stream++);
      const double snr_db = 20.0 * (rng.uniform_index(1u << 30) / double(1u << 30));
      std::vector<SymbolIndex> x(nt);
      for (auto& k : x) k = rng.uniform_index(m);
      const ComplexMatrix h = sample_iid_channel(model, rng);
      const ComplexVector y =
          add_awgn(mat_vec(h, modulate(x, c)), noise_variance_for_snr(snr_db, nt), rng);
      const auto ml = detect_ml(y, h, c);
      const auto sd = detect_sphere(y, h, c);
      ++instances;
      if (ml_metric(y, h, ml.estimate, c) != ml_metric(y, h, sd.estimate, c)) ++metric_mismatch;
      if (ml.estimate != sd.estimate) ++estimate_mismatch;
    }
  }
  v.note(std::to_string(instances) + " instances");
  v.require(metric_mismatch == 0, std::to_string(metric_mismatch) + " metric mismatches");
  v.require(estimate_mismatch == 0, std::to_string(estimate_mismatch) + " estimate mismatches");
  return v;
}

Verdict noiseless_exactness() {
  Verdict v;
  const Constellation c = build_constellation(4);
  const ChannelModel model = ChannelModel::iid(4, 4);
  const std::vector<Algorithm> all = {Algorithm::Zf,     Algorithm::Mmse,     Algorithm::Ml,
                                      Algorithm::Sphere, Algorithm::VblastZf, Algorithm::VblastMmse};
  std::vector<std::uint64_t> errors(all.size(), 0);
  int accepted = 0;
  std::uint64_t stream = 0;
  while (accepted < 1000) {
    RngStream rng(4242, stream++);
    const ComplexMatrix h = sample_iid_channel(model, rng);
    // Well conditioned: Frobenius-norm condition estimate below 1e3.
    const ComplexMatrix g = gram(h);
    const ComplexMatrix gi = inverse(g);
    double tg = 0.0;
    double tgi = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      tg += g(i, i).real();
      tgi += gi(i, i).real();
    }
    if (std::sqrt(tg * tgi) >= 1e3) continue;
    ++accepted;
    std::vector<SymbolIndex> x(4);
    for (auto& k : x) k = rng.uniform_index(4);
    const ComplexVector y = mat_vec(h, modulate(x, c));
    for (std::size_t d = 0; d < all.size(); ++d) {
      const auto r = detect(DetectorSpec{all[d]}, y, h, NoiseSpec{0.0}, c);
      for (std::size_t j = 0; j < 4; ++j) errors[d] += r.estimate[j] != x[j];
    }
  }
  for (std::size_t d = 0; d < all.size(); ++d) {
    v.require(errors[d] == 0, std::string(algorithm_name(all[d])) + " had " +
                                  std::to_string(errors[d]) + " errors");
  }
  v.note("1000 instances x 6 detectors");
  return v;
}

Verdict siso_anchor() {
  Verdict v;
  // 2Q(sqrt(g)) - Q(sqrt(g))^2, frozen from a 30-digit mpmath evaluation.
  const std::vector<std::pair<double, double>> reference = {
      {0.0, 0.29213901826285898}, {4.0, 0.10979888437897191}, {8.0, 0.011972720144284655}};
  SimulationConfig cfg = base_config(1, 1, "4qam");
  cfg.detectors = {{Algorithm::Zf}};
  cfg.freeze_h = FrozenChannel::Identity;
  cfg.max_channel_uses = 1000000;
  for (const auto& [g, _] : reference) cfg.snr_grid_db.push_back(g);
  const SerCurve c = estimate_ser(cfg);
  for (const auto& [g, expected] : reference) {
    const double q = q_function_quadrature(std::sqrt(std::pow(10.0, g / 10.0)));
    v.require(std::abs(2 * q - q * q - expected) < 1e-9, "quadrature cross-check at " + fmt("%g dB", g));
    const SerPoint& p = c.at(g, Algorithm::Zf);
    const double se = std::sqrt(expected * (1 - expected) / double(p.channel_uses));
    const double z = (p.ser - expected) / se;
    v.note(fmt("%g dB: ", g) + fmt("ser=%.6f", p.ser) + fmt(" ref=%.6f", expected) +
           fmt(" z=%.2f", z));
    v.require(std::abs(z) <= 3.0, fmt("|z| <= 3 at %g dB", g));
  }
  return v;
}

Verdict correlation_degrades() {
  SimulationConfig cfg = base_config(4, 4, "4qam");
  cfg.detectors = {{Algorithm::Zf}};
  cfg.snr_grid_db = {12.0};
  cfg.max_channel_uses = 200000;
  const SerPoint iid = estimate_ser(cfg).points.front();
  cfg.rho = 0.7;
  const SerPoint corr = estimate_ser(cfg).points.front();
  Verdict v;
  v.note(fmt("zf rho=0: %.5f", iid.ser) + fmt(", rho=0.7: %.5f", corr.ser));
  v.require(leq_3se(iid, corr, cfg.nt), "SER(rho=0.7) >= SER(rho=0)");
  return v;
}

Verdict large_configurations() {
  Verdict v;
  for (const char* mod : {"16qam", "64qam"}) {
    SimulationConfig cfg = base_config(6, 12, mod);
    cfg.detectors = {{Algorithm::Zf}, {Algorithm::Mmse}, {Algorithm::VblastZf},
                     {Algorithm::VblastMmse}};
    cfg.snr_grid_db = {0, 4, 8, 12, 16, 20};
    cfg.max_channel_uses = 50000;
    const SerCurve c = estimate_ser(cfg);
    v.require(c.points.size() == 24, std::string(mod) + " point count");
    for (const DetectorSpec& d : cfg.detectors) {
      std::string row = std::string(mod) + "/" + std::string(algorithm_name(d.algorithm)) + ":";
      for (std::size_t i = 0; i < cfg.snr_grid_db.size(); ++i) {
        const SerPoint& p = c.at(cfg.snr_grid_db[i], d.algorithm);
        row += fmt(" %.2e", p.ser);
        if (i > 0) {
          const SerPoint& prev = c.at(cfg.snr_grid_db[i - 1], d.algorithm);
          v.require(p.ser <= prev.ser || p.ci95_lo <= prev.ci95_hi,
                    row + " non-increasing at " + fmt("%g dB", p.snr_db));
        }
      }
      v.note(row);
    }
  }

  SimulationConfig ml = base_config(6, 12, "64qam");
  ml.detectors = {{Algorithm::Ml}};
  ml.snr_grid_db = {10.0};
  ml.max_channel_uses = 1;
  bool refused = false;
  try {
    (void)estimate_ser(ml);
  } catch (const GuardExceededError& e) {
    refused = std::string(e.what()).find("64^6") != std::string::npos;
  }
  v.require(refused, "ml refused at 64-QAM, nt = 6");
  return v;
}

Verdict statistics() {
  Verdict v;
  for (const unsigned m : {4u, 16u, 64u}) {
    const Constellation c = build_constellation(m);
    double e = 0.0;
    for (const Complex& p : c.points()) e += std::norm(p);
    v.require(std::abs(e / m - 1.0) <= 1e-12, "unit energy for M=" + std::to_string(m));
  }

  const ChannelModel model = ChannelModel::kronecker(4, 4, 0.7, 0.7);
  const ChannelSampler sampler(model);
  ComplexMatrix acc(4, 4);
  const int draws = 10000;
  for (int t = 0; t < draws; ++t) {
    RngStream rng(31337, t);
    const ComplexMatrix h = sampler(rng);
    const ComplexMatrix hh = mat_mul(h, hermitian(h));
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) acc(i, j) += hh(i, j);
    }
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const double target = std::pow(0.7, std::abs(int(i) - int(j)));
      worst = std::max(worst, std::abs(acc(i, j) / double(draws * model.nt) - target));
    }
  }
  v.note(fmt("max receive-correlation deviation %.4f", worst));
  v.require(worst <= 0.05, "receive correlation within 0.05");

  const double sigma2 = 0.25;
  RngStream rng(99, 0);
  const ComplexVector w = add_awgn(ComplexVector(100000, 0.0), NoiseSpec{sigma2}, rng);
  const double ratio = squared_norm(w) / double(w.size()) / sigma2;
  v.note(fmt("noise variance ratio %.4f", ratio));
  v.require(std::abs(ratio - 1.0) <= 0.05, "noise variance within 5%");
  return v;
}

Verdict determinism() {
  Verdict v;
  std::vector<std::string> outputs;
  for (const char* threads : {"1", "8"}) {
    const std::string path = "acceptance_threads_" + std::string(threads) + ".csv";
    const std::vector<std::string> args = {
        "--nt", "4", "--nr", "4", "--mod", "4qam", "--detectors",
        "zf,mmse,ml,sphere,vblast-zf,vblast-mmse", "--snr-db", "0:20:4", "--trials", "20000",
        "--min-errors", "200", "--rho", "0.7", "--seed", "7", "--threads", threads, "--out", path};
    const CliInvocation inv = parse_invocation(args);
    write_results(estimate_ser(inv.config), inv.output);
    std::FILE* f = std::fopen(path.c_str(), "rb");
    std::string bytes;
    char buf[4096];
    for (std::size_t n; f && (n = std::fread(buf, 1, sizeof buf, f)) > 0;) bytes.append(buf, n);
    if (f) std::fclose(f);
    std::remove(path.c_str());
    outputs.push_back(bytes);
  }
  v.note(std::to_string(outputs[0].size()) + " bytes");
  v.require(!outputs[0].empty(), "output written");
  v.require(outputs[0] == outputs[1], "threads=1 and threads=8 byte-identical");
  return v;
}

} // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc) {
      g_threads = static_cast<unsigned>(std::stoul(argv[++i]));
    }
  }

  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"1 detector ranking at 12 dB, (4,4) 4-QAM", detector_ranking},
      {"2 sphere decoder equals ML", sphere_equals_ml},
      {"3 noiseless exactness", noiseless_exactness},
      {"4 SISO analytic anchor", siso_anchor},
      {"5 correlation degrades ZF", correlation_degrades},
      {"6 (6,12) 16/64-QAM sweeps and ML refusal", large_configurations},
      {"7 constellation and channel statistics", statistics},
      {"8 thread-count determinism", determinism},
  };

  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %s (%.1fs) -- %s\n", v.pass ? "PASS" : "FAIL", name, secs, v.detail.c_str());
    std::fflush(stdout);
    failed += v.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
