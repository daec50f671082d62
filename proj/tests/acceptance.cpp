// Copyright 2026 The qvmss Authors
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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all
// criteria pass.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qvmss/cli/commands.hpp"
#include "qvmss/fixtures.hpp"
#include "qvmss/image.hpp"
#include "qvmss/metrics.hpp"
#include "qvmss/mss.hpp"
#include "qvmss/pbm.hpp"

using namespace qvmss;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<BinaryImage> random_secrets(int n, std::size_t side, std::uint64_t seed) {
  std::vector<BinaryImage> out;
  for (int k = 0; k < n; ++k) out.push_back(fixtures::random_image(seed * 131 + k + 1, side, side));
  return out;
}

mss::SchemeConfig scheme(int n, std::uint64_t seed, unsigned threads = 0) {
  mss::SchemeConfig c;
  c.arity_n = n;
  c.master_seed = seed;
  c.threads = threads;
  return c;
}

struct Outcome {
  bool pass;
  std::string detail;
};

// Instances checked by the XOR-identity criterion, filled by earlier criteria.
std::size_t g_xor_instances = 0;
bool g_xor_ok = true;

void note_xor_identity(const std::vector<BinaryImage>& g, const mss::ShareSet& set) {
  for (std::size_t j = 0; j < g.size(); ++j) {
    for (std::size_t k = j + 1; k < g.size(); ++k) {
      g_xor_ok = g_xor_ok && xor_images(set.shares[j], set.shares[k]) == xor_images(g[j], g[k]);
      ++g_xor_instances;
    }
  }
}

Outcome lossless_recovery() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::size_t runs = 0;
  auto check = [&](int n, std::size_t side, std::uint64_t seed) {
    const auto g = random_secrets(n, side, seed);
    const auto cfg = scheme(n, seed);
    const auto set = mss::encrypt(g, cfg);
    const auto rec = mss::decrypt_all(set, cfg);
    note_xor_identity(g, set);
    ok = ok && rec == g;
    for (std::size_t k = 0; k < g.size(); ++k) {
      const auto a = metrics::intensity_of(g[k]);
      const auto b = metrics::intensity_of(rec[k]);
      const auto rho = metrics::correlation(a, b);
      ok = ok && metrics::ssim_global(a, b) == 1.0 && rho.has_value() && *rho == 1.0;
    }
    ++runs;
  };
  for (int n = 1; n <= 4; ++n)
    for (std::size_t side : {8u, 64u})
      for (std::uint64_t seed = 0; seed < 10; ++seed) check(n, side, seed);
  for (std::uint64_t seed = 0; seed < 10; ++seed) check(2, 512, seed);
  const double secs = seconds_since(t0);
  ok = ok && secs < 60.0;
  std::ostringstream d;
  d << runs << " runs bit-exact with SSIM=1 and rho=1, " << std::fixed;
  d.precision(2);
  d << secs << " s (limit 60 s)";
  return {ok, d.str()};
}

Outcome oracle_equivalence() {
  bool ok = true;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = random_secrets(2, 64, seed + 500);
    const auto set = mss::encrypt(g, scheme(2, seed));
    note_xor_identity(g, set);
    ok = ok && mss::classical_encrypt(g, set.unishare) == set.shares;
  }
  return {ok, "64x64, n=2, 10 seeds"};
}

Outcome two_branch_state() {
  bool ok = true;
  std::size_t vectors = 0;
  for (int n = 1; n <= 4; ++n) {
    const std::uint64_t all = (std::uint64_t{1} << (n + 1)) - 1;
    for (unsigned v = 0; v < (1U << n); ++v) {
      std::vector<std::uint8_t> bits(n);
      for (int k = 0; k < n; ++k) bits[k] = (v >> k) & 1U;
      const auto sup = qsim::nonzero_support(mss::transmitter_state(bits), 1e-12);
      ok = ok && sup.size() == 2 && (sup[0].index ^ sup[1].index) == all &&
           std::abs(sup[0].probability - 0.5) <= 1e-12 &&
           std::abs(sup[1].probability - 0.5) <= 1e-12;
      ++vectors;
    }
  }
  return {ok, std::to_string(vectors) + " secret-bit vectors"};
}

Outcome uniformity() {
  const std::size_t side = 256;
  int failed_runs = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::vector<BinaryImage> g = {fixtures::text_image("SECRET", side, side),
                                        fixtures::checkerboard(side, side)};
    const auto set = mss::encrypt(g, scheme(2, 9000 + seed));
    bool run_ok = true;
    auto check = [&](const BinaryImage& img) {
      const double dev = std::abs(metrics::ones_fraction(img) - 0.5);
      worst = std::max(worst, dev);
      run_ok = run_ok && dev <= 0.008;
    };
    check(set.unishare);
    for (const auto& s : set.shares) check(s);
    failed_runs += run_ok ? 0 : 1;
  }
  std::ostringstream d;
  d << failed_runs << "/10 runs outside 0.5+/-0.008, worst deviation " << worst;
  return {failed_runs <= 1, d.str()};
}

Outcome secrecy_statistics() {
  bool ok = true;
  double psnr_lo = 1e9, psnr_hi = -1e9, rho_max = 0.0, mm_dev = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = random_secrets(2, 256, seed + 700);
    const auto set = mss::encrypt(g, scheme(2, seed + 70));
    for (const auto& gk : g) {
      for (const auto& sj : set.shares) {
        const auto r = metrics::report(gk, sj);
        psnr_lo = std::min(psnr_lo, r.psnr_db);
        psnr_hi = std::max(psnr_hi, r.psnr_db);
        rho_max = std::max(rho_max, std::abs(r.correlation.value_or(1.0)));
        mm_dev = std::max(mm_dev, std::abs(r.mismatch_fraction - 0.5));
        ok = ok && std::abs(r.psnr_db - 3.01) <= 0.3 && r.correlation &&
             std::abs(*r.correlation) < 0.05 && std::abs(r.mismatch_fraction - 0.5) <= 0.02;
      }
    }
  }
  std::ostringstream d;
  d << "PSNR in [" << psnr_lo << ", " << psnr_hi << "] dB, max |rho| " << rho_max
    << ", max |mismatch-0.5| " << mm_dev;
  return {ok, d.str()};
}

Outcome wrong_key_noise() {
  bool ok = true;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = random_secrets(2, 256, seed + 900);
    const auto set = mss::encrypt(g, scheme(2, seed));
    const auto wrong_u = fixtures::random_image(0xC0FFEE + seed, 256, 256);
    for (std::size_t k = 0; k < g.size(); ++k) {
      const auto rec = mss::decrypt(wrong_u, set.shares[k], scheme(2, seed));
      const double dev = std::abs(metrics::mismatch_fraction(rec, g[k]) - 0.5);
      worst = std::max(worst, dev);
      ok = ok && dev <= 0.02;
    }
  }
  return {ok, "max |mismatch-0.5| = " + std::to_string(worst)};
}

Outcome pairwise_xor() {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::vector<BinaryImage> g = {fixtures::text_image("XOR", 96, 64),
                                        fixtures::random_image(seed, 96, 64)};
    note_xor_identity(g, mss::encrypt(g, scheme(2, seed)));
  }
  return {g_xor_ok && g_xor_instances > 0,
          std::to_string(g_xor_instances) + " share pairs checked"};
}

Outcome metric_algebra() {
  bool ok = true;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto a = fixtures::random_image(seed, 33, 21);
    auto b = fixtures::random_image(seed + 1000, 33, 21);
    const double mf = metrics::mismatch_fraction(a, b);
    if (mf == 0.0) continue;
    const double p = metrics::psnr(metrics::intensity_of(a), metrics::intensity_of(b));
    worst = std::max(worst, std::abs(p + 10.0 * std::log10(mf)));
  }
  // Single differing pixel: the smallest nonzero mismatch.
  BinaryImage a(64, 64, 0), b(64, 64, 0);
  b.set(17, 1);
  worst = std::max(worst, std::abs(metrics::psnr(metrics::intensity_of(a), metrics::intensity_of(b)) +
                                   10.0 * std::log10(metrics::mismatch_fraction(a, b))));
  ok = ok && worst <= 1e-9;

  const auto zero = metrics::intensity_of(BinaryImage(37, 11, 0));
  const auto full = metrics::intensity_of(BinaryImage(37, 11, 1));
  ok = ok && metrics::mse(zero, full) == 65025.0;
  const double same = metrics::psnr(full, full);
  ok = ok && std::isinf(same) && same > 0;
  std::ostringstream d;
  d << "max |psnr + 10 log10(mismatch)| = " << std::scientific << worst;
  return {ok, d.str()};
}

Outcome demo_determinism() {
  const fs::path root = fs::temp_directory_path() / "qvmss_acceptance_demo";
  fs::remove_all(root);
  auto run = [&](const std::string& name, unsigned threads) {
    cli::CliConfig c;
    c.subcommand = "demo";
    c.seed = 7;
    c.threads = threads;
    c.out_dir = root / name;
    std::ostringstream out, err;
    if (cli::cmd_demo(c, out, err) != cli::kOk) throw Error("demo failed: " + err.str());
    return nlohmann::json::parse(pbm::read_file_bytes(root / name / "manifest.json"));
  };
  const auto first = run("a", 1);
  const auto second = run("b", 1);
  const auto parallel = run("c", 8);
  fs::remove_all(root);
  const bool ok = first == second && first == parallel && first["files"].size() >= 7;
  return {ok, "seed 7, 512x512, " + std::to_string(first["files"].size()) +
                  " digests; 1 vs 1 vs 8 workers"};
}

Outcome desk_performance() {
  const auto g = random_secrets(2, 512, 12345);
  const auto t0 = Clock::now();
  const auto set = mss::encrypt(g, scheme(2, 1, 1));
  const double secs = seconds_since(t0);
  const bool ok = secs < 10.0 && set.shares.size() == 2;
  std::ostringstream d;
  d.precision(3);
  d << std::fixed << secs << " s single-threaded (limit 10 s)";
  return {ok, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 lossless recovery", lossless_recovery},
      {"2 circuit/classical oracle equivalence", oracle_equivalence},
      {"3 two-branch transmitter state", two_branch_state},
      {"4 share/UniShare uniformity", uniformity},
      {"5 secrecy statistics", secrecy_statistics},
      {"6 wrong-key noise", wrong_key_noise},
      {"7 pairwise XOR identity", pairwise_xor},
      {"8 metric algebra", metric_algebra},
      {"9 demo determinism", demo_determinism},
      {"10 desk-scale performance", desk_performance},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o{false, ""};
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << " -- " << o.detail << std::endl;
    failures += o.pass ? 0 : 1;
  }
  std::cout << (failures == 0 ? "all acceptance criteria passed" : "acceptance failures: " +
                                                                       std::to_string(failures))
            << std::endl;
  return failures == 0 ? 0 : 1;
}
