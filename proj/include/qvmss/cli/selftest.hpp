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

#pragma once

// Statistical and algebraic self-checks of the scheme, runnable from the CLI.

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "qvmss/fixtures.hpp"
#include "qvmss/image.hpp"
#include "qvmss/metrics.hpp"
#include "qvmss/mss.hpp"
#include "qvmss/qsim.hpp"

namespace qvmss::cli {

struct SelftestOptions {
  std::uint64_t seed = 0;
  bool inject_fault = false;  // flip one share bit before the round-trip check
  unsigned threads = 0;
  std::size_t side = 128;
};

struct PropertyResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace detail {

inline std::string num(double v, int precision = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision) << v;
  return os.str();
}

// 4-sigma band for a Bernoulli(1/2) frequency over n samples.
inline double four_sigma(std::size_t n) { return 4.0 * 0.5 / std::sqrt(static_cast<double>(n)); }

}  // namespace detail

inline std::vector<PropertyResult> run_selftest(const SelftestOptions& opts) {
  std::vector<PropertyResult> results;
  const std::size_t side = opts.side;
  const std::size_t pixels = side * side;

  // Transmitter state is a two-branch, fully complementary superposition.
  {
    bool ok = true;
    std::size_t checked = 0;
    for (int n = 1; n <= 4; ++n) {
      for (unsigned g = 0; g < (1U << n); ++g) {
        std::vector<std::uint8_t> bits(n);
        for (int k = 0; k < n; ++k) bits[k] = (g >> k) & 1U;
        const auto sup = qsim::nonzero_support(mss::transmitter_state(bits), 1e-12);
        const std::uint64_t all = (std::uint64_t{1} << (n + 1)) - 1;
        ok = ok && sup.size() == 2 && (sup[0].index ^ sup[1].index) == all &&
             std::abs(sup[0].probability - 0.5) <= 1e-12 &&
             std::abs(sup[1].probability - 0.5) <= 1e-12;
        ++checked;
      }
    }
    results.push_back({"two-branch transmitter support", ok,
                       std::to_string(checked) + " secret-bit vectors, n <= 4"});
  }

  const std::vector<BinaryImage> secrets = {fixtures::random_image(opts.seed ^ 0xA5A5U, side, side),
                                            fixtures::text_image("QV\nMSS", side, side)};
  mss::SchemeConfig cfg;
  cfg.arity_n = 2;
  cfg.master_seed = opts.seed;
  cfg.threads = opts.threads;
  auto set = mss::encrypt(secrets, cfg);

  {
    const double band = detail::four_sigma(pixels);
    bool ok = std::abs(metrics::ones_fraction(set.unishare) - 0.5) <= band;
    std::string d = "U=" + detail::num(metrics::ones_fraction(set.unishare));
    results.push_back({"UniShare uniformity", ok, d + " band +/-" + detail::num(band)});
    ok = true;
    d.clear();
    for (std::size_t k = 0; k < set.shares.size(); ++k) {
      const double f = metrics::ones_fraction(set.shares[k]);
      ok = ok && std::abs(f - 0.5) <= band;
      d += (k ? " S" : "S") + std::to_string(k + 1) + "=" + detail::num(f);
    }
    results.push_back({"share uniformity", ok, d});
  }

  {
    const auto expected = mss::classical_encrypt(secrets, set.unishare);
    bool ok = expected == set.shares;
    results.push_back({"circuit/oracle equivalence", ok, "n=2, " + std::to_string(pixels) + " px"});
  }

  {
    bool ok = xor_images(set.shares[0], set.shares[1]) == xor_images(secrets[0], secrets[1]);
    results.push_back({"pairwise XOR identity", ok, "S1^S2 == G1^G2"});
  }

  {
    mss::ShareSet tampered = set;
    if (opts.inject_fault) tampered.shares[0].flip(pixels / 2);
    bool ok = mss::decrypt_all(tampered, cfg) == secrets;
    std::size_t runs = 1;
    for (int n = 1; n <= 4; ++n) {
      std::vector<BinaryImage> gs;
      for (int k = 0; k < n; ++k) gs.push_back(fixtures::random_image(opts.seed + 31 * k + n, 32, 32));
      mss::SchemeConfig c = cfg;
      c.arity_n = n;
      c.master_seed = opts.seed + static_cast<std::uint64_t>(n);
      ok = ok && mss::decrypt_all(mss::encrypt(gs, c), c) == gs;
      ++runs;
    }
    results.push_back({"lossless round trip", ok,
                       std::to_string(runs) + " runs" + (opts.inject_fault ? ", fault injected" : "")});
  }

  {
    bool ok = true;
    for (std::uint8_t u = 0; u < 2; ++u)
      for (std::uint8_t s = 0; s < 2; ++s)
        ok = ok && mss::decode_pixel(u, s, true) == mss::decode_pixel(u, s, false) &&
             mss::decode_pixel(u, s, false) == (u ^ s);
    results.push_back({"decoder path agreement", ok, "4 input pairs"});
  }

  {
    const auto wrong_u = fixtures::random_image(~opts.seed, side, side);
    const auto rec = mss::decrypt(wrong_u, set.shares[0], cfg);
    const double f = metrics::mismatch_fraction(rec, secrets[0]);
    const bool ok = std::abs(f - 0.5) <= detail::four_sigma(pixels);
    results.push_back({"wrong-key noise", ok, "mismatch=" + detail::num(f)});
  }

  {
    mss::SchemeConfig serial = cfg;
    serial.threads = 1;
    mss::SchemeConfig parallel = cfg;
    parallel.threads = 4;
    const bool ok = mss::encrypt(secrets, serial) == mss::encrypt(secrets, parallel);
    results.push_back({"serial/parallel determinism", ok, "1 vs 4 workers"});
  }

  {
    const BinaryImage zero(side, side, 0), one(side, side, 1);
    const auto gz = metrics::intensity_of(zero);
    const auto go = metrics::intensity_of(one);
    bool ok = metrics::mse(gz, go) == 65025.0 && std::isinf(metrics::psnr(gz, gz));
    const double mf = metrics::mismatch_fraction(secrets[0], set.shares[0]);
    const double p = metrics::psnr(metrics::intensity_of(secrets[0]),
                                   metrics::intensity_of(set.shares[0]));
    ok = ok && std::abs(p + 10.0 * std::log10(mf)) <= 1e-9;
    ok = ok && metrics::ssim_global(gz, gz) == 1.0;
    results.push_back({"metric algebra", ok, "psnr(G1,S1)=" + detail::num(p, 4) + " dB"});
  }

  return results;
}

}  // namespace qvmss::cli
