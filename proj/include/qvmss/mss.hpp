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

// (n, n+1) universal-share multi-secret sharing of binary images.
//
// Every pixel is encrypted by its own (n+1)-qubit circuit:
//
//   q0      |0> --H------*------*--- ... --[M] -> U
//   q1      |0> --X^g1--(+)-----|--- ... --[M] -> S_1
//   q2      |0> --X^g2---------(+)-- ... --[M] -> S_2
//   ...
//
// The Hadamard on q0 supplies the random mask bit and each CNOT writes
// g_k XOR u into its secret qubit. Decryption is a CNOT from the UniShare bit
// onto the share bit, which acts on basis states and is deterministic.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qvmss/errors.hpp"
#include "qvmss/image.hpp"
#include "qvmss/parallel.hpp"
#include "qvmss/qsim.hpp"
#include "qvmss/rng.hpp"

namespace qvmss::mss {

inline constexpr int kMaxArity = 16;

struct SchemeConfig {
  int arity_n = 2;
  std::uint64_t master_seed = 0;
  bool verify_with_oracle = false;
  bool use_circuit_decoder = false;
  unsigned threads = 1;  // 0 = hardware concurrency
};

struct PixelOutcome {
  std::uint8_t u = 0;
  std::vector<std::uint8_t> s;

  friend bool operator==(const PixelOutcome&, const PixelOutcome&) = default;
};

struct ShareSet {
  int arity_n = 0;
  BinaryImage unishare;
  std::vector<BinaryImage> shares;

  std::size_t width() const noexcept { return unishare.width(); }
  std::size_t height() const noexcept { return unishare.height(); }

  friend bool operator==(const ShareSet&, const ShareSet&) = default;
};

namespace detail {

inline void check_arity(std::size_t n) {
  if (n < 1 || n > static_cast<std::size_t>(kMaxArity)) {
    throw ConfigError("scheme arity " + std::to_string(n) + " outside [1, " +
                      std::to_string(kMaxArity) + "]");
  }
}

inline void check_bits(std::span<const std::uint8_t> bits) {
  for (auto b : bits) {
    if (b > 1) throw ConfigError("secret bit outside {0,1}");
  }
}

inline void validate(const ShareSet& set) {
  if (set.arity_n < 1 || static_cast<std::size_t>(set.arity_n) != set.shares.size()) {
    throw ConfigError("share set arity " + std::to_string(set.arity_n) + " but " +
                      std::to_string(set.shares.size()) + " shares");
  }
  for (const auto& s : set.shares) require_same_shape(set.unishare, s, "share set");
}

}  // namespace detail

// Transmitter circuit up to (not including) measurement.
inline qsim::StateVector transmitter_state(std::span<const std::uint8_t> secret_bits) {
  detail::check_arity(secret_bits.size());
  detail::check_bits(secret_bits);
  const int n = static_cast<int>(secret_bits.size());
  qsim::StateVector reg(n + 1);
  for (int k = 0; k < n; ++k) {
    if (secret_bits[k]) reg.apply(qsim::GateOp::x(k + 1));
  }
  reg.apply(qsim::GateOp::h(0));
  for (int k = 0; k < n; ++k) reg.apply(qsim::GateOp::cnot(0, k + 1));
  return reg;
}

// Runs the transmitter circuit for one pixel and measures it once.
inline PixelOutcome encode_pixel(std::span<const std::uint8_t> secret_bits, RngStream& rng) {
  const auto state = transmitter_state(secret_bits);
  const auto m = qsim::measure_all(state, rng);
  PixelOutcome out;
  out.u = m.bit(0);
  out.s.resize(secret_bits.size());
  for (std::size_t k = 0; k < secret_bits.size(); ++k) out.s[k] = m.bit(static_cast<int>(k) + 1);
  return out;
}

// S_k = G_k XOR mask, pixelwise.
inline std::vector<BinaryImage> classical_encrypt(std::span<const BinaryImage> secrets,
                                                  const BinaryImage& mask) {
  std::vector<BinaryImage> out;
  out.reserve(secrets.size());
  for (const auto& g : secrets) out.push_back(xor_images(g, mask));
  return out;
}

inline ShareSet encrypt(std::span<const BinaryImage> secrets, const SchemeConfig& config) {
  if (secrets.empty()) throw ConfigError("no secret images");
  detail::check_arity(secrets.size());
  if (static_cast<std::size_t>(config.arity_n) != secrets.size()) {
    throw ConfigError("config arity " + std::to_string(config.arity_n) + " but " +
                      std::to_string(secrets.size()) + " secrets");
  }
  for (const auto& g : secrets) require_same_shape(secrets[0], g, "secret images");

  const std::size_t n = secrets.size();
  const std::size_t w = secrets[0].width();
  const std::size_t h = secrets[0].height();
  const std::size_t pixels = w * h;

  // Flat buffers written at disjoint offsets by the workers.
  std::vector<std::uint8_t> u_bits(pixels);
  std::vector<std::vector<std::uint8_t>> s_bits(n, std::vector<std::uint8_t>(pixels));

  parallel_for_chunks(pixels, config.threads, [&](std::size_t begin, std::size_t end) {
    std::vector<std::uint8_t> g(n);
    for (std::size_t p = begin; p < end; ++p) {
      for (std::size_t k = 0; k < n; ++k) g[k] = secrets[k][p];
      RngStream rng(config.master_seed, p);
      const auto out = encode_pixel(g, rng);
      u_bits[p] = out.u;
      for (std::size_t k = 0; k < n; ++k) s_bits[k][p] = out.s[k];
    }
  });

  ShareSet set;
  set.arity_n = static_cast<int>(n);
  set.unishare = BinaryImage(w, h, std::move(u_bits));
  set.shares.reserve(n);
  for (auto& bits : s_bits) set.shares.emplace_back(w, h, std::move(bits));

  if (config.verify_with_oracle) {
    const auto expected = classical_encrypt(secrets, set.unishare);
    for (std::size_t k = 0; k < n; ++k) {
      if (expected[k] != set.shares[k]) {
        throw OracleMismatch("share " + std::to_string(k + 1) +
                             " differs from the classical XOR oracle");
      }
    }
  }
  return set;
}

// Recovers g' = s XOR u. The circuit path loads |u, s>, applies CNOT(0, 1)
// and reads qubit 1.
inline std::uint8_t decode_pixel(std::uint8_t u, std::uint8_t s, bool use_circuit) {
  u &= 1;
  s &= 1;
  if (!use_circuit) return u ^ s;
  qsim::StateVector reg(2);
  if (u) reg.apply(qsim::GateOp::x(0));
  if (s) reg.apply(qsim::GateOp::x(1));
  reg.apply(qsim::GateOp::cnot(0, 1));
  RngStream unused(0, 0);  // basis state: the draw does not affect the outcome
  return qsim::measure_all(reg, unused).bit(1);
}

// Wrong UniShares are not detected; they decode to noise.
inline BinaryImage decrypt(const BinaryImage& unishare, const BinaryImage& share,
                           const SchemeConfig& config) {
  require_same_shape(unishare, share, "decrypt");
  std::vector<std::uint8_t> out(share.size());
  parallel_for_chunks(out.size(), config.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      out[p] = decode_pixel(unishare[p], share[p], config.use_circuit_decoder);
    }
  });
  return BinaryImage(share.width(), share.height(), std::move(out));
}

inline std::vector<BinaryImage> decrypt_all(const ShareSet& set, const SchemeConfig& config) {
  detail::validate(set);
  std::vector<BinaryImage> out;
  out.reserve(set.shares.size());
  for (const auto& s : set.shares) out.push_back(decrypt(set.unishare, s, config));
  return out;
}

}  // namespace qvmss::mss
