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

// Minimal statevector simulator: X, Z, H and CNOT on registers of up to
// 24 qubits, plus Born-rule sampling of a full measurement.
//
// Basis convention: qubit 0 is the most significant bit of the basis index,
// so index i of a k-qubit register reads q0 q1 ... q(k-1) from left to right.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qvmss/errors.hpp"
#include "qvmss/rng.hpp"

namespace qvmss::qsim {

using Amplitude = std::complex<double>;

inline constexpr int kMaxQubits = 24;
inline constexpr double kIdentityTolerance = 1e-12;
inline constexpr double kNormTolerance = 1e-9;

enum class GateKind { PauliX, PauliZ, Hadamard, Cnot };

struct GateOp {
  GateKind kind;
  int target;
  int control = -1;  // Cnot only

  static constexpr GateOp x(int target) { return {GateKind::PauliX, target}; }
  static constexpr GateOp z(int target) { return {GateKind::PauliZ, target}; }
  static constexpr GateOp h(int target) { return {GateKind::Hadamard, target}; }
  static constexpr GateOp cnot(int control, int target) {
    return {GateKind::Cnot, target, control};
  }

  friend bool operator==(const GateOp&, const GateOp&) = default;
};

inline std::string to_string(const GateOp& g) {
  switch (g.kind) {
    case GateKind::PauliX: return "X(" + std::to_string(g.target) + ")";
    case GateKind::PauliZ: return "Z(" + std::to_string(g.target) + ")";
    case GateKind::Hadamard: return "H(" + std::to_string(g.target) + ")";
    case GateKind::Cnot:
      return "CNOT(" + std::to_string(g.control) + "," + std::to_string(g.target) + ")";
  }
  return "?";
}

class StateVector {
 public:
  // |0...0> on `num_qubits` qubits.
  explicit StateVector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
      throw SizeError("register size " + std::to_string(num_qubits) + " outside [1, " +
                      std::to_string(kMaxQubits) + "]");
    }
    amps_.assign(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
    amps_[0] = 1.0;
  }

  // Arbitrary amplitudes; the length must be a power of two. Normalization is
  // not enforced here so that guard paths can be exercised.
  static StateVector from_amplitudes(std::vector<Amplitude> amps) {
    std::size_t n = amps.size();
    int k = 0;
    while ((std::size_t{1} << k) < n) ++k;
    if (n < 2 || (std::size_t{1} << k) != n) {
      throw SizeError("amplitude count " + std::to_string(n) +
                      " is not a power of two >= 2");
    }
    StateVector s(k);
    s.amps_ = std::move(amps);
    return s;
  }

  // Computational basis state |index>.
  static StateVector basis(int num_qubits, std::uint64_t index) {
    StateVector s(num_qubits);
    if (index >= s.dimension()) throw IndexError("basis index out of range");
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
  }

  int num_qubits() const noexcept { return num_qubits_; }
  std::size_t dimension() const noexcept { return amps_.size(); }
  const std::vector<Amplitude>& amplitudes() const noexcept { return amps_; }
  const Amplitude& operator[](std::size_t i) const { return amps_[i]; }

  double norm_squared() const noexcept {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }

  // Bit mask of qubit q inside a basis index.
  std::size_t mask_of(int q) const noexcept {
    return std::size_t{1} << (num_qubits_ - 1 - q);
  }

  void apply(const GateOp& gate) {
    check(gate);
    const std::size_t t = mask_of(gate.target);
    const std::size_t dim = amps_.size();
    switch (gate.kind) {
      case GateKind::PauliX:
        for (std::size_t i = 0; i < dim; ++i)
          if (!(i & t)) std::swap(amps_[i], amps_[i | t]);
        break;
      case GateKind::PauliZ:
        for (std::size_t i = 0; i < dim; ++i)
          if (i & t) amps_[i] = -amps_[i];
        break;
      case GateKind::Hadamard: {
        const double r = 1.0 / std::sqrt(2.0);
        for (std::size_t i = 0; i < dim; ++i) {
          if (i & t) continue;
          const Amplitude a0 = amps_[i];
          const Amplitude a1 = amps_[i | t];
          amps_[i] = r * (a0 + a1);
          amps_[i | t] = r * (a0 - a1);
        }
        break;
      }
      case GateKind::Cnot: {
        const std::size_t c = mask_of(gate.control);
        for (std::size_t i = 0; i < dim; ++i)
          if ((i & c) && !(i & t)) std::swap(amps_[i], amps_[i | t]);
        break;
      }
    }
  }

 private:
  void check(const GateOp& g) const {
    auto valid = [&](int q) { return q >= 0 && q < num_qubits_; };
    if (!valid(g.target)) {
      throw IndexError(to_string(g) + ": target outside " + std::to_string(num_qubits_) +
                       "-qubit register");
    }
    if (g.kind == GateKind::Cnot) {
      if (!valid(g.control)) {
        throw IndexError(to_string(g) + ": control outside " + std::to_string(num_qubits_) +
                         "-qubit register");
      }
      if (g.control == g.target) throw IndexError(to_string(g) + ": control equals target");
    }
  }

  int num_qubits_;
  std::vector<Amplitude> amps_;
};

inline StateVector new_register(int num_qubits) { return StateVector(num_qubits); }

inline StateVector apply_gate(StateVector state, const GateOp& gate) {
  state.apply(gate);
  return state;
}

// Outcome of measuring every qubit once.
struct Measurement {
  std::uint64_t index = 0;
  int num_qubits = 0;

  std::uint8_t bit(int q) const noexcept {
    return static_cast<std::uint8_t>((index >> (num_qubits - 1 - q)) & 1U);
  }

  // q0 first.
  std::string bitstring() const {
    std::string s(static_cast<std::size_t>(num_qubits), '0');
    for (int q = 0; q < num_qubits; ++q) s[q] = bit(q) ? '1' : '0';
    return s;
  }
};

// Samples a basis index with probability |amp|^2. Exactly one uniform variate
// is drawn. With at most two nonzero amplitudes the draw picks between them
// directly; otherwise it walks the cumulative distribution in basis order.
// The state is not collapsed.
inline Measurement measure_all(const StateVector& state, RngStream& rng) {
  const double norm = state.norm_squared();
  if (!(std::abs(norm - 1.0) <= kNormTolerance)) {
    throw StateError("cannot measure unnormalized state (norm^2 = " + std::to_string(norm) + ")");
  }
  const auto& amps = state.amplitudes();
  const double u = rng.next_uniform();

  std::size_t first = amps.size(), second = amps.size(), nonzero = 0;
  for (std::size_t i = 0; i < amps.size() && nonzero <= 2; ++i) {
    if (std::norm(amps[i]) > 0.0) {
      (nonzero == 0 ? first : second) = i;
      ++nonzero;
    }
  }

  std::uint64_t picked = 0;
  if (nonzero == 1) {
    picked = first;
  } else if (nonzero == 2) {
    const double p0 = std::norm(amps[first]);
    const double p1 = std::norm(amps[second]);
    picked = (u * (p0 + p1) < p0) ? first : second;
  } else {
    double acc = 0.0;
    std::size_t last = 0;
    picked = amps.size();
    for (std::size_t i = 0; i < amps.size(); ++i) {
      const double p = std::norm(amps[i]);
      if (p <= 0.0) continue;
      last = i;
      acc += p;
      if (u * norm < acc) {
        picked = i;
        break;
      }
    }
    if (picked == amps.size()) picked = last;  // rounding at the top of the CDF
  }
  return Measurement{picked, state.num_qubits()};
}

struct SupportEntry {
  std::uint64_t index;
  double probability;

  friend bool operator==(const SupportEntry&, const SupportEntry&) = default;
};

// Basis states whose probability exceeds `epsilon`, in index order.
inline std::vector<SupportEntry> nonzero_support(const StateVector& state, double epsilon) {
  std::vector<SupportEntry> out;
  const auto& amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double p = std::norm(amps[i]);
    if (p > epsilon) out.push_back({i, p});
  }
  return out;
}

}  // namespace qvmss::qsim
