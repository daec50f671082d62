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

#include <cstdint>

namespace qvmss {

// Counter-based generator: the n-th draw of a stream is a pure function of
// (master_seed, stream_index, n), so per-pixel streams are independent of
// scheduling order.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index) noexcept
      : master_seed_(master_seed),
        stream_index_(stream_index),
        key_(mix(mix(master_seed ^ kSeedSalt) + stream_index * kGolden)) {}

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::uint64_t stream_index() const noexcept { return stream_index_; }
  std::uint64_t draws() const noexcept { return counter_; }

  std::uint64_t next_u64() noexcept { return mix(key_ + (++counter_) * kGolden); }

  // Uniform in [0, 1) with 53 random bits.
  double next_uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // SplitMix64 finalizer.
  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kSeedSalt = 0x5851F42D4C957F2DULL;

  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace qvmss
