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

#include <cerrno>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "qvmss/errors.hpp"
#include "qvmss/pbm.hpp"

namespace qvmss::cli {

enum ExitCode : int {
  kOk = 0,
  kPropertyFailure = 1,
  kIoError = 2,
  kShapeMismatch = 3,
};

inline constexpr const char* kSeedEnv = "QVMSS_SEED";

struct CliConfig {
  std::string subcommand;
  std::vector<std::filesystem::path> inputs;   // secrets (encrypt), shares (decrypt, metrics --pairs)
  std::optional<std::filesystem::path> unishare;
  std::vector<std::filesystem::path> secrets;  // metrics --pairs
  std::filesystem::path out_dir = ".";
  std::optional<std::uint64_t> seed;
  pbm::Variant format = pbm::Variant::P4;
  bool emit_json = false;
  bool pairs = false;
  bool circuit_decoder = false;
  bool inject_fault = false;  // selftest negative control
  std::size_t size = 512;     // demo
  unsigned threads = 0;       // 0 = hardware concurrency
};

inline std::uint64_t parse_seed(const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw ConfigError("seed must be an unsigned 64-bit integer, got '" + text + "'");
  }
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
  if (errno == ERANGE || *end != '\0') throw ConfigError("seed out of range: '" + text + "'");
  return static_cast<std::uint64_t>(v);
}

// --seed, then $QVMSS_SEED, then fresh OS entropy.
inline std::uint64_t resolve_seed(const CliConfig& config) {
  if (config.seed) return *config.seed;
  if (const char* env = std::getenv(kSeedEnv); env && *env) return parse_seed(env);
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

}  // namespace qvmss::cli
