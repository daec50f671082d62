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

// Staged output: files are written under temporary names and renamed into
// place only after every file of a command has been produced.

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "qvmss/errors.hpp"

namespace qvmss::cli {

class StagedWriter {
 public:
  explicit StagedWriter(std::filesystem::path dir) : dir_(std::move(dir)) {}
  StagedWriter(const StagedWriter&) = delete;
  StagedWriter& operator=(const StagedWriter&) = delete;

  ~StagedWriter() {
    std::error_code ec;
    for (const auto& [tmp, _] : staged_) std::filesystem::remove(tmp, ec);
  }

  void stage(const std::string& name, std::string_view bytes) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw Error("cannot create " + dir_.string() + ": " + ec.message());
    const auto final_path = dir_ / name;
    auto tmp = dir_ / ("." + name + ".partial");
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) throw Error("write failed: " + tmp.string());
    staged_.emplace_back(std::move(tmp), final_path);
  }

  void commit() {
    for (const auto& [tmp, final_path] : staged_) {
      std::error_code ec;
      std::filesystem::rename(tmp, final_path, ec);
      if (ec) throw Error("cannot rename into " + final_path.string() + ": " + ec.message());
    }
    staged_.clear();
  }

 private:
  std::filesystem::path dir_;
  std::vector<std::pair<std::filesystem::path, std::filesystem::path>> staged_;
};

}  // namespace qvmss::cli
