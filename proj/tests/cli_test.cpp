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

#include "qvmss/cli/commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "qvmss/fixtures.hpp"
#include "qvmss/pbm.hpp"

using namespace qvmss;
using namespace qvmss::cli;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    root_ = fs::temp_directory_path() / ("qvmss_cli_" + std::string(info->name()));
    fs::remove_all(root_);
    fs::create_directories(root_);
    unsetenv(kSeedEnv);
  }
  void TearDown() override { fs::remove_all(root_); }

  fs::path write_image(const std::string& name, const BinaryImage& img) {
    const auto p = root_ / name;
    std::ofstream(p, std::ios::binary) << pbm::write_pbm(img, pbm::Variant::P4);
    return p;
  }

  int run(const CliConfig& cfg) {
    out_.str("");
    err_.str("");
    return dispatch(cfg, out_, err_);
  }

  static std::string slurp(const fs::path& p) { return pbm::read_file_bytes(p); }
  static nlohmann::json manifest(const fs::path& dir) {
    return nlohmann::json::parse(slurp(dir / "manifest.json"));
  }

  fs::path root_;
  std::ostringstream out_, err_;
};

CliConfig encrypt_cfg(std::vector<fs::path> inputs, fs::path out, std::optional<std::uint64_t> seed) {
  CliConfig c;
  c.subcommand = "encrypt";
  c.inputs = std::move(inputs);
  c.out_dir = std::move(out);
  c.seed = seed;
  c.threads = 1;
  return c;
}

}  // namespace

TEST_F(CliTest, EncryptWritesSharesAndManifestReproducibly) {
  const auto g1 = write_image("g1.pbm", fixtures::text_image("A", 40, 24));
  const auto g2 = write_image("g2.pbm", fixtures::random_image(2, 40, 24));
  ASSERT_EQ(run(encrypt_cfg({g1, g2}, root_ / "out", 42)), kOk) << err_.str();
  EXPECT_NE(out_.str().find("seed: 42"), std::string::npos);
  for (const char* f : {"U.pbm", "S1.pbm", "S2.pbm", "manifest.json"})
    EXPECT_TRUE(fs::exists(root_ / "out" / f)) << f;

  const auto m = manifest(root_ / "out");
  EXPECT_EQ(m["seed"], 42u);
  EXPECT_EQ(m["arity"], 2);
  EXPECT_EQ(m["width"], 40);
  EXPECT_EQ(m["height"], 24);
  EXPECT_EQ(m["files"].size(), 3u);
  EXPECT_EQ(m["files"]["U.pbm"], sha256_digest(slurp(root_ / "out" / "U.pbm")));

  auto again = encrypt_cfg({g1, g2}, root_ / "again", 42);
  again.threads = 4;
  ASSERT_EQ(run(again), kOk);
  for (const char* f : {"U.pbm", "S1.pbm", "S2.pbm", "manifest.json"})
    EXPECT_EQ(slurp(root_ / "out" / f), slurp(root_ / "again" / f)) << f;
}

TEST_F(CliTest, EncryptSingleSecret) {
  const auto g1 = write_image("g1.pbm", fixtures::checkerboard(9, 9));
  ASSERT_EQ(run(encrypt_cfg({g1}, root_ / "out", 1)), kOk);
  std::size_t n = 0;
  for (auto& e : fs::directory_iterator(root_ / "out")) n += e.path().extension() == ".pbm";
  EXPECT_EQ(n, 2u);
}

TEST_F(CliTest, EncryptDimensionMismatchLeavesNothing) {
  const auto g1 = write_image("g1.pbm", BinaryImage(8, 8));
  const auto g2 = write_image("g2.pbm", BinaryImage(8, 9));
  EXPECT_EQ(run(encrypt_cfg({g1, g2}, root_ / "out", 1)), kShapeMismatch);
  EXPECT_NE(err_.str().find("g2.pbm"), std::string::npos);
  EXPECT_FALSE(fs::exists(root_ / "out"));
}

TEST_F(CliTest, EncryptIoAndParseFailures) {
  EXPECT_EQ(run(encrypt_cfg({root_ / "missing.pbm"}, root_ / "out", 1)), kIoError);
  EXPECT_NE(err_.str().find("missing.pbm"), std::string::npos);

  std::ofstream(root_ / "bad.pbm") << "P5\n1 1\n255\n\x01";
  EXPECT_EQ(run(encrypt_cfg({root_ / "bad.pbm"}, root_ / "out", 1)), kIoError);
  EXPECT_NE(err_.str().find("bad.pbm"), std::string::npos);
  EXPECT_FALSE(fs::exists(root_ / "out"));
}

TEST_F(CliTest, SeedFallbacks) {
  const auto g1 = write_image("g1.pbm", BinaryImage(4, 4));
  setenv(kSeedEnv, "987654321", 1);
  ASSERT_EQ(run(encrypt_cfg({g1}, root_ / "env", std::nullopt)), kOk);
  EXPECT_EQ(manifest(root_ / "env")["seed"], 987654321u);

  unsetenv(kSeedEnv);
  ASSERT_EQ(run(encrypt_cfg({g1}, root_ / "fresh", std::nullopt)), kOk);
  const auto seed = manifest(root_ / "fresh")["seed"].get<std::uint64_t>();
  EXPECT_NE(out_.str().find("seed: " + std::to_string(seed)), std::string::npos);

  setenv(kSeedEnv, "not-a-number", 1);
  EXPECT_EQ(run(encrypt_cfg({g1}, root_ / "bad", std::nullopt)), kIoError);
  unsetenv(kSeedEnv);
  EXPECT_THROW(parse_seed("18446744073709551616"), ConfigError);
  EXPECT_EQ(parse_seed("18446744073709551615"), 18446744073709551615ULL);
}

TEST_F(CliTest, DecryptRecoversOriginals) {
  const auto a = fixtures::text_image("G1", 32, 32);
  const auto b = fixtures::random_image(5, 32, 32);
  const auto g1 = write_image("g1.pbm", a);
  const auto g2 = write_image("g2.pbm", b);
  ASSERT_EQ(run(encrypt_cfg({g1, g2}, root_ / "sh", 3)), kOk);

  CliConfig d;
  d.subcommand = "decrypt";
  d.unishare = root_ / "sh" / "U.pbm";
  d.inputs = {root_ / "sh" / "S1.pbm", root_ / "sh" / "S2.pbm"};
  d.out_dir = root_ / "rec";
  ASSERT_EQ(run(d), kOk) << err_.str();
  EXPECT_EQ(pbm::read_pbm_file(root_ / "rec" / "G1_rec.pbm"), a);
  EXPECT_EQ(pbm::read_pbm_file(root_ / "rec" / "G2_rec.pbm"), b);

  // Any single share is enough for its own secret.
  d.inputs = {root_ / "sh" / "S2.pbm"};
  d.out_dir = root_ / "only2";
  d.circuit_decoder = true;
  ASSERT_EQ(run(d), kOk);
  EXPECT_EQ(pbm::read_pbm_file(root_ / "only2" / "G2_rec.pbm"), b);
  EXPECT_FALSE(fs::exists(root_ / "only2" / "G1_rec.pbm"));
}

TEST_F(CliTest, DecryptWrongSizeUniShare) {
  const auto s = write_image("S1.pbm", BinaryImage(8, 8));
  const auto u = write_image("U.pbm", BinaryImage(8, 7));
  CliConfig d;
  d.subcommand = "decrypt";
  d.unishare = u;
  d.inputs = {s};
  d.out_dir = root_ / "rec";
  EXPECT_EQ(run(d), kShapeMismatch);
  EXPECT_FALSE(fs::exists(root_ / "rec"));
}

TEST_F(CliTest, MetricsSingleAndPairs) {
  const auto a = fixtures::random_image(8, 64, 64);
  const auto ga = write_image("a.pbm", a);
  const auto gb = write_image("b.pbm", a);
  CliConfig m;
  m.subcommand = "metrics";
  m.inputs = {ga, gb};
  ASSERT_EQ(run(m), kOk);
  auto j = nlohmann::json::parse(out_.str());
  EXPECT_EQ(j["ssim"], 1.0);
  EXPECT_EQ(j["correlation"], 1.0);
  EXPECT_EQ(j["psnr_db"], "inf");

  const auto g2 = write_image("g2.pbm", fixtures::random_image(9, 64, 64));
  ASSERT_EQ(run(encrypt_cfg({ga, g2}, root_ / "sh", 11)), kOk);
  m.inputs = {ga, root_ / "sh" / "S1.pbm"};
  ASSERT_EQ(run(m), kOk);
  j = nlohmann::json::parse(out_.str());
  EXPECT_NEAR(j["psnr_db"].get<double>(), 3.01, 0.5);

  m.pairs = true;
  m.unishare = root_ / "sh" / "U.pbm";
  m.secrets = {ga, g2};
  m.inputs = {root_ / "sh" / "S1.pbm", root_ / "sh" / "S2.pbm"};
  ASSERT_EQ(run(m), kOk) << err_.str();
  j = nlohmann::json::parse(out_.str());
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j.size(), 8u);  // 2x2 secret/share + 2 secret/U + 2 share/U
  EXPECT_EQ(j[0]["a"], "G1");
  EXPECT_EQ(j[0]["b"], "S1");
  EXPECT_EQ(j[7]["a"], "S2");
  EXPECT_EQ(j[7]["b"], "U");

  m.pairs = false;
  m.inputs = {ga, write_image("small.pbm", BinaryImage(3, 3))};
  EXPECT_EQ(run(m), kShapeMismatch);
}

TEST_F(CliTest, DemoIsDeterministic) {
  CliConfig c;
  c.subcommand = "demo";
  c.seed = 7;
  c.size = 64;
  c.threads = 1;
  c.out_dir = root_ / "d1";
  ASSERT_EQ(run(c), kOk) << err_.str();
  const std::string summary = out_.str();
  EXPECT_NE(summary.find("G1 vs G1_rec"), std::string::npos);

  c.out_dir = root_ / "d2";
  c.threads = 4;
  ASSERT_EQ(run(c), kOk);
  EXPECT_EQ(manifest(root_ / "d1"), manifest(root_ / "d2"));
  EXPECT_EQ(slurp(root_ / "d1" / "summary.txt"), slurp(root_ / "d2" / "summary.txt"));

  const auto metrics = nlohmann::json::parse(slurp(root_ / "d1" / "metrics.json"));
  int recovered = 0;
  for (const auto& e : metrics) {
    if (e["b"].get<std::string>().ends_with("_rec")) {
      EXPECT_EQ(e["mismatch_fraction"], 0.0);
      EXPECT_EQ(e["ssim"], 1.0);
      ++recovered;
    }
  }
  EXPECT_EQ(recovered, 2);
  EXPECT_EQ(manifest(root_ / "d1")["width"], 64);
}

TEST_F(CliTest, SelftestPassesAndCatchesInjectedFault) {
  CliConfig c;
  c.subcommand = "selftest";
  c.seed = 2024;
  ASSERT_EQ(run(c), kOk) << out_.str();
  const std::string first = out_.str();
  EXPECT_EQ(first.find("FAIL"), std::string::npos);
  ASSERT_EQ(run(c), kOk);
  EXPECT_EQ(out_.str(), first);

  c.inject_fault = true;
  EXPECT_EQ(run(c), kPropertyFailure);
  EXPECT_NE(out_.str().find("FAIL lossless round trip"), std::string::npos);
}

TEST_F(CliTest, PlainFormatOutput) {
  const auto g1 = write_image("g1.pbm", BinaryImage(5, 2, 1));
  auto c = encrypt_cfg({g1}, root_ / "p1", 4);
  c.format = pbm::Variant::P1;
  ASSERT_EQ(run(c), kOk);
  EXPECT_EQ(slurp(root_ / "p1" / "U.pbm").substr(0, 3), "P1\n");
}
