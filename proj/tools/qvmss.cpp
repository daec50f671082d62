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

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "qvmss/cli/commands.hpp"

namespace {

void add_common(CLI::App* sub, qvmss::cli::CliConfig& cfg, std::string& seed_text) {
  sub->add_option("--seed", seed_text, "Master seed (u64); falls back to $QVMSS_SEED, then OS entropy");
  sub->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");
}

void add_format(CLI::App* sub, qvmss::cli::CliConfig& cfg) {
  static const std::map<std::string, qvmss::pbm::Variant> kFormats = {
      {"p1", qvmss::pbm::Variant::P1}, {"p4", qvmss::pbm::Variant::P4}};
  sub->add_option("--format", cfg.format, "Output PBM flavour: p1 | p4")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case))
      ->default_str("p4");
}

}  // namespace

int main(int argc, char** argv) {
  qvmss::cli::CliConfig cfg;
  std::string seed_text;

  CLI::App app{"qvmss: universal-share quantum visual multi-secret sharing"};
  app.require_subcommand(1);

  auto* enc = app.add_subcommand("encrypt", "Encrypt n secrets into a UniShare and n shares");
  enc->add_option("secrets", cfg.inputs, "Secret PBM images")->required();
  enc->add_option("-o,--out-dir", cfg.out_dir, "Output directory");
  add_common(enc, cfg, seed_text);
  add_format(enc, cfg);

  auto* dec = app.add_subcommand("decrypt", "Recover secrets from the UniShare and shares");
  dec->add_option("-u,--unishare", cfg.unishare, "UniShare PBM")->required();
  dec->add_option("shares", cfg.inputs, "Share PBM images")->required();
  dec->add_option("-o,--out-dir", cfg.out_dir, "Output directory");
  dec->add_flag("--circuit", cfg.circuit_decoder, "Decode through the simulated receiver circuit");
  dec->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");
  add_format(dec, cfg);

  auto* met = app.add_subcommand("metrics", "Print PSNR/MSE/SSIM/correlation as JSON");
  met->add_option("images", cfg.inputs, "Two images, or the shares with --pairs");
  met->add_flag("--pairs", cfg.pairs, "Full secret x share x UniShare grid");
  met->add_option("-u,--unishare", cfg.unishare, "UniShare PBM (--pairs)");
  met->add_option("-s,--secret", cfg.secrets, "Secret PBM (--pairs, repeatable)");
  met->add_flag("--json", cfg.emit_json, "Accepted for symmetry; output is always JSON");

  auto* demo = app.add_subcommand("demo", "End-to-end run on built-in fixtures");
  demo->add_option("-o,--out-dir", cfg.out_dir, "Output directory");
  demo->add_option("--size", cfg.size, "Fixture side length in pixels")->default_val(512);
  demo->add_flag("--json", cfg.emit_json, "Print the manifest instead of the summary table");
  add_common(demo, cfg, seed_text);
  add_format(demo, cfg);

  auto* self = app.add_subcommand("selftest", "Run the property suite");
  self->add_flag("--inject-fault", cfg.inject_fault, "Corrupt one share bit (negative control)");
  self->add_flag("--json", cfg.emit_json, "JSON report");
  add_common(self, cfg, seed_text);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : qvmss::cli::kIoError;
  }

  for (auto* sub : app.get_subcommands()) cfg.subcommand = sub->get_name();
  if (!seed_text.empty()) {
    try {
      cfg.seed = qvmss::cli::parse_seed(seed_text);
    } catch (const qvmss::Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return qvmss::cli::kIoError;
    }
  }
  return qvmss::cli::dispatch(cfg, std::cout, std::cerr);
}
