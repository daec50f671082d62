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

// Subcommands of the qvmss tool. Each returns a process exit code and never
// leaves partially written outputs behind.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qvmss/cli/config.hpp"
#include "qvmss/cli/selftest.hpp"
#include "qvmss/cli/staged_writer.hpp"
#include "qvmss/digest.hpp"
#include "qvmss/fixtures.hpp"
#include "qvmss/image.hpp"
#include "qvmss/metrics.hpp"
#include "qvmss/mss.hpp"
#include "qvmss/pbm.hpp"

namespace qvmss::cli {

namespace detail {

struct LoadedImage {
  std::filesystem::path path;
  BinaryImage image;
};

// Thrown internally to carry an exit code to the command boundary.
struct CommandFailure {
  int code;
  std::string message;
};

inline LoadedImage load(const std::filesystem::path& path) {
  try {
    return {path, pbm::read_pbm_file(path)};
  } catch (const ParseError& e) {
    throw CommandFailure{kIoError, e.what()};
  } catch (const Error& e) {
    throw CommandFailure{kIoError, e.what()};
  }
}

inline std::string dims(const BinaryImage& img) {
  return std::to_string(img.width()) + "x" + std::to_string(img.height());
}

inline void require_match(const LoadedImage& ref, const LoadedImage& other) {
  if (!ref.image.same_shape(other.image)) {
    throw CommandFailure{kShapeMismatch, other.path.string() + ": dimensions " +
                                             dims(other.image) + " do not match " +
                                             ref.path.string() + " (" + dims(ref.image) + ")"};
  }
}

inline std::string share_name(std::size_t k) { return "S" + std::to_string(k) + ".pbm"; }
inline std::string recovered_name(std::size_t k) {
  return "G" + std::to_string(k) + "_rec.pbm";
}

inline nlohmann::ordered_json manifest(std::uint64_t seed, std::size_t arity,
                                       const BinaryImage& ref,
                                       const std::vector<std::pair<std::string, std::string>>& files) {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["arity"] = arity;
  j["width"] = ref.width();
  j["height"] = ref.height();
  nlohmann::ordered_json f = nlohmann::ordered_json::object();
  for (const auto& [name, bytes] : files) f[name] = sha256_digest(bytes);
  j["files"] = f;
  return j;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const CommandFailure& f) {
    err << "error: " << f.message << "\n";
    return f.code;
  } catch (const ShapeError& e) {
    err << "error: " << e.what() << "\n";
    return kShapeMismatch;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
}

inline std::string fmt_fixed(double v, int precision) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision) << v;
  return os.str();
}

struct LabeledPair {
  std::string a_label, b_label;
  const BinaryImage* a;
  const BinaryImage* b;
};

// Every secret against every share, every secret against U, every share
// against U.
inline std::vector<LabeledPair> pair_grid(const std::vector<const BinaryImage*>& secrets,
                                          const std::vector<const BinaryImage*>& shares,
                                          const BinaryImage& unishare) {
  std::vector<LabeledPair> out;
  for (std::size_t k = 0; k < secrets.size(); ++k)
    for (std::size_t j = 0; j < shares.size(); ++j)
      out.push_back({"G" + std::to_string(k + 1), "S" + std::to_string(j + 1), secrets[k],
                     shares[j]});
  for (std::size_t k = 0; k < secrets.size(); ++k)
    out.push_back({"G" + std::to_string(k + 1), "U", secrets[k], &unishare});
  for (std::size_t j = 0; j < shares.size(); ++j)
    out.push_back({"S" + std::to_string(j + 1), "U", shares[j], &unishare});
  return out;
}

inline nlohmann::ordered_json pair_entry(const LabeledPair& p) {
  nlohmann::ordered_json j;
  j["a"] = p.a_label;
  j["b"] = p.b_label;
  const auto r = metrics::to_json(metrics::report(*p.a, *p.b));
  for (const auto& [k, v] : r.items()) j[k] = v;
  return j;
}

}  // namespace detail

inline int cmd_encrypt(const CliConfig& config, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    if (config.inputs.empty()) {
      throw detail::CommandFailure{kIoError, "encrypt needs at least one secret image"};
    }
    if (config.inputs.size() > static_cast<std::size_t>(mss::kMaxArity)) {
      throw detail::CommandFailure{kIoError, "at most " + std::to_string(mss::kMaxArity) +
                                                 " secrets are supported"};
    }
    std::vector<detail::LoadedImage> loaded;
    for (const auto& p : config.inputs) loaded.push_back(detail::load(p));
    for (const auto& l : loaded) detail::require_match(loaded.front(), l);

    const std::uint64_t seed = resolve_seed(config);
    std::vector<BinaryImage> secrets;
    for (auto& l : loaded) secrets.push_back(l.image);

    mss::SchemeConfig scheme;
    scheme.arity_n = static_cast<int>(secrets.size());
    scheme.master_seed = seed;
    scheme.verify_with_oracle = true;
    scheme.threads = config.threads;
    const auto set = mss::encrypt(secrets, scheme);

    std::vector<std::pair<std::string, std::string>> files;
    files.emplace_back("U.pbm", pbm::write_pbm(set.unishare, config.format));
    for (std::size_t k = 0; k < set.shares.size(); ++k) {
      files.emplace_back(detail::share_name(k + 1), pbm::write_pbm(set.shares[k], config.format));
    }
    const auto man = detail::manifest(seed, secrets.size(), set.unishare, files);

    StagedWriter writer(config.out_dir);
    for (const auto& [name, bytes] : files) writer.stage(name, bytes);
    writer.stage("manifest.json", man.dump(2) + "\n");
    writer.commit();

    out << "seed: " << seed << "\n";
    out << "wrote U.pbm";
    for (std::size_t k = 0; k < set.shares.size(); ++k) out << ", " << detail::share_name(k + 1);
    out << ", manifest.json to " << config.out_dir.string() << "\n";
    return int{kOk};
  });
}

inline int cmd_decrypt(const CliConfig& config, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    if (!config.unishare) throw detail::CommandFailure{kIoError, "decrypt needs -u <UniShare>"};
    if (config.inputs.empty()) {
      throw detail::CommandFailure{kIoError, "decrypt needs at least one share image"};
    }
    const auto u = detail::load(*config.unishare);
    std::vector<detail::LoadedImage> shares;
    for (const auto& p : config.inputs) shares.push_back(detail::load(p));
    for (const auto& s : shares) detail::require_match(u, s);

    // S<k>.pbm recovers into G<k>_rec.pbm; other names are numbered by position.
    static const std::regex kShareName(R"(S([0-9]+)\.pbm)");
    std::vector<std::string> names;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < shares.size(); ++i) {
      std::smatch m;
      const std::string fname = shares[i].path.filename().string();
      std::string name = std::regex_match(fname, m, kShareName)
                             ? detail::recovered_name(std::stoul(m[1].str()))
                             : detail::recovered_name(i + 1);
      if (!seen.insert(name).second) {
        throw detail::CommandFailure{kIoError, "two shares would both be written to " + name};
      }
      names.push_back(std::move(name));
    }

    mss::SchemeConfig scheme;
    scheme.arity_n = static_cast<int>(shares.size());
    scheme.use_circuit_decoder = config.circuit_decoder;
    scheme.threads = config.threads;

    StagedWriter writer(config.out_dir);
    for (std::size_t i = 0; i < shares.size(); ++i) {
      const auto rec = mss::decrypt(u.image, shares[i].image, scheme);
      writer.stage(names[i], pbm::write_pbm(rec, config.format));
    }
    writer.commit();
    for (const auto& n : names) out << "wrote " << (config.out_dir / n).string() << "\n";
    return int{kOk};
  });
}

inline int cmd_metrics(const CliConfig& config, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    if (config.pairs) {
      if (!config.unishare) {
        throw detail::CommandFailure{kIoError, "metrics --pairs needs -u <UniShare>"};
      }
      const auto u = detail::load(*config.unishare);
      std::vector<detail::LoadedImage> secrets, shares;
      for (const auto& p : config.secrets) secrets.push_back(detail::load(p));
      for (const auto& p : config.inputs) shares.push_back(detail::load(p));
      for (const auto& s : secrets) detail::require_match(u, s);
      for (const auto& s : shares) detail::require_match(u, s);
      std::vector<const BinaryImage*> gp, sp;
      for (const auto& s : secrets) gp.push_back(&s.image);
      for (const auto& s : shares) sp.push_back(&s.image);
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& p : detail::pair_grid(gp, sp, u.image)) arr.push_back(detail::pair_entry(p));
      out << arr.dump(2) << "\n";
      return int{kOk};
    }
    if (config.inputs.size() != 2) {
      throw detail::CommandFailure{kIoError, "metrics needs exactly two images"};
    }
    const auto a = detail::load(config.inputs[0]);
    const auto b = detail::load(config.inputs[1]);
    detail::require_match(a, b);
    out << metrics::to_json(metrics::report(a.image, b.image)).dump(2) << "\n";
    return int{kOk};
  });
}

// The built-in secrets used by `demo`.
inline std::vector<BinaryImage> demo_secrets(std::size_t size) {
  return {fixtures::text_image("SECRET\nONE", size, size),
          fixtures::text_image("QUANTUM\nTWO", size, size)};
}

inline int cmd_demo(const CliConfig& config, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    if (config.size < 2) throw detail::CommandFailure{kIoError, "--size must be at least 2"};
    const std::uint64_t seed = resolve_seed(config);
    const auto secrets = demo_secrets(config.size);

    mss::SchemeConfig scheme;
    scheme.arity_n = static_cast<int>(secrets.size());
    scheme.master_seed = seed;
    scheme.verify_with_oracle = true;
    scheme.threads = config.threads;
    const auto set = mss::encrypt(secrets, scheme);
    const auto recovered = mss::decrypt_all(set, scheme);

    std::vector<std::pair<std::string, std::string>> files;
    for (std::size_t k = 0; k < secrets.size(); ++k)
      files.emplace_back("G" + std::to_string(k + 1) + ".pbm",
                         pbm::write_pbm(secrets[k], config.format));
    files.emplace_back("U.pbm", pbm::write_pbm(set.unishare, config.format));
    for (std::size_t k = 0; k < set.shares.size(); ++k)
      files.emplace_back(detail::share_name(k + 1), pbm::write_pbm(set.shares[k], config.format));
    for (std::size_t k = 0; k < recovered.size(); ++k)
      files.emplace_back(detail::recovered_name(k + 1), pbm::write_pbm(recovered[k], config.format));

    std::vector<const BinaryImage*> gp, sp;
    for (const auto& g : secrets) gp.push_back(&g);
    for (const auto& s : set.shares) sp.push_back(&s);
    auto pairs = detail::pair_grid(gp, sp, set.unishare);
    for (std::size_t k = 0; k < recovered.size(); ++k) {
      pairs.push_back({"G" + std::to_string(k + 1), "G" + std::to_string(k + 1) + "_rec",
                       &secrets[k], &recovered[k]});
    }

    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    std::ostringstream table;
    table << "seed " << seed << ", " << config.size << "x" << config.size << ", n = "
          << secrets.size() << "\n";
    table << std::left << std::setw(14) << "pair" << std::right << std::setw(10) << "psnr_db"
          << std::setw(10) << "ssim" << std::setw(10) << "corr" << std::setw(10) << "mismatch"
          << "\n";
    for (const auto& p : pairs) {
      const auto r = metrics::report(*p.a, *p.b);
      arr.push_back(detail::pair_entry(p));
      table << std::left << std::setw(14) << (p.a_label + " vs " + p.b_label) << std::right
            << std::setw(10) << detail::fmt_fixed(r.psnr_db, 3) << std::setw(10)
            << detail::fmt_fixed(r.ssim, 4) << std::setw(10)
            << (r.correlation ? detail::fmt_fixed(*r.correlation, 4) : std::string("n/a"))
            << std::setw(10) << detail::fmt_fixed(r.mismatch_fraction, 4) << "\n";
    }
    files.emplace_back("metrics.json", arr.dump(2) + "\n");
    files.emplace_back("summary.txt", table.str());

    const auto man = detail::manifest(seed, secrets.size(), set.unishare, files);
    StagedWriter writer(config.out_dir);
    for (const auto& [name, bytes] : files) writer.stage(name, bytes);
    writer.stage("manifest.json", man.dump(2) + "\n");
    writer.commit();

    if (config.emit_json) {
      out << man.dump(2) << "\n";
    } else {
      out << "seed: " << seed << "\n" << table.str();
    }
    return int{kOk};
  });
}

inline int cmd_selftest(const CliConfig& config, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    SelftestOptions opts;
    opts.seed = resolve_seed(config);
    opts.inject_fault = config.inject_fault;
    opts.threads = config.threads;
    const auto results = run_selftest(opts);
    bool all = true;
    if (config.emit_json) {
      nlohmann::ordered_json j;
      j["seed"] = opts.seed;
      j["properties"] = nlohmann::ordered_json::array();
      for (const auto& r : results) {
        j["properties"].push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        all = all && r.pass;
      }
      j["pass"] = all;
      out << j.dump(2) << "\n";
    } else {
      out << "seed: " << opts.seed << "\n";
      for (const auto& r : results) {
        out << (r.pass ? "PASS " : "FAIL ") << r.name << "  (" << r.detail << ")\n";
        all = all && r.pass;
      }
      out << (all ? "all properties passed" : "property failure") << "\n";
    }
    return all ? int{kOk} : int{kPropertyFailure};
  });
}

inline int dispatch(const CliConfig& config, std::ostream& out, std::ostream& err) {
  if (config.subcommand == "encrypt") return cmd_encrypt(config, out, err);
  if (config.subcommand == "decrypt") return cmd_decrypt(config, out, err);
  if (config.subcommand == "metrics") return cmd_metrics(config, out, err);
  if (config.subcommand == "demo") return cmd_demo(config, out, err);
  if (config.subcommand == "selftest") return cmd_selftest(config, out, err);
  err << "error: unknown subcommand '" << config.subcommand << "'\n";
  return kIoError;
}

}  // namespace qvmss::cli
