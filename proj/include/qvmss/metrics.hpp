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

// Image quality and secrecy measures over 8-bit intensity grids. Binary images
// are lifted to {0, 255} before any metric is taken. All second moments are
// population (1/N) moments.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qvmss/errors.hpp"
#include "qvmss/image.hpp"

namespace qvmss::metrics {

inline constexpr double kMaxIntensity = 255.0;

struct IntensityGrid {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
};

struct SsimParams {
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = kMaxIntensity;

  double c1() const noexcept { return (k1 * dynamic_range) * (k1 * dynamic_range); }
  double c2() const noexcept { return (k2 * dynamic_range) * (k2 * dynamic_range); }
};

struct MetricsReport {
  double mse = 0.0;
  double psnr_db = 0.0;                // +infinity when mse == 0
  double ssim = 0.0;
  std::optional<double> correlation;   // empty when either input is constant
  double mismatch_fraction = 0.0;
  double ones_fraction_a = 0.0;
  double ones_fraction_b = 0.0;
  std::size_t width = 0;
  std::size_t height = 0;
};

inline IntensityGrid intensity_of(const BinaryImage& image) {
  IntensityGrid g{image.width(), image.height(), std::vector<double>(image.size())};
  for (std::size_t i = 0; i < image.size(); ++i) g.values[i] = image[i] ? kMaxIntensity : 0.0;
  return g;
}

// Inverse of intensity_of: values >= level map to bit 1.
inline BinaryImage threshold(const IntensityGrid& grid, double level = 128.0) {
  std::vector<std::uint8_t> bits(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) bits[i] = grid.values[i] >= level ? 1 : 0;
  return BinaryImage(grid.width, grid.height, std::move(bits));
}

namespace detail {

inline void require_same_shape(const IntensityGrid& a, const IntensityGrid& b, const char* what) {
  if (a.width != b.width || a.height != b.height || a.size() != b.size()) {
    throw ShapeError(std::string(what) + ": " + std::to_string(a.width) + "x" +
                     std::to_string(a.height) + " vs " + std::to_string(b.width) + "x" +
                     std::to_string(b.height));
  }
}

struct Moments {
  double mean_a = 0.0, mean_b = 0.0;
  double var_a = 0.0, var_b = 0.0, cov = 0.0;
};

inline Moments moments(const IntensityGrid& a, const IntensityGrid& b) {
  Moments m;
  const std::size_t n = a.size();
  if (n == 0) return m;
  for (std::size_t i = 0; i < n; ++i) {
    m.mean_a += a.values[i];
    m.mean_b += b.values[i];
  }
  m.mean_a /= static_cast<double>(n);
  m.mean_b /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a.values[i] - m.mean_a;
    const double db = b.values[i] - m.mean_b;
    m.var_a += da * da;
    m.var_b += db * db;
    m.cov += da * db;
  }
  m.var_a /= static_cast<double>(n);
  m.var_b /= static_cast<double>(n);
  m.cov /= static_cast<double>(n);
  return m;
}

}  // namespace detail

inline double mse(const IntensityGrid& a, const IntensityGrid& b) {
  detail::require_same_shape(a, b, "mse");
  if (a.size() == 0) throw ShapeError("mse: empty images");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a.values[i] - b.values[i];
    acc += d * d;
  }
  return acc / static_cast<double>(a.size());
}

inline double psnr(const IntensityGrid& a, const IntensityGrid& b) {
  const double e = mse(a, b);
  if (e == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(kMaxIntensity * kMaxIntensity / e);
}

// Single-window SSIM over whole-image statistics (product form).
inline double ssim_global(const IntensityGrid& a, const IntensityGrid& b,
                          const SsimParams& params = {}) {
  detail::require_same_shape(a, b, "ssim");
  if (a.size() < 2) throw ShapeError("ssim: need at least 2 pixels");
  const double c1 = params.c1();
  const double c2 = params.c2();
  if (!(c1 > 0.0) || !(c2 > 0.0)) throw ConfigError("ssim stabilizers must be positive");
  const auto m = detail::moments(a, b);
  const double num = (2.0 * m.mean_a * m.mean_b + c1) * (2.0 * m.cov + c2);
  const double den =
      (m.mean_a * m.mean_a + m.mean_b * m.mean_b + c1) * (m.var_a + m.var_b + c2);
  return num / den;
}

// Pearson coefficient; empty when either image has zero variance.
inline std::optional<double> correlation(const IntensityGrid& a, const IntensityGrid& b) {
  detail::require_same_shape(a, b, "correlation");
  const auto m = detail::moments(a, b);
  if (m.var_a == 0.0 || m.var_b == 0.0) return std::nullopt;
  // sqrt(fl(v*v)) == v exactly, so correlation(a, a) is exactly 1.
  return m.cov / std::sqrt(m.var_a * m.var_b);
}

inline double mismatch_fraction(const BinaryImage& a, const BinaryImage& b) {
  require_same_shape(a, b, "mismatch_fraction");
  if (a.empty()) throw ShapeError("mismatch_fraction: empty images");
  std::size_t diff = 0;
  for (std::size_t i = 0; i < a.size(); ++i) diff += (a[i] != b[i]);
  return static_cast<double>(diff) / static_cast<double>(a.size());
}

inline double ones_fraction(const BinaryImage& a) {
  if (a.empty()) return 0.0;
  return static_cast<double>(a.count_ones()) / static_cast<double>(a.size());
}

inline MetricsReport report(const BinaryImage& a, const BinaryImage& b,
                            const SsimParams& params = {}) {
  require_same_shape(a, b, "report");
  const auto ga = intensity_of(a);
  const auto gb = intensity_of(b);
  MetricsReport r;
  r.mse = mse(ga, gb);
  r.psnr_db = psnr(ga, gb);
  r.ssim = ssim_global(ga, gb, params);
  r.correlation = correlation(ga, gb);
  r.mismatch_fraction = mismatch_fraction(a, b);
  r.ones_fraction_a = ones_fraction(a);
  r.ones_fraction_b = ones_fraction(b);
  r.width = a.width();
  r.height = a.height();
  return r;
}

// {"mse", "psnr_db" (number or "inf"), "ssim", "correlation" (number or null),
//  "mismatch_fraction", "ones_fraction_a", "ones_fraction_b", "width", "height"}
inline nlohmann::ordered_json to_json(const MetricsReport& r) {
  nlohmann::ordered_json j;
  j["mse"] = r.mse;
  if (std::isinf(r.psnr_db)) {
    j["psnr_db"] = "inf";
  } else {
    j["psnr_db"] = r.psnr_db;
  }
  j["ssim"] = r.ssim;
  if (r.correlation) {
    j["correlation"] = *r.correlation;
  } else {
    j["correlation"] = nullptr;
  }
  j["mismatch_fraction"] = r.mismatch_fraction;
  j["ones_fraction_a"] = r.ones_fraction_a;
  j["ones_fraction_b"] = r.ones_fraction_b;
  j["width"] = r.width;
  j["height"] = r.height;
  return j;
}

inline MetricsReport report_from_json(const nlohmann::ordered_json& j) {
  MetricsReport r;
  r.mse = j.at("mse").get<double>();
  const auto& p = j.at("psnr_db");
  if (p.is_string()) {
    if (p.get<std::string>() != "inf") throw ConfigError("psnr_db string must be \"inf\"");
    r.psnr_db = std::numeric_limits<double>::infinity();
  } else {
    r.psnr_db = p.get<double>();
  }
  r.ssim = j.at("ssim").get<double>();
  if (!j.at("correlation").is_null()) r.correlation = j.at("correlation").get<double>();
  r.mismatch_fraction = j.at("mismatch_fraction").get<double>();
  r.ones_fraction_a = j.at("ones_fraction_a").get<double>();
  r.ones_fraction_b = j.at("ones_fraction_b").get<double>();
  r.width = j.at("width").get<std::size_t>();
  r.height = j.at("height").get<std::size_t>();
  return r;
}

}  // namespace qvmss::metrics
