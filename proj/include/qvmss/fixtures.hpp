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

// Deterministic synthetic binary images used as stand-in secrets.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qvmss/errors.hpp"
#include "qvmss/image.hpp"

namespace qvmss::fixtures {

enum class Kind { Checkerboard, AllZero, AllOne, Random, TextGlyphs };

struct Spec {
  Kind kind = Kind::Checkerboard;
  std::uint64_t seed = 0;   // Random
  std::string text;         // TextGlyphs; '\n' separates lines
};

namespace detail {

using Glyph = std::array<std::uint8_t, 7>;  // 5 bits per row, MSB = leftmost

inline const Glyph& glyph_for(char c) {
  static constexpr std::array<Glyph, 26> kLetters = {{
      {0x0E, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11}, {0x1E, 0x11, 0x11, 0x1E, 0x11, 0x11, 0x1E},
      {0x0E, 0x11, 0x10, 0x10, 0x10, 0x11, 0x0E}, {0x1E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x1E},
      {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x1F}, {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x10},
      {0x0E, 0x11, 0x10, 0x17, 0x11, 0x11, 0x0F}, {0x11, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11},
      {0x0E, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0E}, {0x07, 0x02, 0x02, 0x02, 0x02, 0x12, 0x0C},
      {0x11, 0x12, 0x14, 0x18, 0x14, 0x12, 0x11}, {0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1F},
      {0x11, 0x1B, 0x15, 0x15, 0x11, 0x11, 0x11}, {0x11, 0x11, 0x19, 0x15, 0x13, 0x11, 0x11},
      {0x0E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E}, {0x1E, 0x11, 0x11, 0x1E, 0x10, 0x10, 0x10},
      {0x0E, 0x11, 0x11, 0x11, 0x15, 0x12, 0x0D}, {0x1E, 0x11, 0x11, 0x1E, 0x14, 0x12, 0x11},
      {0x0F, 0x10, 0x10, 0x0E, 0x01, 0x01, 0x1E}, {0x1F, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04},
      {0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E}, {0x11, 0x11, 0x11, 0x11, 0x11, 0x0A, 0x04},
      {0x11, 0x11, 0x11, 0x15, 0x15, 0x15, 0x0A}, {0x11, 0x11, 0x0A, 0x04, 0x0A, 0x11, 0x11},
      {0x11, 0x11, 0x11, 0x0A, 0x04, 0x04, 0x04}, {0x1F, 0x01, 0x02, 0x04, 0x08, 0x10, 0x1F},
  }};
  static constexpr std::array<Glyph, 10> kDigits = {{
      {0x0E, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0E}, {0x04, 0x0C, 0x04, 0x04, 0x04, 0x04, 0x0E},
      {0x0E, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1F}, {0x1F, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0E},
      {0x02, 0x06, 0x0A, 0x12, 0x1F, 0x02, 0x02}, {0x1F, 0x10, 0x1E, 0x01, 0x01, 0x11, 0x0E},
      {0x06, 0x08, 0x10, 0x1E, 0x11, 0x11, 0x0E}, {0x1F, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08},
      {0x0E, 0x11, 0x11, 0x0E, 0x11, 0x11, 0x0E}, {0x0E, 0x11, 0x11, 0x0F, 0x01, 0x02, 0x0C},
  }};
  static constexpr Glyph kDash = {0, 0, 0, 0x1F, 0, 0, 0};
  static constexpr Glyph kBlank = {0, 0, 0, 0, 0, 0, 0};

  const auto u = static_cast<unsigned char>(std::toupper(static_cast<unsigned char>(c)));
  if (u >= 'A' && u <= 'Z') return kLetters[u - 'A'];
  if (u >= '0' && u <= '9') return kDigits[u - '0'];
  if (u == '-') return kDash;
  return kBlank;
}

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (true) {
    const std::size_t nl = text.find('\n', start);
    lines.push_back(text.substr(start, nl == std::string_view::npos ? nl : nl - start));
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return lines;
}

// Text in a 5x7 font on 6x8 cells, scaled by the largest integer factor that
// fits and centred.
inline BinaryImage render_text(std::string_view text, std::size_t width, std::size_t height) {
  BinaryImage img(width, height);
  const auto lines = split_lines(text);
  std::size_t cols = 0;
  for (auto l : lines) cols = std::max(cols, l.size());
  if (cols == 0) return img;

  const std::size_t cell_w = 6, cell_h = 8;
  const std::size_t scale =
      std::max<std::size_t>(1, std::min(width / (cols * cell_w), height / (lines.size() * cell_h)));
  const std::size_t block_w = cols * cell_w * scale;
  const std::size_t block_h = lines.size() * cell_h * scale;
  const std::size_t x0 = block_w < width ? (width - block_w) / 2 : 0;
  const std::size_t y0 = block_h < height ? (height - block_h) / 2 : 0;

  for (std::size_t li = 0; li < lines.size(); ++li) {
    for (std::size_t ci = 0; ci < lines[li].size(); ++ci) {
      const Glyph& g = glyph_for(lines[li][ci]);
      for (std::size_t gy = 0; gy < 7; ++gy) {
        for (std::size_t gx = 0; gx < 5; ++gx) {
          if (!((g[gy] >> (4 - gx)) & 1U)) continue;
          for (std::size_t sy = 0; sy < scale; ++sy) {
            for (std::size_t sx = 0; sx < scale; ++sx) {
              const std::size_t x = x0 + (ci * cell_w + gx) * scale + sx;
              const std::size_t y = y0 + (li * cell_h + gy) * scale + sy;
              if (x < width && y < height) img.set(x, y, 1);
            }
          }
        }
      }
    }
  }
  return img;
}

}  // namespace detail

inline BinaryImage make_fixture(const Spec& spec, std::size_t width, std::size_t height) {
  if (width == 0 || height == 0) throw ShapeError("fixture dimensions must be positive");
  switch (spec.kind) {
    case Kind::AllZero: return BinaryImage(width, height, 0);
    case Kind::AllOne: return BinaryImage(width, height, 1);
    case Kind::Checkerboard: {
      BinaryImage img(width, height);
      for (std::size_t y = 0; y < height; ++y)
        for (std::size_t x = 0; x < width; ++x) img.set(x, y, (x + y) & 1U);
      return img;
    }
    case Kind::Random: {
      // A separate generator family from the per-pixel streams, so a random
      // secret never shares bits with a UniShare drawn from the same seed.
      std::mt19937_64 gen(spec.seed);
      std::vector<std::uint8_t> bits(width * height);
      std::uint64_t word = 0;
      for (std::size_t i = 0; i < bits.size(); ++i) {
        if (i % 64 == 0) word = gen();
        bits[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1U);
      }
      return BinaryImage(width, height, std::move(bits));
    }
    case Kind::TextGlyphs: return detail::render_text(spec.text, width, height);
  }
  throw ConfigError("unknown fixture kind");
}

inline BinaryImage checkerboard(std::size_t w, std::size_t h) {
  return make_fixture({Kind::Checkerboard, 0, {}}, w, h);
}
inline BinaryImage random_image(std::uint64_t seed, std::size_t w, std::size_t h) {
  return make_fixture({Kind::Random, seed, {}}, w, h);
}
inline BinaryImage text_image(std::string text, std::size_t w, std::size_t h) {
  return make_fixture({Kind::TextGlyphs, 0, std::move(text)}, w, h);
}

}  // namespace qvmss::fixtures
