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

// Netpbm bitmap codec (P1 plain and P4 raw). PBM "1" is black, which is the
// opaque bit 1 of BinaryImage, so no polarity conversion happens anywhere.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "qvmss/errors.hpp"
#include "qvmss/image.hpp"

namespace qvmss::pbm {

enum class Variant { P1, P4 };

inline constexpr std::size_t kMaxDimension = std::size_t{1} << 20;
inline constexpr std::size_t kMaxPixels = std::size_t{1} << 28;
// Plain PBM lines should stay under 70 characters.
inline constexpr std::size_t kPlainValuesPerLine = 35;

namespace detail {

class Cursor {
 public:
  explicit Cursor(std::string_view data) : data_(data) {}

  std::size_t pos() const noexcept { return pos_; }
  bool at_end() const noexcept { return pos_ >= data_.size(); }
  char peek() const noexcept { return data_[pos_]; }
  void advance(std::size_t n = 1) noexcept { pos_ += n; }
  std::string_view rest() const noexcept { return data_.substr(pos_); }

  static bool is_space(char c) noexcept {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
  }

  // Whitespace and '#' comments running to end of line.
  void skip_blank() noexcept {
    while (!at_end()) {
      const char c = peek();
      if (is_space(c)) {
        advance();
      } else if (c == '#') {
        while (!at_end() && peek() != '\n' && peek() != '\r') advance();
      } else {
        break;
      }
    }
  }

  std::size_t read_dimension(const char* name) {
    skip_blank();
    const std::size_t start = pos_;
    if (at_end()) throw ParseError(std::string("missing ") + name, pos_);
    std::size_t value = 0;
    while (!at_end() && peek() >= '0' && peek() <= '9') {
      value = value * 10 + static_cast<std::size_t>(peek() - '0');
      if (value > kMaxDimension) {
        throw ParseError(std::string(name) + " exceeds " + std::to_string(kMaxDimension), start);
      }
      advance();
    }
    if (pos_ == start) throw ParseError(std::string("expected ") + name, pos_);
    if (value == 0) throw ParseError(std::string(name) + " must be positive", start);
    return value;
  }

 private:
  std::string_view data_;
  std::size_t pos_ = 0;
};

inline std::size_t row_bytes(std::size_t width) { return (width + 7) / 8; }

}  // namespace detail

inline BinaryImage read_pbm(std::string_view bytes) {
  detail::Cursor cur(bytes);
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '1' && bytes[1] != '4')) {
    throw ParseError("not a P1/P4 bitmap (bad magic)", 0);
  }
  const bool packed = bytes[1] == '4';
  cur.advance(2);
  if (!cur.at_end() && !detail::Cursor::is_space(cur.peek()) && cur.peek() != '#') {
    throw ParseError("bad magic", 2);
  }

  const std::size_t width = cur.read_dimension("width");
  const std::size_t height = cur.read_dimension("height");
  if (width * height > kMaxPixels) {
    throw ParseError("image of " + std::to_string(width) + "x" + std::to_string(height) +
                         " exceeds pixel limit",
                     cur.pos());
  }

  std::vector<std::uint8_t> bits(width * height);
  if (packed) {
    // Exactly one whitespace byte separates the header from the raster.
    if (cur.at_end() || !detail::Cursor::is_space(cur.peek())) {
      throw ParseError("expected whitespace before raster", cur.pos());
    }
    cur.advance();
    const std::size_t stride = detail::row_bytes(width);
    const std::string_view raster = cur.rest();
    if (raster.size() < stride * height) {
      throw ParseError("truncated raster: need " + std::to_string(stride * height) +
                           " bytes, have " + std::to_string(raster.size()),
                       cur.pos() + raster.size());
    }
    for (std::size_t y = 0; y < height; ++y) {
      for (std::size_t x = 0; x < width; ++x) {
        const auto byte = static_cast<unsigned char>(raster[y * stride + x / 8]);
        bits[y * width + x] = (byte >> (7 - x % 8)) & 1U;
      }
    }
  } else {
    for (auto& b : bits) {
      cur.skip_blank();
      if (cur.at_end()) throw ParseError("truncated raster", cur.pos());
      const char c = cur.peek();
      if (c != '0' && c != '1') {
        throw ParseError(std::string("unexpected character '") + c + "' in raster", cur.pos());
      }
      b = static_cast<std::uint8_t>(c - '0');
      cur.advance();
    }
  }
  return BinaryImage(width, height, std::move(bits));
}

// Canonical output: "P<k>\n<w> <h>\n" then the raster. P4 rows are padded with
// zero bits; P1 rows are space separated and wrapped at 35 values per line.
inline std::string write_pbm(const BinaryImage& image, Variant variant) {
  std::string out = variant == Variant::P1 ? "P1\n" : "P4\n";
  out += std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n";
  const std::size_t w = image.width();
  if (variant == Variant::P4) {
    const std::size_t stride = detail::row_bytes(w);
    const std::size_t header = out.size();
    out.resize(header + stride * image.height(), '\0');
    for (std::size_t y = 0; y < image.height(); ++y) {
      for (std::size_t x = 0; x < w; ++x) {
        if (image.at(x, y)) {
          auto& byte = out[header + y * stride + x / 8];
          byte = static_cast<char>(static_cast<unsigned char>(byte) | (0x80U >> (x % 8)));
        }
      }
    }
  } else {
    out.reserve(out.size() + image.size() * 2);
    for (std::size_t y = 0; y < image.height(); ++y) {
      for (std::size_t x = 0; x < w; ++x) {
        out += image.at(x, y) ? '1' : '0';
        const bool line_end = x + 1 == w || (x + 1) % kPlainValuesPerLine == 0;
        out += line_end ? '\n' : ' ';
      }
    }
  }
  return out;
}

inline std::string read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error("read failed: " + path.string());
  return data;
}

inline BinaryImage read_pbm_file(const std::filesystem::path& path) {
  const std::string data = read_file_bytes(path);
  try {
    return read_pbm(data);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.detail(), e.offset());
  }
}

}  // namespace qvmss::pbm
