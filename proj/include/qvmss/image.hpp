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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qvmss/errors.hpp"

namespace qvmss {

// Width x height grid of classical bits, row-major.
// 0 = transparent/white, 1 = opaque/black.
class BinaryImage {
 public:
  BinaryImage() = default;

  BinaryImage(std::size_t width, std::size_t height, std::uint8_t fill = 0)
      : width_(width), height_(height), bits_(width * height, fill ? 1 : 0) {}

  BinaryImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> bits)
      : width_(width), height_(height), bits_(std::move(bits)) {
    if (bits_.size() != width_ * height_) {
      throw ShapeError("bit count " + std::to_string(bits_.size()) + " does not match " +
                       std::to_string(width_) + "x" + std::to_string(height_));
    }
    for (auto& b : bits_) {
      if (b > 1) throw ShapeError("pixel value outside {0,1}");
    }
  }

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }

  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  std::uint8_t at(std::size_t x, std::size_t y) const { return bits_[y * width_ + x]; }

  void set(std::size_t i, std::uint8_t bit) { bits_[i] = bit ? 1 : 0; }
  void set(std::size_t x, std::size_t y, std::uint8_t bit) { set(y * width_ + x, bit); }
  void flip(std::size_t i) { bits_[i] ^= 1; }

  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  bool same_shape(const BinaryImage& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  std::size_t count_ones() const noexcept {
    std::size_t n = 0;
    for (auto b : bits_) n += b;
    return n;
  }

  friend bool operator==(const BinaryImage&, const BinaryImage&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<std::uint8_t> bits_;
};

inline void require_same_shape(const BinaryImage& a, const BinaryImage& b, const char* what) {
  if (!a.same_shape(b)) {
    throw ShapeError(std::string(what) + ": " + std::to_string(a.width()) + "x" +
                     std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                     std::to_string(b.height()));
  }
}

inline BinaryImage xor_images(const BinaryImage& a, const BinaryImage& b) {
  require_same_shape(a, b, "xor");
  std::vector<std::uint8_t> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] ^ b[i];
  return BinaryImage(a.width(), a.height(), std::move(out));
}

inline BinaryImage complement(const BinaryImage& a) {
  std::vector<std::uint8_t> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] ^ 1;
  return BinaryImage(a.width(), a.height(), std::move(out));
}

}  // namespace qvmss
