// Copyright 2026 The shadowfit authors
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

#include "shadowfit/counts.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace shadowfit {

std::int64_t PixelCounts::total() const {
  std::int64_t n = 0;
  for (std::int64_t c : counts) {
    n += c;
  }
  return n;
}

CountTable::CountTable(const std::vector<CountRecord>& records) {
  std::map<double, PixelCounts> by_x;
  for (const CountRecord& rec : records) {
    if (rec.count < 0) {
      throw std::invalid_argument("CountTable: negative count");
    }
    PixelCounts& pixel = by_x[rec.x];
    pixel.x = rec.x;
    pixel.counts[static_cast<std::size_t>(rec.projector)] += rec.count;
  }
  pixels_.reserve(by_x.size());
  for (auto& [x, pixel] : by_x) {
    pixels_.push_back(pixel);
  }
}

CountTable CountTable::from_pixels(std::vector<PixelCounts> pixels) {
  std::sort(pixels.begin(), pixels.end(),
            [](const PixelCounts& a, const PixelCounts& b) { return a.x < b.x; });
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    for (std::int64_t c : pixels[i].counts) {
      if (c < 0) {
        throw std::invalid_argument("CountTable: negative count");
      }
    }
    if (i > 0 && pixels[i].x == pixels[i - 1].x) {
      throw std::invalid_argument("CountTable: duplicate x row");
    }
  }
  CountTable table;
  table.pixels_ = std::move(pixels);
  return table;
}

std::vector<double> CountTable::occupied_xs() const {
  std::vector<double> xs;
  xs.reserve(pixels_.size());
  for (const PixelCounts& pixel : pixels_) {
    if (pixel.total() > 0) {
      xs.push_back(pixel.x);
    }
  }
  return xs;
}

const PixelCounts* CountTable::find(double x) const {
  const auto it = std::lower_bound(
      pixels_.begin(), pixels_.end(), x,
      [](const PixelCounts& pixel, double value) { return pixel.x < value; });
  if (it == pixels_.end() || it->x != x) {
    return nullptr;
  }
  return &*it;
}

std::int64_t CountTable::total_count() const {
  std::int64_t n = 0;
  for (const PixelCounts& pixel : pixels_) {
    n += pixel.total();
  }
  return n;
}

}  // namespace shadowfit
