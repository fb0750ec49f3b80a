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

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "shadowfit/qubit.hpp"

namespace shadowfit {

/// One (x, projector, count) observation.
struct CountRecord {
  double x = 0.0;
  Projector projector = Projector::H;
  std::int64_t count = 0;
};

/// All six projector counts at one x value.
struct PixelCounts {
  double x = 0.0;
  std::array<std::int64_t, 6> counts = {0, 0, 0, 0, 0, 0};

  std::int64_t count(Projector p) const {
    return counts[static_cast<std::size_t>(p)];
  }
  std::int64_t total() const;

  bool operator==(const PixelCounts&) const = default;
};

/// Normalized photon-count table: rows sorted by x, exactly one row per x,
/// no negative counts. Duplicate (x, projector) records merge by summation
/// at construction. x values group by exact floating-point equality; the
/// simulator and the CSV round trip preserve bits, so this is well defined.
class CountTable {
 public:
  CountTable() = default;

  /// Merge raw records. Throws std::invalid_argument on a negative count.
  explicit CountTable(const std::vector<CountRecord>& records);

  /// Adopt pre-aggregated pixels. Sorts by x; throws std::invalid_argument
  /// on duplicate x or negative counts.
  static CountTable from_pixels(std::vector<PixelCounts> pixels);

  const std::vector<PixelCounts>& pixels() const { return pixels_; }

  /// The x values with at least one count, in ascending order. Zero-count
  /// rows are retained in the table but excluded here, so they never affect
  /// losses.
  std::vector<double> occupied_xs() const;

  /// Row at exactly x, or nullptr.
  const PixelCounts* find(double x) const;

  std::int64_t total_count() const;
  std::size_t size() const { return pixels_.size(); }
  bool empty() const { return pixels_.empty(); }

  bool operator==(const CountTable&) const = default;

 private:
  std::vector<PixelCounts> pixels_;
};

}  // namespace shadowfit
