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

#include "shadowfit/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace shadowfit {
namespace {

using Point = std::vector<double>;

double spread(const std::vector<double>& values) {
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return *hi - *lo;
}

double diameter(const std::vector<Point>& simplex) {
  double d = 0.0;
  const Point& base = simplex.front();
  for (std::size_t i = 1; i < simplex.size(); ++i) {
    double dist = 0.0;
    for (std::size_t j = 0; j < base.size(); ++j) {
      dist = std::max(dist, std::abs(simplex[i][j] - base[j]));
    }
    d = std::max(d, dist);
  }
  return d;
}

}  // namespace

NelderMeadResult nelder_mead_minimize(
    const std::function<double(std::span<const double>)>& objective,
    std::span<const double> start, const NelderMeadOptions& options) {
  const std::size_t n = start.size();
  if (n == 0) {
    throw std::invalid_argument("nelder_mead_minimize: empty start point");
  }

  NelderMeadResult result;
  auto eval = [&](const Point& p) {
    ++result.evaluations;
    return objective(std::span<const double>(p));
  };

  // Start simplex: the start point plus one vertex offset per coordinate.
  std::vector<Point> simplex;
  simplex.reserve(n + 1);
  simplex.emplace_back(start.begin(), start.end());
  for (std::size_t j = 0; j < n; ++j) {
    Point vertex(start.begin(), start.end());
    vertex[j] += options.initial_step * std::max(1.0, std::abs(vertex[j]));
    simplex.push_back(std::move(vertex));
  }
  std::vector<double> values(simplex.size());
  for (std::size_t i = 0; i < simplex.size(); ++i) {
    values[i] = eval(simplex[i]);
  }

  std::vector<std::size_t> order(simplex.size());
  const auto sort_simplex = [&]() {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a,
                                                     std::size_t b) {
      return values[a] < values[b];
    });
  };

  for (result.iterations = 0; result.iterations < options.max_iterations;
       ++result.iterations) {
    sort_simplex();
    if (spread(values) <= options.f_tolerance &&
        diameter(simplex) <= options.x_tolerance) {
      result.converged = true;
      break;
    }

    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[order.size() - 2];

    // Centroid of all vertices except the worst.
    Point centroid(n, 0.0);
    for (std::size_t i : order) {
      if (i == worst) {
        continue;
      }
      for (std::size_t j = 0; j < n; ++j) {
        centroid[j] += simplex[i][j];
      }
    }
    for (double& c : centroid) {
      c /= static_cast<double>(n);
    }

    const auto blend = [&](double coeff) {
      Point p(n);
      for (std::size_t j = 0; j < n; ++j) {
        p[j] = centroid[j] + coeff * (centroid[j] - simplex[worst][j]);
      }
      return p;
    };

    Point reflected = blend(options.reflection);
    const double f_reflected = eval(reflected);

    if (f_reflected < values[best]) {
      Point expanded = blend(options.expansion);
      const double f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        simplex[worst] = std::move(expanded);
        values[worst] = f_expanded;
      } else {
        simplex[worst] = std::move(reflected);
        values[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < values[second_worst]) {
      simplex[worst] = std::move(reflected);
      values[worst] = f_reflected;
      continue;
    }

    // Contract toward the centroid, outside or inside of the worst vertex.
    const bool outside = f_reflected < values[worst];
    Point contracted =
        blend(outside ? options.reflection * options.contraction
                      : -options.contraction);
    const double f_contracted = eval(contracted);
    if (f_contracted < std::min(f_reflected, values[worst])) {
      simplex[worst] = std::move(contracted);
      values[worst] = f_contracted;
      continue;
    }

    // Shrink everything toward the best vertex.
    for (std::size_t i : order) {
      if (i == best) {
        continue;
      }
      for (std::size_t j = 0; j < n; ++j) {
        simplex[i][j] = simplex[best][j] +
                        options.shrink * (simplex[i][j] - simplex[best][j]);
      }
      values[i] = eval(simplex[i]);
    }
  }

  sort_simplex();
  result.best = simplex[order.front()];
  result.best_value = values[order.front()];
  return result;
}

}  // namespace shadowfit
