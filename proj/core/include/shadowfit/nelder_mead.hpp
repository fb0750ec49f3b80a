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

#include <functional>
#include <span>
#include <vector>

namespace shadowfit {

/// Classic derivative-free downhill-simplex minimizer with the standard
/// reflection / expansion / contraction / shrink moves. Deterministic:
/// the same start and objective always walk the same path.
struct NelderMeadOptions {
  int max_iterations = 800;
  double f_tolerance = 1e-12;   ///< stop when the simplex f-spread is below
  double x_tolerance = 1e-9;    ///< ... and its diameter is below this
  double initial_step = 0.25;   ///< per-coordinate offset of the start simplex
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
};

struct NelderMeadResult {
  std::vector<double> best;
  double best_value = 0.0;
  int iterations = 0;
  long evaluations = 0;
  bool converged = false;
};

NelderMeadResult nelder_mead_minimize(
    const std::function<double(std::span<const double>)>& objective,
    std::span<const double> start, const NelderMeadOptions& options = {});

}  // namespace shadowfit
