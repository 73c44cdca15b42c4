// Copyright 2026 The lretract Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LRETRACT_OPTIMIZE_HPP_
#define LRETRACT_OPTIMIZE_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace lretract {

using Objective = std::function<double(std::span<const double>)>;

struct NelderMeadOptions {
  double initial_step = 0.1;
  std::size_t max_evaluations = 1000;
  /// Stop once the simplex diameter and the spread of values both fall
  /// below these.
  double x_tol = 1e-13;
  double f_tol = 1e-15;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Derivative-free simplex minimisation (standard coefficients 1, 2, 1/2,
/// 1/2). The evaluation sequence depends only on f, x0 and the options, so
/// runs are reproducible and a larger budget only extends a smaller one.
NelderMeadResult nelder_mead(const Objective& f, std::span<const double> x0,
                             const NelderMeadOptions& options);

}  // namespace lretract

#endif  // LRETRACT_OPTIMIZE_HPP_
