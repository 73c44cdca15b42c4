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

#include "lretract/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace lretract {
namespace {

struct Vertex {
  std::vector<double> x;
  double f;
};

double sanitize(double v) {
  return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
}

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::span<const double> x0,
                             const NelderMeadOptions& options) {
  const std::size_t n = x0.size();
  NelderMeadResult result;
  std::size_t evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return sanitize(f(x));
  };

  std::vector<Vertex> simplex;
  simplex.reserve(n + 1);
  {
    std::vector<double> x(x0.begin(), x0.end());
    simplex.push_back({x, eval(x)});
    for (std::size_t i = 0; i < n && evals < options.max_evaluations; ++i) {
      std::vector<double> y = x;
      y[i] += options.initial_step;
      simplex.push_back({y, eval(y)});
    }
  }
  if (simplex.size() < n + 1 || n == 0) {
    auto best = std::min_element(simplex.begin(), simplex.end(),
                                 [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    result.x = best->x;
    result.value = best->f;
    result.evaluations = evals;
    return result;
  }

  auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
  std::vector<double> centroid(n), trial(n);

  while (evals < options.max_evaluations) {
    std::stable_sort(simplex.begin(), simplex.end(), by_value);

    double diameter = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        diameter = std::max(diameter, std::abs(simplex[k].x[i] - simplex[0].x[i]));
      }
    }
    if (diameter < options.x_tol &&
        std::abs(simplex[n].f - simplex[0].f) < options.f_tol) {
      result.converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[k].x[i];
    }
    for (auto& c : centroid) c /= static_cast<double>(n);

    auto along = [&](double t) {
      for (std::size_t i = 0; i < n; ++i) {
        trial[i] = centroid[i] + t * (simplex[n].x[i] - centroid[i]);
      }
      return trial;
    };

    std::vector<double> xr = along(-1.0);
    const double fr = eval(xr);
    if (fr < simplex[0].f) {
      if (evals >= options.max_evaluations) {
        simplex[n] = {xr, fr};
        break;
      }
      std::vector<double> xe = along(-2.0);
      const double fe = eval(xe);
      simplex[n] = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
      continue;
    }
    if (fr < simplex[n - 1].f) {
      simplex[n] = {xr, fr};
      continue;
    }
    if (evals >= options.max_evaluations) break;
    const bool outside = fr < simplex[n].f;
    std::vector<double> xc = along(outside ? -0.5 : 0.5);
    const double fc = eval(xc);
    if (fc < std::min(fr, simplex[n].f)) {
      simplex[n] = {xc, fc};
      continue;
    }
    for (std::size_t k = 1; k <= n && evals < options.max_evaluations; ++k) {
      std::vector<double> shrunk(n);
      for (std::size_t i = 0; i < n; ++i) {
        shrunk[i] = simplex[0].x[i] + 0.5 * (simplex[k].x[i] - simplex[0].x[i]);
      }
      const double fs = eval(shrunk);
      simplex[k] = {std::move(shrunk), fs};
    }
  }

  auto best = std::min_element(simplex.begin(), simplex.end(), by_value);
  result.x = best->x;
  result.value = best->f;
  result.evaluations = evals;
  return result;
}

}  // namespace lretract
