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

#include "lretract/sampling.hpp"

#include <cmath>
#include <numbers>

namespace lretract {

double Sampler::uniform() {
  return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
}

double Sampler::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double Sampler::normal() {
  return std::normal_distribution<double>(0.0, 1.0)(engine_);
}

std::uint64_t Sampler::index(std::uint64_t n) {
  return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
}

Complex Sampler::unimodular() {
  return std::polar(1.0, uniform(0.0, 2.0 * std::numbers::pi));
}

Complex Sampler::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

Complex Sampler::disc(double radius) {
  const double r = radius * std::sqrt(uniform());
  return r * unimodular();
}

CVec Sampler::complex_sphere(std::size_t n) {
  CVec v(n);
  double nrm = 0.0;
  while (nrm < 1e-300) {
    for (std::size_t i = 0; i < n; ++i) v[i] = complex_normal();
    nrm = norm(v);
  }
  return v * Complex(1.0 / nrm);
}

CVec Sampler::real_sphere(std::size_t n) {
  CVec v(n);
  double nrm = 0.0;
  while (nrm < 1e-300) {
    for (std::size_t i = 0; i < n; ++i) v[i] = normal();
    nrm = norm(v);
  }
  return v * Complex(1.0 / nrm);
}

CVec Sampler::ball(std::size_t n) {
  CVec dir = complex_sphere(n);
  // Radial law r^{2n} for uniform volume in real dimension 2n.
  const double r = std::pow(uniform(), 1.0 / (2.0 * static_cast<double>(n)));
  return dir * Complex(r);
}

std::vector<Complex> circle_sequence(std::size_t n) {
  std::vector<Complex> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    double x = 0.0;
    double f = 0.5;
    for (std::size_t m = k; m > 0; m >>= 1) {
      if (m & 1U) x += f;
      f *= 0.5;
    }
    out.push_back(std::polar(1.0, 2.0 * std::numbers::pi * x));
  }
  return out;
}

std::vector<Complex> circle_grid(std::size_t n) {
  std::vector<Complex> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(std::polar(
        1.0, 2.0 * std::numbers::pi * static_cast<double>(k) /
                 static_cast<double>(n)));
  }
  return out;
}

}  // namespace lretract
