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

#ifndef LRETRACT_SAMPLING_HPP_
#define LRETRACT_SAMPLING_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "lretract/types.hpp"

namespace lretract {

/// Seeded source of the random points used by samplers and verifiers.
/// Every draw is a deterministic function of the seed and the call sequence.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double uniform();                        // [0, 1)
  double uniform(double lo, double hi);    // [lo, hi)
  double normal();
  std::uint64_t index(std::uint64_t n);    // [0, n)

  Complex unimodular();
  Complex complex_normal();
  /// Uniform point of the open disc of the given radius.
  Complex disc(double radius = 1.0);

  /// Uniform direction on the unit sphere of C^n.
  CVec complex_sphere(std::size_t n);
  /// Uniform direction on the unit sphere of R^n, as a complex vector.
  CVec real_sphere(std::size_t n);
  /// Uniform point of the open unit ball of C^n.
  CVec ball(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

/// Deterministic, nested sequence of points on the unit circle
/// (van der Corput in base 2). The first n points of the sequence of length
/// m > n are exactly the sequence of length n.
std::vector<Complex> circle_sequence(std::size_t n);

/// Equispaced points exp(2 pi i k / n), k = 0..n-1.
std::vector<Complex> circle_grid(std::size_t n);

}  // namespace lretract

#endif  // LRETRACT_SAMPLING_HPP_
