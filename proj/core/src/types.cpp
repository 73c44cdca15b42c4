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

#include "lretract/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lretract/errors.hpp"

namespace lretract {

bool CVec::all_finite() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](const Complex& c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
  });
}

CVec& CVec::operator+=(const CVec& other) {
  require_dim(other, dim(), "CVec +=");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other[i];
  return *this;
}

CVec& CVec::operator-=(const CVec& other) {
  require_dim(other, dim(), "CVec -=");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other[i];
  return *this;
}

CVec& CVec::operator*=(Complex s) noexcept {
  for (auto& e : entries_) e *= s;
  return *this;
}

double norm_sq(const CVec& z) noexcept {
  double acc = 0.0;
  for (const auto& c : z) acc += std::norm(c);
  return acc;
}

double norm(const CVec& z) noexcept { return std::sqrt(norm_sq(z)); }

double max_abs(const CVec& z) noexcept {
  double m = 0.0;
  for (const auto& c : z) m = std::max(m, std::abs(c));
  return m;
}

double distance(const CVec& a, const CVec& b) { return norm(a - b); }

Complex inner(const CVec& z, const CVec& w) {
  require_dim(w, z.dim(), "inner");
  Complex acc{};
  for (std::size_t i = 0; i < z.dim(); ++i) acc += z[i] * std::conj(w[i]);
  return acc;
}

Complex bullet(const CVec& z, const CVec& w) {
  require_dim(w, z.dim(), "bullet");
  Complex acc{};
  for (std::size_t i = 0; i < z.dim(); ++i) acc += z[i] * w[i];
  return acc;
}

bool lex_less(const CVec& a, const CVec& b) noexcept {
  const std::size_t n = std::min(a.dim(), b.dim());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return a.dim() < b.dim();
}

void require_dim(const CVec& z, std::size_t expected, std::string_view what) {
  if (z.dim() != expected) {
    throw DimensionError(std::string(what) + ": expected dimension " +
                         std::to_string(expected) + ", got " +
                         std::to_string(z.dim()));
  }
}

double SymMat2::frobenius_sq() const noexcept {
  return std::norm(a11) + 2.0 * std::norm(a12) + std::norm(a22);
}

double SymMat2::sigma_max() const noexcept {
  const double f = frobenius_sq();
  const double d = std::abs(det());
  // (f - 2d)(f + 2d) instead of f^2 - 4d^2 keeps the discriminant accurate
  // when the two singular values nearly coincide.
  const double disc = std::max(0.0, (f - 2.0 * d) * (f + 2.0 * d));
  return std::sqrt(0.5 * (f + std::sqrt(disc)));
}

double SymMat2::sigma_min() const noexcept {
  const double smax = sigma_max();
  return smax > 0.0 ? std::abs(det()) / smax : 0.0;
}

SymMat2 SymMat2::from_cvec(const CVec& v) {
  require_dim(v, 3, "SymMat2::from_cvec");
  return SymMat2{v[0], v[1], v[2]};
}

double distance(const SymMat2& a, const SymMat2& b) noexcept {
  return std::sqrt(std::norm(a.a11 - b.a11) + 2.0 * std::norm(a.a12 - b.a12) +
                   std::norm(a.a22 - b.a22));
}

}  // namespace lretract
