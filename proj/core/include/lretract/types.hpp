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

#ifndef LRETRACT_TYPES_HPP_
#define LRETRACT_TYPES_HPP_

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

namespace lretract {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

/// A point or tangent vector of C^n.
class CVec {
 public:
  CVec() = default;
  explicit CVec(std::size_t dim) : entries_(dim) {}
  CVec(std::initializer_list<Complex> init) : entries_(init) {}
  explicit CVec(std::vector<Complex> entries) : entries_(std::move(entries)) {}

  std::size_t dim() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  Complex& operator[](std::size_t i) { return entries_[i]; }
  const Complex& operator[](std::size_t i) const { return entries_[i]; }

  std::span<const Complex> entries() const noexcept { return entries_; }
  std::span<Complex> entries() noexcept { return entries_; }

  auto begin() noexcept { return entries_.begin(); }
  auto end() noexcept { return entries_.end(); }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  bool all_finite() const noexcept;

  CVec& operator+=(const CVec& other);
  CVec& operator-=(const CVec& other);
  CVec& operator*=(Complex s) noexcept;

  friend CVec operator+(CVec a, const CVec& b) { return a += b; }
  friend CVec operator-(CVec a, const CVec& b) { return a -= b; }
  friend CVec operator*(CVec a, Complex s) { return a *= s; }
  friend CVec operator*(Complex s, CVec a) { return a *= s; }
  friend CVec operator*(double s, CVec a) { return a *= Complex(s); }

  friend bool operator==(const CVec&, const CVec&) = default;

 private:
  std::vector<Complex> entries_;
};

double norm_sq(const CVec& z) noexcept;
double norm(const CVec& z) noexcept;
double max_abs(const CVec& z) noexcept;
double distance(const CVec& a, const CVec& b);

/// Hermitian product sum z_j conj(w_j).
Complex inner(const CVec& z, const CVec& w);

/// Bilinear product z . w = sum z_j w_j (no conjugation).
Complex bullet(const CVec& z, const CVec& w);

/// Lexicographic order on (re, im) of the coordinates; used for
/// deterministic tie-breaking when merging reports.
bool lex_less(const CVec& a, const CVec& b) noexcept;

/// Throws DimensionError unless z.dim() == expected.
void require_dim(const CVec& z, std::size_t expected, std::string_view what);

/// A 2x2 complex symmetric matrix [[a11, a12], [a12, a22]].
struct SymMat2 {
  Complex a11{};
  Complex a12{};
  Complex a22{};

  Complex det() const noexcept { return a11 * a22 - a12 * a12; }
  double frobenius_sq() const noexcept;

  /// Singular values from the eigenvalues of A*A:
  /// s^2 = (|A|_F^2 +- sqrt(|A|_F^4 - 4|det A|^2)) / 2.
  double sigma_max() const noexcept;
  double sigma_min() const noexcept;

  /// Packs as (a11, a12, a22).
  CVec to_cvec() const { return CVec{a11, a12, a22}; }
  static SymMat2 from_cvec(const CVec& v);

  friend bool operator==(const SymMat2&, const SymMat2&) = default;
};

double distance(const SymMat2& a, const SymMat2& b) noexcept;

}  // namespace lretract

#endif  // LRETRACT_TYPES_HPP_
