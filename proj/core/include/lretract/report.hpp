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

#ifndef LRETRACT_REPORT_HPP_
#define LRETRACT_REPORT_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "lretract/types.hpp"

namespace lretract {

struct CheckResult {
  std::string name;
  double max_violation = 0.0;
  CVec witness;
  std::size_t samples = 0;
  double tolerance = 0.0;
  bool passed = true;
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool passed() const noexcept;
  const CheckResult* find(const std::string& check_name) const noexcept;
};

/// Running maximum of a violation measure. Ties are broken by the
/// lexicographically smallest witness so merges are order independent.
class ViolationMax {
 public:
  void add(double violation, const CVec& witness);
  void merge(const ViolationMax& other);

  double value() const noexcept { return max_; }
  const CVec& witness() const noexcept { return witness_; }
  std::size_t count() const noexcept { return count_; }

  /// passed <=> max_violation <= tol (NaN violations never pass).
  CheckResult finish(std::string name, double tol) const;

 private:
  double max_ = 0.0;
  bool has_witness_ = false;
  bool saw_nan_ = false;
  CVec witness_;
  std::size_t count_ = 0;
};

}  // namespace lretract

#endif  // LRETRACT_REPORT_HPP_
