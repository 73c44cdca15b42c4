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

#include "lretract/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lretract {

bool VerificationReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed; });
}

const CheckResult* VerificationReport::find(const std::string& check_name) const noexcept {
  for (const auto& c : checks) {
    if (c.name == check_name) return &c;
  }
  return nullptr;
}

void ViolationMax::add(double violation, const CVec& witness) {
  ++count_;
  if (std::isnan(violation)) {
    if (!saw_nan_ || lex_less(witness, witness_)) witness_ = witness;
    saw_nan_ = true;
    has_witness_ = true;
    return;
  }
  if (saw_nan_) return;
  if (!has_witness_ || violation > max_ ||
      (violation == max_ && lex_less(witness, witness_))) {
    max_ = violation;
    witness_ = witness;
    has_witness_ = true;
  }
}

void ViolationMax::merge(const ViolationMax& other) {
  if (other.has_witness_) {
    const std::size_t keep = count_;
    add(other.saw_nan_ ? std::numeric_limits<double>::quiet_NaN() : other.max_,
        other.witness_);
    count_ = keep;
  }
  count_ += other.count_;
}

CheckResult ViolationMax::finish(std::string name, double tol) const {
  CheckResult r;
  r.name = std::move(name);
  r.max_violation = saw_nan_ ? std::numeric_limits<double>::quiet_NaN() : max_;
  r.witness = witness_;
  r.samples = count_;
  r.tolerance = tol;
  r.passed = !saw_nan_ && max_ <= tol;
  return r;
}

}  // namespace lretract
