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

#ifndef LRETRACT_ERRORS_HPP_
#define LRETRACT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace lretract {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A vector had the wrong number of coordinates for the requested operation.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An input point lies outside the domain required by an operation. The
/// offending level value (the domain's defining function, < 1 inside) is kept
/// so callers can report how far outside the point is.
class DomainError : public Error {
 public:
  DomainError(const std::string& what, double level)
      : Error(what), level_(level) {}
  double level() const noexcept { return level_; }

 private:
  double level_;
};

/// Analytic continuation of a root branch hit (or came too close to) the
/// branch locus, so the continued value is not well defined.
class BranchAmbiguityError : public Error {
 public:
  using Error::Error;
};

/// A retraction or map descriptor has parameters outside their legal range.
class SpecError : public Error {
 public:
  using Error::Error;
};

/// A closed-form inverse was requested for a (numerically) singular matrix.
class SingularError : public Error {
 public:
  using Error::Error;
};

}  // namespace lretract

#endif  // LRETRACT_ERRORS_HPP_
