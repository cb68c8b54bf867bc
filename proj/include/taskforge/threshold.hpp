/*
Copyright 2026 The Taskforge Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <string>

#include "taskforge/scalar.hpp"

namespace taskforge {

/// An exact rational or an irrational root enclosed by a shrinking rational
/// interval (lo, hi). Comparisons against rationals refine until decided.
class ThresholdConstant {
 public:
  enum class Kind { Rational, Phi, Xi, Psi };

  static ThresholdConstant rational(const Scalar& q);
  static ThresholdConstant phi();
  static ThresholdConstant xi();
  static ThresholdConstant psi();
  /// Initial bracket for an irrational kind, before any refinement.
  static ThresholdConstant bracket(Kind k);

  Kind kind() const { return kind_; }
  std::string name() const;

  const Scalar& lo() const { return lo_; }
  const Scalar& hi() const { return hi_; }
  Scalar width() const { return hi_ - lo_; }

  /// Bisect until hi - lo <= w.
  void refine(const Scalar& w);
  /// Dyadic midpoint of the current enclosure (exact for rationals).
  Scalar approx() const;

  /// sign(x - K), exact. Refines a private copy as needed.
  int compare(const Scalar& x) const;
  /// sign(x - K * c) for finite c >= 0; x may be infinite.
  int compare_scaled(const Scalar& x, const Scalar& c) const;

  /// Sign of the defining polynomial at v (0 for rational kind when v == q).
  int poly_sign(const Scalar& v) const;

 private:
  ThresholdConstant(Kind k, Scalar lo, Scalar hi);
  void halve();

  Kind kind_;
  Scalar lo_, hi_;
};

/// Bisection enclosure of xi to width <= precision.
ThresholdConstant xi_constant(const Scalar& precision);

}  // namespace taskforge
