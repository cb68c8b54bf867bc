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

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace taskforge {

/// Raised when a numeric literal cannot be read exactly.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact rational time/work value with a distinguished +infinity.
///
/// Finite values are arbitrary-precision rationals (negative values are
/// permitted for intermediate differences; the task model only stores
/// non-negative ones). Infinity absorbs addition and dominates every finite
/// value. Operations without a meaningful value (inf - inf, 0 * inf, x / 0,
/// inf / inf) throw std::domain_error.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(int v) : value_(v) {}   // NOLINT(google-explicit-constructor)
  Scalar(long num, long den);
  explicit Scalar(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

  static Scalar infinity();
  static Scalar ratio(const mpz_class& num, const mpz_class& den);

  /// Parses "inf", "num/den", an integer, or a decimal such as "0.125" or
  /// "1e-6". Exact; no floating point is involved.
  static Scalar parse(std::string_view text);

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  bool is_zero() const { return !infinite_ && sgn(value_) == 0; }
  int sign() const { return infinite_ ? 1 : sgn(value_); }

  /// Finite value; throws std::domain_error on infinity.
  const mpq_class& rational() const;

  /// "inf", "n" or "n/d".
  std::string str() const;
  /// Decimal rendering rounded to `digits` fractional digits (half away
  /// from zero). "inf" for infinity.
  std::string decimal(int digits = 12) const;
  /// Nearest double; +inf maps to HUGE_VAL. For reporting only.
  double to_double() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

  /// Smallest integer >= value (finite only).
  mpz_class ceil() const;
  /// Largest integer <= value (finite only).
  mpz_class floor() const;

 private:
  mpq_class value_{0};
  bool infinite_ = false;
};

Scalar min(const Scalar& a, const Scalar& b);
Scalar max(const Scalar& a, const Scalar& b);

/// 10^-k as an exact Scalar.
Scalar pow10_neg(int k);
/// 2^k (k may be negative).
Scalar pow2(int k);

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace taskforge
