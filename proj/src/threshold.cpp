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

#include "taskforge/threshold.hpp"

namespace taskforge {

namespace {

const Scalar& default_width() {
  static const Scalar w = pow10_neg(30);
  return w;
}

}  // namespace

ThresholdConstant::ThresholdConstant(Kind k, Scalar lo, Scalar hi)
    : kind_(k), lo_(std::move(lo)), hi_(std::move(hi)) {}

ThresholdConstant ThresholdConstant::rational(const Scalar& q) {
  return ThresholdConstant(Kind::Rational, q, q);
}

ThresholdConstant ThresholdConstant::bracket(Kind k) {
  switch (k) {
    case Kind::Phi: return ThresholdConstant(k, Scalar(1), Scalar(2));
    case Kind::Xi: return ThresholdConstant(k, Scalar(3, 2), Scalar(2));
    case Kind::Psi: return ThresholdConstant(k, Scalar(0), Scalar(1));
    case Kind::Rational: break;
  }
  throw std::invalid_argument("bracket: rational constants have no bracket");
}

ThresholdConstant ThresholdConstant::phi() {
  ThresholdConstant c = bracket(Kind::Phi);
  c.refine(default_width());
  return c;
}

ThresholdConstant ThresholdConstant::xi() {
  ThresholdConstant c = bracket(Kind::Xi);
  c.refine(default_width());
  return c;
}

ThresholdConstant ThresholdConstant::psi() {
  ThresholdConstant c = bracket(Kind::Psi);
  c.refine(default_width());
  return c;
}

std::string ThresholdConstant::name() const {
  switch (kind_) {
    case Kind::Rational: return lo_.str();
    case Kind::Phi: return "phi";
    case Kind::Xi: return "xi";
    case Kind::Psi: return "psi";
  }
  return "?";
}

int ThresholdConstant::poly_sign(const Scalar& v) const {
  const mpq_class& x = v.rational();
  mpq_class f;
  switch (kind_) {
    case Kind::Rational: f = x - lo_.rational(); break;
    case Kind::Phi: f = x * x - x - 1; break;
    case Kind::Xi: f = 2 * x * x * x - 3 * x * x - 1; break;
    case Kind::Psi: f = 2 * x * x + 2 * x - 1; break;
  }
  return sgn(f);
}

void ThresholdConstant::halve() {
  // every polynomial here is increasing through its root on the start interval
  Scalar mid = (lo_ + hi_) / Scalar(2);
  int s = poly_sign(mid);
  if (s < 0) {
    lo_ = mid;
  } else {
    // s == 0 is impossible for the irrational roots
    hi_ = mid;
  }
}

void ThresholdConstant::refine(const Scalar& w) {
  if (kind_ == Kind::Rational) return;
  while (hi_ - lo_ > w) halve();
}

Scalar ThresholdConstant::approx() const {
  if (kind_ == Kind::Rational) return lo_;
  return (lo_ + hi_) / Scalar(2);
}

int ThresholdConstant::compare(const Scalar& x) const {
  if (x.is_infinite()) return 1;
  if (kind_ == Kind::Rational) {
    auto c = x <=> lo_;
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  ThresholdConstant k = *this;
  for (;;) {
    if (x <= k.lo_) return -1;
    if (x >= k.hi_) return 1;
    k.halve();
  }
}

int ThresholdConstant::compare_scaled(const Scalar& x, const Scalar& c) const {
  if (x.is_infinite()) return 1;
  if (c.is_zero()) return x.sign();
  return compare(x / c);
}

ThresholdConstant xi_constant(const Scalar& precision) {
  ThresholdConstant c = ThresholdConstant::bracket(ThresholdConstant::Kind::Xi);
  c.refine(precision);
  return c;
}

}  // namespace taskforge
