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

#include "taskforge/scalar.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

namespace taskforge {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class pow10(unsigned long k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, k);
  return r;
}

}  // namespace

Scalar::Scalar(long num, long den) {
  if (den == 0) throw std::domain_error("Scalar: zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Scalar Scalar::infinity() {
  Scalar s;
  s.infinite_ = true;
  return s;
}

Scalar Scalar::ratio(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::domain_error("Scalar: zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return Scalar(q);
}

Scalar Scalar::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s == "inf" || s == "+inf" || s == "infinity") return infinity();
  if (s.empty()) throw ParseError("empty number");

  bool negative = false;
  std::string_view body = s;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  mpq_class q;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw ParseError("malformed rational '" + std::string(text) + "'");
    }
    mpz_class d(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    q = mpq_class(mpz_class(std::string(num), 10), d);
  } else {
    std::string_view mant = body;
    long exponent = 0;
    if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
      mant = body.substr(0, e);
      auto ex = body.substr(e + 1);
      bool eneg = false;
      if (!ex.empty() && (ex.front() == '-' || ex.front() == '+')) {
        eneg = ex.front() == '-';
        ex.remove_prefix(1);
      }
      if (!all_digits(ex) || ex.size() > 6) {
        throw ParseError("malformed exponent in '" + std::string(text) + "'");
      }
      exponent = std::stol(std::string(ex));
      if (eneg) exponent = -exponent;
    }
    std::string digits;
    long frac_len = 0;
    if (auto dot = mant.find('.'); dot != std::string_view::npos) {
      auto ip = mant.substr(0, dot);
      auto fp = mant.substr(dot + 1);
      if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) ||
          (ip.empty() && fp.empty())) {
        throw ParseError("malformed decimal '" + std::string(text) + "'");
      }
      digits = std::string(ip) + std::string(fp);
      frac_len = static_cast<long>(fp.size());
    } else {
      if (!all_digits(mant)) throw ParseError("malformed number '" + std::string(text) + "'");
      digits = std::string(mant);
    }
    mpz_class m(digits, 10);
    long scale = exponent - frac_len;
    if (scale >= 0) {
      q = mpq_class(m * pow10(static_cast<unsigned long>(scale)));
    } else {
      q = mpq_class(m, pow10(static_cast<unsigned long>(-scale)));
    }
  }
  q.canonicalize();
  if (negative) q = -q;
  return Scalar(q);
}

const mpq_class& Scalar::rational() const {
  if (infinite_) throw std::domain_error("Scalar: infinite value has no rational form");
  return value_;
}

std::string Scalar::str() const {
  if (infinite_) return "inf";
  return value_.get_str();
}

std::string Scalar::decimal(int digits) const {
  if (infinite_) return "inf";
  if (digits < 0) digits = 0;
  const mpz_class scale = pow10(static_cast<unsigned long>(digits));
  mpq_class scaled = abs(value_) * scale;
  // round half away from zero
  mpz_class twice = (scaled.get_num() * 2 + scaled.get_den()) / (scaled.get_den() * 2);
  std::string s = twice.get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<size_t>(digits)) s.insert(0, static_cast<size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<size_t>(digits), ".");
  }
  if (sgn(value_) < 0 && twice != 0) s.insert(0, "-");
  return s;
}

double Scalar::to_double() const {
  if (infinite_) return HUGE_VAL;
  return value_.get_d();
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (infinite_ || o.infinite_) {
    infinite_ = true;
    value_ = 0;
    return *this;
  }
  value_ += o.value_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (o.infinite_) throw std::domain_error("Scalar: subtracting infinity");
  if (infinite_) return *this;
  value_ -= o.value_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (infinite_ || o.infinite_) {
    const Scalar& fin = infinite_ ? o : *this;
    if (!fin.infinite_ && sgn(fin.value_) <= 0) {
      throw std::domain_error("Scalar: infinity times non-positive value");
    }
    infinite_ = true;
    value_ = 0;
    return *this;
  }
  value_ *= o.value_;
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.infinite_) {
    if (infinite_) throw std::domain_error("Scalar: inf / inf");
    value_ = 0;
    return *this;
  }
  if (sgn(o.value_) == 0) throw std::domain_error("Scalar: division by zero");
  if (infinite_) {
    if (sgn(o.value_) < 0) throw std::domain_error("Scalar: infinity divided by negative value");
    return *this;
  }
  value_ /= o.value_;
  return *this;
}

Scalar Scalar::operator-() const {
  if (infinite_) throw std::domain_error("Scalar: negating infinity");
  return Scalar(mpq_class(-value_));
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.value_ == b.value_;
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  if (a.infinite_ || b.infinite_) {
    if (a.infinite_ == b.infinite_) return std::strong_ordering::equal;
    return a.infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  int c = cmp(a.value_, b.value_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

mpz_class Scalar::ceil() const {
  const mpq_class& q = rational();
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

mpz_class Scalar::floor() const {
  const mpq_class& q = rational();
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Scalar min(const Scalar& a, const Scalar& b) { return b < a ? b : a; }
Scalar max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

Scalar pow10_neg(int k) {
  if (k >= 0) return Scalar::ratio(mpz_class(1), pow10(static_cast<unsigned long>(k)));
  return Scalar::ratio(pow10(static_cast<unsigned long>(-k)), mpz_class(1));
}

Scalar pow2(int k) {
  mpz_class p = 1;
  p <<= static_cast<mp_bitcnt_t>(k < 0 ? -k : k);
  return k >= 0 ? Scalar::ratio(p, 1) : Scalar::ratio(1, p);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace taskforge
