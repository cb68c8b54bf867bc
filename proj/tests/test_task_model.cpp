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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "taskforge/io.hpp"
#include "taskforge/task.hpp"
#include "taskforge/threshold.hpp"

using namespace taskforge;

namespace {

Scalar S(const char* s) { return Scalar::parse(s); }

Scalar random_rational(std::mt19937_64& rng) {
  const long num = static_cast<long>(rng() % 2001) - 1000;
  const long den = static_cast<long>(rng() % 97) + 1;
  return Scalar(num, den);
}

}  // namespace

TEST_CASE("scalar parsing is exact") {
  // leading zeros are decimal, never octal
  CHECK(S("0.367") == Scalar(367, 1000));
  CHECK(S("0.09") == Scalar(9, 100));
  CHECK(S("010/08") == Scalar(5, 4));
  CHECK(S("0.1") == Scalar(1, 10));
  CHECK(S("3/6") == Scalar(1, 2));
  CHECK(S("1e-6") == Scalar(1, 1000000));
  CHECK(S("-2.5") == Scalar(-5, 2));
  CHECK(S("inf").is_infinite());
  CHECK(S(" 7 ") == Scalar(7));
  CHECK_THROWS_AS(S(""), ParseError);
  CHECK_THROWS_AS(S("1/0"), ParseError);
  CHECK_THROWS_AS(S("abc"), ParseError);
  CHECK_THROWS_AS(S("1.2.3"), ParseError);
}

TEST_CASE("scalar infinity dominates and rejects meaningless operations") {
  const Scalar inf = Scalar::infinity();
  CHECK(inf > Scalar(1000000));
  CHECK((inf + Scalar(1)).is_infinite());
  CHECK((inf * Scalar(2)).is_infinite());
  CHECK(Scalar(3) / inf == Scalar(0));
  CHECK(inf == Scalar::infinity());
  CHECK_THROWS_AS(inf - inf, std::domain_error);
  CHECK_THROWS_AS(inf * Scalar(0), std::domain_error);
  CHECK_THROWS_AS(Scalar(1) / Scalar(0), std::domain_error);
  CHECK(min(inf, Scalar(2)) == Scalar(2));
  CHECK(inf.str() == "inf");
}

TEST_CASE("scalar rendering") {
  CHECK(Scalar(1, 3).decimal(4) == "0.3333");
  CHECK(Scalar(2, 3).decimal(2) == "0.67");
  CHECK(Scalar(-1, 8).decimal(2) == "-0.13");
  CHECK(Scalar(5).decimal(0) == "5");
  CHECK(Scalar(6, 4).str() == "3/2");
  CHECK(Scalar(7, 2).ceil() == 4);
  CHECK(Scalar(7, 2).floor() == 3);
  CHECK(pow2(-3) == Scalar(1, 8));
  CHECK(pow10_neg(2) == Scalar(1, 100));
}

TEST_CASE("scalar arithmetic is associative and commutative") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    Scalar a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("threshold enclosures") {
  auto xi = xi_constant(Scalar(1, 1000));
  CHECK(xi.lo() > S("1.676"));
  CHECK(xi.hi() < S("1.679"));
  CHECK(xi.poly_sign(xi.lo()) < 0);
  CHECK(xi.poly_sign(xi.hi()) > 0);

  auto fine = xi_constant(pow10_neg(12));
  CHECK(fine.lo() >= S("1.677"));
  CHECK(fine.hi() <= S("1.678"));
  CHECK(fine.width() <= pow10_neg(12));
  CHECK(fine.lo().decimal(9) == xi_constant(pow10_neg(20)).lo().decimal(9));

  auto phi = ThresholdConstant::phi();
  CHECK(phi.compare(S("1.618")) < 0);
  CHECK(phi.compare(S("1.619")) > 0);
  CHECK(ThresholdConstant::xi().compare(phi.hi()) < 0);  // phi < xi

  auto psi = ThresholdConstant::psi();
  CHECK(psi.compare(S("0.366")) < 0);
  CHECK(psi.compare(S("0.367")) > 0);
  CHECK(ThresholdConstant::rational(Scalar(3, 2)).compare(Scalar(3, 2)) == 0);
  CHECK(phi.width() <= pow10_neg(30));
  CHECK(phi.compare_scaled(Scalar::infinity(), Scalar(1)) == 1);
  CHECK(phi.compare_scaled(Scalar(1), Scalar(0)) == 1);
}

TEST_CASE("validate_tap") {
  CHECK(validate_tap(Tap{}).ok());
  Tap bad_order;
  bad_order.add(Scalar(1), Scalar(1), Scalar(0));
  bad_order.add(Scalar(1), Scalar(1), Scalar(1));
  bad_order.add(Scalar(1), Scalar(1), Scalar(1, 2));
  auto v = validate_tap(bad_order);
  CHECK(v.message == "arrival order");
  CHECK(v.task_id == 3u);

  Tap zero;
  zero.add(Scalar(0), Scalar(0), Scalar(0));
  CHECK(validate_tap(zero).message == "zero-size task");

  Tap inf_ok;
  inf_ok.add(Scalar::infinity(), Scalar(1), Scalar(0));
  CHECK(validate_tap(inf_ok).ok());
}

TEST_CASE("validate_dtap structure summary") {
  Dtap chain;
  chain.tap.add(Scalar(1), Scalar(1), Scalar(0));
  chain.tap.add(Scalar(1), Scalar(1), Scalar(0));
  chain.deps = {{0, 1}};
  auto r = validate_dtap(chain);
  CHECK(r.violation.ok());
  CHECK(r.summary.is_chain_union);
  CHECK(r.summary.max_component_size == 2);
  CHECK(r.summary.chain_count == 1);

  Dtap cyc = chain;
  cyc.deps = {{0, 1}, {1, 0}};
  CHECK(validate_dtap(cyc).violation.message == "cycle");

  Dtap iso;
  for (int i = 0; i < 3; ++i) iso.tap.add(Scalar(1), Scalar(1), Scalar(0));
  auto s = validate_dtap(iso);
  CHECK(s.violation.ok());
  CHECK(s.summary.chain_count == 3);
  CHECK(s.summary.max_component_size == 1);

  Dtap fork = iso;
  fork.deps = {{0, 1}, {0, 2}};
  auto f = validate_dtap(fork);
  CHECK(f.violation.ok());
  CHECK_FALSE(f.summary.is_chain_union);
  CHECK(f.summary.max_component_size == 3);
}

TEST_CASE("truncate") {
  Tap t;
  t.add(Scalar(1), Scalar(1), Scalar(0));
  t.add(Scalar(1), Scalar(1), Scalar(5));
  auto a = truncate(t, Scalar(2));
  REQUIRE(a.size() == 1);
  CHECK(a[0].arrival == Scalar(0));
  CHECK(truncate(t, Scalar::infinity()).size() == 2);
  Tap late;
  late.add(Scalar(1), Scalar(1), Scalar(3));
  CHECK(truncate(late, Scalar(1)).empty());

  // prefix property
  std::mt19937_64 rng(5);
  Tap r;
  Scalar at(0);
  for (int i = 0; i < 20; ++i) {
    at += Scalar(static_cast<long>(rng() % 4), 2);
    r.add(Scalar(1), Scalar(1), at);
  }
  for (long x = 0; x < 25; ++x) {
    auto lo = truncate(r, Scalar(x, 2));
    auto hi = truncate(r, Scalar(x + 1, 2));
    REQUIRE(lo.size() <= hi.size());
    for (std::size_t i = 0; i < lo.size(); ++i) CHECK(lo[i].arrival == hi[i].arrival);
  }
}

TEST_CASE("instance JSON is exact and round-trips") {
  const std::string text = R"({"regime": {"spdp": 3}, "tasks": [
      {"sigma": 0.1, "pi": "1/3", "arrival": 0},
      {"sigma": "inf", "pi": "2.5", "arrival": "1e-3"}], "deps": [[1, 2]]})";
  Instance inst = parse_instance(text);
  CHECK(inst.machine == MachineModel::spdp(3));
  REQUIRE(inst.dtap.tap.size() == 2);
  CHECK(inst.dtap.tap[0].sigma == Scalar(1, 10));
  CHECK(inst.dtap.tap[0].pi == Scalar(1, 3));
  CHECK(inst.dtap.tap[1].sigma.is_infinite());
  CHECK(inst.dtap.tap[1].arrival == Scalar(1, 1000));
  REQUIRE(inst.dtap.deps.size() == 1);
  CHECK(inst.dtap.deps[0] == std::make_pair(std::size_t(0), std::size_t(1)));

  const std::string out = dump(instance_to_json(inst.dtap.tap, inst.machine, &inst.dtap.deps));
  Instance back = parse_instance(out);
  CHECK(dump(instance_to_json(back.dtap.tap, back.machine, &back.dtap.deps)) == out);
}

TEST_CASE("instance JSON errors") {
  try {
    parse_instance("{\n  \"tasks\": [\n  {\"sigma\": 1,, }]}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_instance(R"({"tasks": [{"pi": 1}]})"), ParseError);
  CHECK_THROWS_AS(parse_instance(R"({"tasks": [{"sigma": 1, "pi": 1, "arrival": 2}, {"sigma": 1, "pi": 1, "arrival": 1}]})"),
                  InvalidInstance);
  CHECK_THROWS_AS(parse_instance(R"({"tasks": [{"sigma": 1, "pi": 1}], "deps": [[1, 5]]})"), ParseError);
  CHECK_THROWS_AS(parse_machine("spdp:x"), ParseError);
  CHECK(parse_machine("spdp:4").p == 4);
}
