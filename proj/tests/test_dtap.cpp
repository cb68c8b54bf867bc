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

#include "taskforge/dtap.hpp"
#include "taskforge/random_tap.hpp"

using namespace taskforge;

namespace {

Dtap tasks(std::initializer_list<std::pair<Scalar, Scalar>> xs,
           std::vector<std::pair<std::size_t, std::size_t>> deps = {}) {
  Dtap d;
  for (auto& [s, p] : xs) d.tap.add(s, p, Scalar(0));
  d.deps = std::move(deps);
  return d;
}

PromiseStrategy strategy(long N, std::vector<long> a, std::vector<long> b, std::vector<Mode> c, std::vector<long> w) {
  PromiseStrategy s;
  s.horizon = N;
  s.ticks_per_unit = 1;
  s.a = std::move(a);
  s.b = std::move(b);
  s.choice = std::move(c);
  s.work = std::move(w);
  return s;
}

}  // namespace

TEST_CASE("edf feasibility examples") {
  Dtap two = tasks({{Scalar(5), Scalar(1)}, {Scalar(5), Scalar(1)}});
  auto bad = edf_feasible(strategy(2, {0, 0}, {1, 1}, {Mode::Parallel, Mode::Parallel}, {1, 1}), two);
  CHECK_FALSE(bad.feasible);
  CHECK_FALSE(bad.capacity_ok);
  auto good = edf_feasible(strategy(2, {0, 1}, {1, 2}, {Mode::Parallel, Mode::Parallel}, {1, 1}), two);
  CHECK(good.feasible);
  CHECK(good.capacity_ok);

  Dtap chain = tasks({{Scalar(1), Scalar(5)}, {Scalar(5), Scalar(1)}}, {{0, 1}});
  auto s = strategy(2, {0, 1}, {1, 2}, {Mode::Serial, Mode::Parallel}, {1, 1});
  auto v = edf_feasible(s, chain);
  CHECK(v.feasible);
  CHECK(v.capacity_ok);
  CHECK(exhaustive_feasible(s, chain));

  auto broken = strategy(2, {0, 0}, {1, 2}, {Mode::Serial, Mode::Parallel}, {1, 1});
  CHECK_THROWS_AS(edf_feasible(broken, chain), InvalidStrategy);
}

TEST_CASE("edf verdict equals the capacity condition and exhaustive search") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    const long N = 1 + static_cast<long>(rng() % 8);
    Dtap d;
    for (std::size_t i = 0; i < n; ++i) d.tap.add(Scalar(1), Scalar(1), Scalar(0));
    PromiseStrategy s;
    s.horizon = N;
    s.ticks_per_unit = 1 + static_cast<long>(rng() % 2);
    for (std::size_t i = 0; i < n; ++i) {
      long a = static_cast<long>(rng() % static_cast<std::uint64_t>(N + 1));
      long b = a + static_cast<long>(rng() % static_cast<std::uint64_t>(N - a + 1));
      s.a.push_back(a);
      s.b.push_back(b);
      s.choice.push_back(rng() % 3 == 0 ? Mode::Serial : Mode::Parallel);
      s.work.push_back(static_cast<long>(rng() % 4));
    }
    auto v = edf_feasible(s, d);
    CHECK(v.feasible == v.capacity_ok);
    if (n <= 4) CHECK(v.feasible == exhaustive_feasible(s, d));
  }
}

TEST_CASE("brute force examples") {
  CHECK(brute_force_dtap(tasks({{Scalar(2), Scalar(1)}})).makespan == Scalar(1));
  CHECK(brute_force_dtap(tasks({{Scalar(1), Scalar(1, 2)}, {Scalar(1), Scalar(1, 2)}}, {{0, 1}})).makespan ==
        Scalar(1));
  auto both = brute_force_dtap(tasks({{Scalar(1), Scalar(1)}, {Scalar(1), Scalar(1)}}));
  CHECK(both.makespan == Scalar(1));
  CHECK(simulate_dtap(tasks({{Scalar(1), Scalar(1)}, {Scalar(1), Scalar(1)}}), both.choice, both.priority) ==
        Scalar(1));
  CHECK(brute_force_dtap(Dtap{}).makespan == Scalar(0));
  CHECK_THROWS_AS(brute_force_dtap(random_chain_dtap(8, 2, 1)), InstanceTooLarge);
}

TEST_CASE("brute force agrees with a half-unit time-indexed search") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    Dtap d;
    const std::size_t n = 1 + rng() % 4;
    for (std::size_t i = 0; i < n; ++i) {
      Scalar s(1 + static_cast<long>(rng() % 6), 2), p(1 + static_cast<long>(rng() % 6), 2);
      if (rng() % 6 == 0) s = Scalar::infinity();
      d.tap.add(s, p, Scalar(0));
    }
    for (std::size_t v = 1; v < n; ++v)
      if (rng() % 2) d.deps.emplace_back(rng() % v, v);
    CHECK(brute_force_dtap(d).makespan == grid_search_dtap(d, Scalar(1, 2), 4));
  }
}

TEST_CASE("bounded-component scheme") {
  Dtap single = tasks({{Scalar(2), Scalar(1)}});
  auto r = ptas_bounded_components(single, 1, Scalar(1, 4));
  CHECK(r.makespan >= Scalar(1));
  CHECK(r.makespan <= r.factor);
  REQUIRE(r.strategy.has_value());
  CHECK(edf_feasible(*r.strategy, single).feasible);

  Dtap three = tasks({{Scalar(1), Scalar(1)}, {Scalar(1), Scalar(1)}, {Scalar(1), Scalar(1)}});
  auto t = ptas_bounded_components(three, 1, Scalar(1, 4));
  CHECK(t.makespan >= Scalar(1));
  CHECK(t.makespan <= t.factor);

  CHECK(ptas_bounded_components(Dtap{}, 1, Scalar(1, 4)).makespan == Scalar(0));
  CHECK_THROWS_AS(ptas_bounded_components(random_chain_dtap(4, 1, 3), 2, Scalar(1, 4)), InvalidInstance);
}

TEST_CASE("k-chain dynamic program") {
  Dtap chain = tasks({{Scalar(1), Scalar(1, 2)}, {Scalar(1), Scalar(1, 2)}}, {{0, 1}});
  auto r = dp_k_chains(chain, Scalar(1, 4));
  CHECK(r.makespan >= Scalar(1));
  CHECK(r.makespan <= r.factor);

  Dtap two = tasks({{Scalar(1), Scalar(1)}, {Scalar(1), Scalar(1)}});
  auto t = dp_k_chains(two, Scalar(1, 4));
  CHECK(t.makespan >= Scalar(1));
  CHECK(t.makespan <= t.factor);

  Dtap fork = tasks({{Scalar(1), Scalar(1)}, {Scalar(1), Scalar(1)}, {Scalar(1), Scalar(1)}}, {{0, 1}, {0, 2}});
  CHECK_THROWS_AS(dp_k_chains(fork, Scalar(1, 4)), InvalidInstance);
}

TEST_CASE("schemes bracket the optimum on random chains") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Dtap d = random_chain_dtap(2 + seed % 4, 1 + seed % 2, seed);
    const Scalar opt = brute_force_dtap(d).makespan;
    const std::size_t L = validate_dtap(d).summary.max_component_size;
    for (const Scalar& eps : {Scalar(1, 2), Scalar(1, 4)}) {
      auto a = ptas_bounded_components(d, L, eps);
      CHECK(a.makespan >= opt);
      CHECK(a.makespan <= a.factor * opt);
      auto b = dp_k_chains(d, eps);
      CHECK(b.makespan >= opt);
      CHECK(b.makespan <= b.factor * opt);
    }
  }
}

TEST_CASE("x3c helpers") {
  X3CInstance yes{3, {{1, 2, 3}}};
  CHECK(x3c_brute(yes));
  X3CInstance bad{3, {{1, 2, 2}}};
  CHECK_THROWS_AS(validate_x3c(bad), InvalidInstance);
  X3CInstance no{6, {{1, 2, 3}, {1, 4, 5}}};
  CHECK_FALSE(x3c_brute(no));
  X3CInstance cover{6, {{1, 4, 5}, {2, 3, 6}, {1, 2, 3}}};
  CHECK(x3c_brute(cover));
}

TEST_CASE("x3c gadget") {
  X3CInstance x{6, {{1, 2, 4}}};
  GadgetParams gp;
  gp.scale = Scalar(1);
  Dtap d = gen_x3c_gadget(x, gp);
  REQUIRE(d.tap.size() == 6);
  CHECK(d.tap[0].pi == Scalar(1));
  CHECK(d.tap[0].sigma == Scalar(1, 2));  // m / 2 with m = 1
  CHECK(d.tap[1].sigma == Scalar(1));
  CHECK(d.tap[1].pi.is_infinite());
  CHECK(d.tap[2].sigma.is_infinite());
  CHECK(d.tap[2].pi == Scalar(1));
  CHECK(d.tap[3].sigma == Scalar(0));
  CHECK(d.tap[4].pi == Scalar(1));
  CHECK(d.tap[5].sigma == Scalar(1));
  auto rep = validate_dtap(d);
  CHECK(rep.violation.ok());
  CHECK(rep.summary.is_chain_union);

  X3CInstance many{9, {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}, {1, 5, 9}}};
  Dtap g = gen_x3c_gadget(many);
  auto s = validate_dtap(g);
  CHECK(s.summary.is_chain_union);
  CHECK(s.summary.chain_count == 4);
  CHECK(s.summary.max_component_size == 6);
  for (const auto& comp : dtap_components(g)) CHECK(comp.size() == 6);
  CHECK(g.tap[1].sigma == Scalar(1, 360));  // default scale 1 / (10 n m)
}
