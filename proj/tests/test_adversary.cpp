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

#include "taskforge/adversary.hpp"
#include "taskforge/engine.hpp"
#include "taskforge/offline.hpp"
#include "taskforge/policies.hpp"
#include "taskforge/registry.hpp"
#include "taskforge/threshold.hpp"

using namespace taskforge;

namespace {

Scalar ofms_ratio(Policy& pol, const Tap& tap) {
  auto r = simulate(tap, pol, MachineModel::ofms());
  return ratio_of(r.trace.metrics.completion_time, opt_completion_ofms(r.tap).completion);
}

Scalar adaptive_ratio(Policy& pol) {
  PhiAdversary adv;
  auto r = simulate(adv, pol, MachineModel::ofms());
  return ratio_of(r.trace.metrics.completion_time, opt_completion_ofms(r.tap).completion);
}

bool near(const Scalar& a, const Scalar& b, const Scalar& tol) { return (a < b ? b - a : a - b) <= tol; }

}  // namespace

TEST_CASE("geometric family") {
  const Scalar d = pow10_neg(6);
  Tap t = gen_geometric(3, d);
  REQUIRE(t.size() == 3);
  CHECK(t[0].sigma == Scalar(2));
  CHECK(t[0].pi == Scalar(1));
  CHECK(t[1].arrival == d);
  CHECK(t[2].sigma == Scalar(8));
  CHECK(t[2].pi == Scalar(4));
  CHECK(t[2].arrival == Scalar(2) * d);
  const Scalar opt = opt_completion_ofms(t).completion;
  CHECK(opt >= Scalar(4));
  CHECK(opt <= Scalar(4) + Scalar(3) * d);
  CHECK(validate_tap(t).ok());

  Tap single = gen_geometric(1, d);
  for (auto factory : {policy_ins, policy_nev, policy_always_fast, policy_always_slow}) {
    auto pol = factory();
    CHECK(ofms_ratio(*pol, single) <= Scalar(2));
  }
}

TEST_CASE("phi adversary") {
  const Scalar phi = PhiAdversary().phi();
  const Scalar tol = pow10_neg(9);
  auto fast = policy_always_fast();
  CHECK(near(adaptive_ratio(*fast), phi, tol));

  auto eve = policy_eve();
  PhiAdversary adv;
  auto r = simulate(adv, *eve, MachineModel::ofms());
  CHECK_FALSE(adv.injected_at().has_value());
  CHECK(r.tap.size() == 1);
  CHECK(ratio_of(r.trace.metrics.completion_time, opt_completion_ofms(r.tap).completion) == phi);

  auto idle = policy_idle();
  CHECK(adaptive_ratio(*idle).is_infinite());

  // eventually committing panel cannot beat phi
  for (const char* name : {"eve", "always-fast", "always-slow", "threshold:lambda=3/2", "threshold:lambda=2"}) {
    auto pol = make_policy(name, MachineModel::ofms());
    CHECK(adaptive_ratio(*pol) >= phi - tol);
  }
}

TEST_CASE("cancellation pair") {
  auto pr = gen_canclb(Scalar(1, 10000));
  const Scalar psi = ThresholdConstant::psi().approx();
  CHECK(opt_completion_ofms(pr.short_).completion == Scalar(2) * psi);
  CHECK(opt_completion_ofms(pr.full).completion == Scalar(1));
  auto a = policy_nev();
  auto b = policy_nev();
  const Scalar worst = max(ofms_ratio(*a, pr.full), ofms_ratio(*b, pr.short_));
  CHECK(worst >= Scalar::parse("1.36"));
  CHECK(validate_tap(pr.full).ok());
  CHECK(validate_tap(pr.short_).ok());
}

TEST_CASE("xi non-processing family") {
  const Scalar eps(1, 100);
  Tap t = gen_xi_nonproc(eps);
  CHECK(validate_tap(t).ok());
  const Scalar tol = pow10_neg(9);
  CHECK(opt_completion_ofms(t).completion <= Scalar(1) + tol);
  auto fast = policy_always_fast();
  auto r = simulate(t, *fast, MachineModel::ofms());
  const Scalar xi = ThresholdConstant::xi().lo();
  CHECK(r.trace.metrics.completion_time >= xi - Scalar(2) * eps * eps - tol);
  // tiny tasks on the e^2 grid inside [xi + 1/xi - 2, 1 - e^2]
  const Scalar e2 = eps * eps;
  const Scalar x = ThresholdConstant::xi().approx();
  const Scalar lo = x + Scalar(1) / x - Scalar(2);
  const long expected = ((Scalar(1) - e2) / e2).floor().get_si() - (lo / e2).ceil().get_si() + 1;
  CHECK(static_cast<long>(t.size()) == expected + 2);
}

TEST_CASE("no-cancel family") {
  const Scalar eps(1, 100);
  Tap t = gen_nocancel(eps);
  CHECK(validate_tap(t).ok());
  const Scalar opt = opt_completion_ofms(t).completion;
  CHECK(opt >= Scalar(2));
  CHECK(opt <= Scalar(2) + eps);
  auto nev = policy_nev();
  const Scalar r = ofms_ratio(*nev, t);
  CHECK(r >= Scalar::parse("1.45"));
  CHECK(r <= Scalar(3, 2));

  const Scalar coarse(1, 10);
  CHECK(gen_nocancel(coarse).size() == 1 + 199);
  CHECK(gen_nocancel(coarse, Scalar(1) - coarse * coarse).size() == 1 + 99);
}

TEST_CASE("sqrt p family") {
  auto fam = gen_sqrtp_lb(16);
  CHECK(fam.scalable.size() == 4);
  CHECK(fam.rigid.size() == 4);
  CHECK(fam.scalable[0].pi == Scalar(1));
  CHECK(fam.rigid[0].pi == Scalar(16));
  for (long p : {4L, 16L}) {
    auto mm = sqrtp_minmax(gen_sqrtp_lb(p));
    CHECK(mm.vectors == (std::size_t(1) << ceil_sqrt(p)));
    CHECK(mm.value * Scalar(2) >= Scalar(ceil_sqrt(p)));
  }
}

TEST_CASE("empirical ratio") {
  auto rep = empirical_ratio(policy_ins, {gen_geometric(10, pow10_neg(6))}, MachineModel::ofms());
  CHECK(rep.max_ratio > Scalar::parse("1.99"));
  CHECK(rep.max_ratio <= Scalar(2));
  CHECK_THROWS_AS(empirical_ratio(policy_ins, {}, MachineModel::ofms()), EmptySuite);

  std::vector<Tap> suite;
  for (auto& nt : adversarial_suite()) suite.push_back(nt.tap);
  for (const auto& tap : suite) {
    auto replay = policy_offline_replay(tap, MachineModel::ofms());
    CHECK(ofms_ratio(*replay, tap) == Scalar(1));
  }

  // instantly committing panel on the geometric family
  Tap g = gen_geometric(10, pow10_neg(6));
  for (const char* name : {"ins", "always-fast", "always-slow", "threshold:lambda=3/2", "threshold:lambda=3"}) {
    auto pol = make_policy(name, MachineModel::ofms());
    CHECK(ofms_ratio(*pol, g) >= Scalar::parse("1.99"));
  }
}

TEST_CASE("randomized lower-bound enumeration") {
  auto one = enumerate_doa_geometric(1);
  CHECK(one.min_expected_ratio == Scalar(1));
  CHECK(one.decisions == "P");

  Scalar best = Scalar::infinity();
  for (const char* d : {"PP", "PS", "SP", "SS"}) best = min(best, doa_expected_ratio(d));
  CHECK(enumerate_doa_geometric(2).min_expected_ratio == best);

  for (int N = 1; N <= 10; ++N) {
    auto dp = enumerate_doa_geometric(N);
    auto plain = enumerate_doa_geometric_plain(N);
    CHECK(dp.min_expected_ratio == plain.min_expected_ratio);
    CHECK(dp.decisions == plain.decisions);
    CHECK(doa_expected_ratio(dp.decisions) == dp.min_expected_ratio);
  }
  CHECK_THROWS_AS(enumerate_doa_geometric(26), std::invalid_argument);
}

TEST_CASE("every bundled instance validates") {
  for (auto& nt : adversarial_suite()) CHECK_MESSAGE(validate_tap(nt.tap).ok(), nt.name);
}
