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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "taskforge/adversary.hpp"
#include "taskforge/dtap.hpp"
#include "taskforge/engine.hpp"
#include "taskforge/offline.hpp"
#include "taskforge/policies.hpp"
#include "taskforge/ptas.hpp"
#include "taskforge/random_tap.hpp"
#include "taskforge/threshold.hpp"

using namespace taskforge;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;  // deterministic text, compared across repeats

  void fail(const std::string& why) {
    if (pass) detail << "first failure: " << why << "; ";
    pass = false;
  }
};

Scalar run_ratio(Policy& pol, const Tap& tap, const MachineModel& m, const Scalar& opt,
                 const OracleConfig& oracle = {}) {
  SimOptions so;
  so.oracle = oracle;
  auto r = simulate(tap, pol, m, so);
  return ratio_of(r.trace.metrics.completion_time, opt);
}

std::vector<Tap> random_ofms_suite() {
  std::vector<Tap> v;
  for (std::uint64_t i = 0; i < 1000; ++i) v.push_back(random_tap(1 + i % 10, 10000 + i));
  return v;
}

std::vector<Tap> full_suite() {
  auto v = random_ofms_suite();
  for (auto& nt : adversarial_suite()) v.push_back(nt.tap);
  return v;
}

std::string dec(const Scalar& s) { return s.decimal(12); }

void c1(Outcome& o) {
  // every multiset of at most 8 tasks over the 16 work pairs in {1..4}^2
  std::vector<std::pair<Scalar, Scalar>> kinds;
  for (long s = 1; s <= 4; ++s)
    for (long p = 1; p <= 4; ++p) kinds.emplace_back(Scalar(s), Scalar(p));
  std::size_t checked = 0;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (!pick.empty()) {
      std::vector<std::pair<Scalar, Scalar>> tasks;
      Tap tap;
      for (std::size_t k : pick) {
        tasks.push_back(kinds[k]);
        tap.add(kinds[k].first, kinds[k].second, Scalar(0));
      }
      for (long p = 1; p <= 4; ++p) {
        const Scalar a = single_arrival_exact(tasks, p).completion;
        const Scalar b = brute_force_exact(tap, MachineModel::spdp(p)).completion;
        ++checked;
        if (a != b) o.fail("n=" + std::to_string(tasks.size()) + " p=" + std::to_string(p) + " " + dec(a) + " vs " + dec(b));
      }
    }
    if (pick.size() == 8) return;
    for (std::size_t k = from; k < kinds.size(); ++k) {
      pick.push_back(k);
      rec(k);
      pick.pop_back();
    }
  };
  rec(0);
  o.detail << checked << " (instance, p) pairs compared";
}

void c2(Outcome& o) {
  std::size_t n = 0;
  for (const Tap& tap : random_ofms_suite()) {
    const Scalar a = opt_completion_ofms(tap).completion;
    const Scalar b = brute_force_exact(tap, MachineModel::ofms()).completion;
    if (a != b) o.fail(dec(a) + " vs " + dec(b));
    ++n;
  }
  o.detail << n << " TAPs";
}

void c3(Outcome& o) {
  auto rep = empirical_ratio(policy_ins, full_suite(), MachineModel::ofms());
  if (rep.max_ratio > Scalar(2)) o.fail("max ratio " + dec(rep.max_ratio));
  auto tight = empirical_ratio(policy_ins, {gen_geometric(10, pow10_neg(6))}, MachineModel::ofms());
  if (tight.max_ratio < Scalar::parse("1.99")) o.fail("geometric ratio " + dec(tight.max_ratio));
  o.detail << "max " << dec(rep.max_ratio) << ", geometric(10) " << dec(tight.max_ratio);
}

void c4(Outcome& o) {
  Scalar worst(0);
  for (std::uint64_t i = 0; i < 500; ++i) {
    const long p = 2 + static_cast<long>(i % 2);
    const auto m = MachineModel::spdp(p);
    Tap tap = random_spdp_tap(1 + i % 10, p, 20000 + i);
    const Scalar opt = brute_force_exact(tap, m).completion;
    auto pol = policy_ins_spdp();
    const Scalar r = run_ratio(*pol, tap, m, opt, OracleConfig::brute());
    worst = max(worst, r);
    if (r > Scalar(2)) o.fail("seed " + std::to_string(20000 + i) + " ratio " + dec(r));
  }
  o.detail << "max " << dec(worst);
}

void c5(Outcome& o) {
  const Scalar xi_hi = ThresholdConstant::xi().hi();
  auto rep = empirical_ratio([] { return policy_eve(); }, full_suite(), MachineModel::ofms());
  if (rep.max_ratio > xi_hi) o.fail("suite max " + dec(rep.max_ratio));

  const Scalar phi = ThresholdConstant::phi().approx();
  Tap single;
  single.add(phi, Scalar(1), Scalar(0));
  auto pol = policy_eve();
  const Scalar r = run_ratio(*pol, single, MachineModel::ofms(), opt_completion_ofms(single).completion);
  const Scalar gap = r > phi ? r - phi : phi - r;
  if (gap > pow10_neg(9)) o.fail("phi TAP ratio " + dec(r));

  Tap xi = gen_xi_nonproc(Scalar(1, 100));
  auto pe = policy_eve();
  const Scalar rx = run_ratio(*pe, xi, MachineModel::ofms(), opt_completion_ofms(xi).completion);
  if (rx > xi_hi) o.fail("xi family ratio " + dec(rx));
  o.detail << "suite max " << dec(rep.max_ratio) << ", phi TAP " << dec(r) << ", xi family " << dec(rx);
}

void c6(Outcome& o) {
  auto rep = empirical_ratio(policy_nev, full_suite(), MachineModel::ofms());
  if (rep.max_ratio > Scalar(3, 2)) o.fail("suite max " + dec(rep.max_ratio));
  Tap t = gen_nocancel(Scalar(1, 100));
  auto pol = policy_nev();
  const Scalar r = run_ratio(*pol, t, MachineModel::ofms(), opt_completion_ofms(t).completion);
  if (r < Scalar::parse("1.45") || r > Scalar(3, 2)) o.fail("no-cancel ratio " + dec(r));
  o.detail << "suite max " << dec(rep.max_ratio) << ", no-cancel " << dec(r);
}

void c7(Outcome& o) {
  std::mt19937_64 rng(77);
  Scalar worst_til(0), worst_bat(0);
  for (int i = 0; i < 500; ++i) {
    const long p = 1 + static_cast<long>(rng() % 3);
    const std::size_t n = 1 + rng() % 8;
    Tap tap;
    for (std::size_t k = 0; k < n; ++k) {
      Scalar sigma(1 + static_cast<long>(rng() % 32), 4);
      // parallel duration pi / p at either end of [sigma / p, sigma] or in between
      const long pick = static_cast<long>(rng() % 4);
      const Scalar pi = pick == 0   ? sigma
                        : pick == 1 ? sigma * Scalar(p)
                                    : sigma * Scalar(8 + (p - 1) * static_cast<long>(rng() % 9), 8);
      tap.add(sigma, pi, Scalar(0));
    }
    const auto m = MachineModel::spdp(p);
    auto pol = policy_pwo_til();
    const Scalar r = run_ratio(*pol, tap, m, brute_force_exact(tap, m).completion);
    worst_til = max(worst_til, r);
    if (r > Scalar(2)) o.fail("pwo-til ratio " + dec(r));
  }
  for (std::uint64_t i = 0; i < 500; ++i) {
    const long p = 1 + static_cast<long>(i % 3);
    const auto m = MachineModel::spdp(p);
    Tap tap = random_spdp_tap(1 + i % 8, p, 30000 + i);
    auto pol = policy_pwo_batched();
    const Scalar r = run_ratio(*pol, tap, m, brute_force_exact(tap, m).completion);
    worst_bat = max(worst_bat, r);
    if (r > Scalar(4)) o.fail("pwo-batched ratio " + dec(r));
  }
  o.detail << "pwo-til max " << dec(worst_til) << ", pwo-batched max " << dec(worst_bat);
}

void c8(Outcome& o) {
  for (long p : {4L, 16L, 64L}) {
    const auto m = MachineModel::spdp(p);
    const Scalar bound = Scalar(10) * Scalar(ceil_sqrt(p));
    Scalar worst(0);
    for (std::uint64_t i = 0; i < 200; ++i) {
      Tap tap = random_spdp_tap(1 + i % 8, p, 40000 + 1000 * static_cast<std::uint64_t>(p) + i);
      auto pol = policy_sqrtp_doa(p);
      const Scalar r = run_ratio(*pol, tap, m, brute_force_exact(tap, m).completion, OracleConfig::brute());
      worst = max(worst, r);
      if (r > bound) o.fail("p=" + std::to_string(p) + " ratio " + dec(r));
    }
    o.detail << "p=" << p << " max " << dec(worst) << "; ";
  }
  for (long p : {4L, 16L}) {
    auto mm = sqrtp_minmax(gen_sqrtp_lb(p));
    if (mm.value * Scalar(2) < Scalar(ceil_sqrt(p))) o.fail("min-max p=" + std::to_string(p) + " " + dec(mm.value));
    o.detail << "min-max p=" << p << " " << dec(mm.value) << "; ";
  }
}

void c9(Outcome& o) {
  Scalar worst(0);
  for (std::uint64_t i = 0; i < 200; ++i) {
    const long p = 1 + static_cast<long>(i % 3);
    Tap tap = random_spdp_tap(1 + i % 8, p, 50000 + i);
    const Scalar opt = brute_force_exact(tap, MachineModel::spdp(p)).completion;
    for (const Scalar& eps : {Scalar(1, 2), Scalar(1, 4)}) {
      const Scalar v = ptas_offline(tap, p, eps).completion;
      if (v < opt || v > (Scalar(1) + eps) * opt) o.fail("seed " + std::to_string(50000 + i) + " " + dec(v) + " vs " + dec(opt));
      if (opt > Scalar(0)) worst = max(worst, v / opt);
    }
  }
  o.detail << "max ratio " << dec(worst);
}

void c10(Outcome& o) {
  Scalar worst_c(0), worst_k(0);
  for (std::uint64_t i = 0; i < 200; ++i) {
    const std::size_t n = 1 + i % 7;
    Dtap comp = random_component_dtap(n, 1 + i % 3, 60000 + i);
    Dtap chains = random_chain_dtap(n, 1 + i % 2, 70000 + i);
    const Scalar opt_c = brute_force_dtap(comp).makespan;
    const Scalar opt_k = brute_force_dtap(chains).makespan;
    const std::size_t L = validate_dtap(comp).summary.max_component_size;
    for (const Scalar& eps : {Scalar(1, 2), Scalar(1, 4)}) {
      auto a = ptas_bounded_components(comp, L, eps);
      if (a.makespan < opt_c || a.makespan > a.factor * opt_c) o.fail("components seed " + std::to_string(60000 + i));
      if (opt_c > Scalar(0)) worst_c = max(worst_c, a.makespan / opt_c);
      auto b = dp_k_chains(chains, eps);
      if (b.makespan < opt_k || b.makespan > b.factor * opt_k) o.fail("chains seed " + std::to_string(70000 + i));
      if (opt_k > Scalar(0)) worst_k = max(worst_k, b.makespan / opt_k);
    }
  }
  std::mt19937_64 rng(99);
  std::size_t agree = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    const long N = 1 + static_cast<long>(rng() % 6);
    Dtap d;
    for (std::size_t i = 0; i < n; ++i) d.tap.add(Scalar(1), Scalar(1), Scalar(0));
    PromiseStrategy s;
    s.horizon = N;
    s.ticks_per_unit = 1 + static_cast<long>(rng() % 2);
    for (std::size_t i = 0; i < n; ++i) {
      const long a = static_cast<long>(rng() % static_cast<std::uint64_t>(N + 1));
      s.a.push_back(a);
      s.b.push_back(a + static_cast<long>(rng() % static_cast<std::uint64_t>(N - a + 1)));
      s.choice.push_back(rng() % 3 == 0 ? Mode::Serial : Mode::Parallel);
      s.work.push_back(static_cast<long>(rng() % 4));
    }
    if (edf_feasible(s, d).feasible == exhaustive_feasible(s, d)) ++agree;
    else o.fail("edf disagrees on trial " + std::to_string(trial));
  }
  o.detail << "components max " << dec(worst_c) << ", chains max " << dec(worst_k) << ", edf agreement " << agree
           << "/500";
}

void c11(Outcome& o) {
  auto big = enumerate_doa_geometric(25);
  if (big.min_expected_ratio < Scalar::parse("1.637"))
    o.fail("contradiction: N=25 minimum is below 1.637");
  for (int N = 1; N <= 12; ++N) {
    auto a = enumerate_doa_geometric(N);
    auto b = enumerate_doa_geometric_plain(N);
    if (a.min_expected_ratio != b.min_expected_ratio || a.decisions != b.decisions)
      o.fail("DP differs from plain at N=" + std::to_string(N));
  }
  o.detail << "N=25 minimum " << dec(big.min_expected_ratio) << " (" << big.decisions << ")";
}

#ifdef TASKFORGE_CLI
std::string capture(const std::string& args) {
  const std::string cmd = std::string(TASKFORGE_CLI) + " " + args + " 2>&1";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return "<popen failed>";
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  out += "\nexit=" + std::to_string(pclose(pipe));
  return out;
}
#endif

using Criterion = void (*)(Outcome&);

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Criterion>> criteria = {
      {"offline single-arrival equivalence", c1}, {"OFMS oracle", c2},
      {"ins upper bound and tightness", c3},      {"ins in SPDP", c4},
      {"eve", c5},                                {"nev", c6},
      {"PWO schedulers", c7},                     {"sqrt p scheduler", c8},
      {"offline PTAS", c9},                       {"DTAP schemes and EDF", c10},
      {"randomized lower bound", c11},
  };
  bool all = true;
  std::vector<std::string> details;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all = all && o.pass;
    details.push_back(o.detail.str());
    std::printf("%s criterion %zu (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.str().c_str(), secs);
    std::fflush(stdout);
  }

  // determinism: repeat the quick criteria and the CLI runs, compare bytes
  Outcome det;
  for (std::size_t i : {1UL, 2UL, 4UL, 5UL, 8UL}) {
    Outcome again;
    criteria[i].second(again);
    if (again.detail.str() != details[i]) det.fail("criterion " + std::to_string(i + 1) + " output changed");
  }
#ifdef TASKFORGE_CLI
  for (const char* args : {"sweep --suite random --count 20 --n 6 --seed 5", "sweep --suite adversarial",
                           "gen random --n 9 --seed 11", "gen chain-dtap --n 6 --k 2 --seed 2",
                           "verify-lb doa-geometric --N 10"}) {
    if (capture(args) != capture(args)) det.fail(std::string("cli output changed: ") + args);
  }
  det.detail << "5 library criteria and 5 CLI runs repeated";
#else
  det.detail << "5 library criteria repeated";
#endif
  all = all && det.pass;
  std::printf("%s criterion 12 (determinism): %s\n", det.pass ? "PASS" : "FAIL", det.detail.str().c_str());
  return all ? 0 : 1;
}
