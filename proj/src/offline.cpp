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

#include "taskforge/offline.hpp"

#include <algorithm>
#include <numeric>

#include "taskforge/mwf.hpp"

namespace taskforge {

SingleArrivalResult single_arrival_exact(const std::vector<std::pair<Scalar, Scalar>>& tasks, long p) {
  const std::size_t n = tasks.size();
  SingleArrivalResult res;
  res.completion = Scalar(0);
  res.assignment.assign(n, Mode::Parallel);
  if (n == 0) return res;
  std::vector<std::size_t> ord(n);
  std::iota(ord.begin(), ord.end(), 0);
  std::stable_sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) { return tasks[a].first < tasks[b].first; });
  // prefix of min(sigma, pi) and suffix of pi in sorted order
  std::vector<Scalar> pre(n + 1, Scalar(0)), suf(n + 1, Scalar(0));
  for (std::size_t k = 0; k < n; ++k) pre[k + 1] = pre[k] + min(tasks[ord[k]].first, tasks[ord[k]].second);
  for (std::size_t k = n; k-- > 0;) suf[k] = suf[k + 1] + tasks[ord[k]].second;
  const Scalar P(p);
  Scalar best = suf[0] / P;
  std::size_t best_k = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    const Scalar& s = tasks[ord[k - 1]].first;
    if (s.is_infinite()) break;
    Scalar c = max((pre[k - 1] + s + suf[k]) / P, s);
    if (c < best) {
      best = c;
      best_k = k;
    }
  }
  res.completion = best;
  res.k = best_k;
  if (best_k > 0) {
    for (std::size_t k = 0; k + 1 < best_k; ++k) {
      const auto& t = tasks[ord[k]];
      if (t.first < t.second) res.assignment[ord[k]] = Mode::Serial;
    }
    res.assignment[ord[best_k - 1]] = Mode::Serial;
  }
  return res;
}

SingleArrivalResult single_arrival_exact(const Tap& tap, long p) {
  std::vector<std::pair<Scalar, Scalar>> v;
  for (const Task& t : tap) {
    if (t.arrival != tap[0].arrival) throw InvalidInstance("single_arrival_exact: arrivals differ");
    v.emplace_back(t.sigma, t.pi);
  }
  return single_arrival_exact(v, p);
}

namespace {

Scalar union_measure(const Tap& tap, const std::vector<Scalar>& finish) {
  Scalar total(0);
  std::optional<Scalar> lo, hi;
  for (std::size_t i = 0; i < tap.size(); ++i) {
    const Scalar& a = tap[i].arrival;
    if (hi && a <= *hi) {
      if (finish[i] > *hi) hi = finish[i];
      continue;
    }
    if (hi) total += *hi - *lo;
    lo = a;
    hi = finish[i];
  }
  if (hi) total += *hi - *lo;
  return total;
}

}  // namespace

AssignmentRun simulate_assignment_ofms(const Tap& tap, const std::vector<Mode>& assignment) {
  AssignmentRun run;
  run.completion = Scalar(0);
  Scalar f(0);
  for (std::size_t i = 0; i < tap.size(); ++i) {
    const Task& t = tap[i];
    Scalar fin;
    if (assignment[i] == Mode::Serial) {
      fin = t.arrival + t.sigma;
    } else {
      f = max(f, t.arrival) + t.pi;
      fin = f;
    }
    run.completion = max(run.completion, fin);
    run.finish.push_back(std::move(fin));
  }
  run.awake = union_measure(tap, run.finish);
  return run;
}

AssignmentRun simulate_assignment_spdp(const Tap& tap, const std::vector<Mode>& assignment, long p) {
  const std::size_t n = tap.size();
  AssignmentRun run;
  run.finish.assign(n, Scalar::infinity());
  MwfFluid fluid(p);
  Scalar now(0);
  std::size_t next = 0;
  std::vector<std::size_t> done;
  while (next < n || !fluid.empty()) {
    while (next < n && tap[next].arrival <= now) {
      const Task& t = tap[next];
      const bool ser = assignment[next] == Mode::Serial;
      const Scalar& w = ser ? t.sigma : t.pi;
      if (w.is_zero()) {
        run.finish[next] = t.arrival;
      } else {
        fluid.add(next, w, ser);
      }
      ++next;
    }
    const Scalar arr = next < n ? tap[next].arrival : Scalar::infinity();
    if (fluid.empty()) {
      if (next < n) now = arr;
      continue;
    }
    Scalar dt = min(arr - now, fluid.next_event());
    if (dt.is_infinite()) break;  // remaining jobs never finish
    done.clear();
    fluid.advance(dt, done);
    now += dt;
    for (std::size_t d : done) run.finish[d] = now;
  }
  run.completion = Scalar(0);
  for (const auto& f : run.finish) run.completion = max(run.completion, f);
  run.awake = run.completion.is_infinite() ? Scalar::infinity() : union_measure(tap, run.finish);
  return run;
}

AssignmentRun simulate_assignment(const Tap& tap, const std::vector<Mode>& assignment, const MachineModel& m) {
  return m.is_ofms() ? simulate_assignment_ofms(tap, assignment) : simulate_assignment_spdp(tap, assignment, m.p);
}

namespace {

std::vector<Mode> mask_modes(std::size_t n, std::uint64_t mask) {
  std::vector<Mode> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = (mask >> i) & 1 ? Mode::Serial : Mode::Parallel;
  return a;
}

// Lower bound on any schedule under a fixed assignment, scaled to integers
// when every value is finite and small. Returns false when scaling fails.
bool integer_bounds(const Tap& tap, long p, std::vector<__int128>& lb) {
  const std::size_t n = tap.size();
  mpz_class den = 1;
  for (const Task& t : tap) {
    for (const Scalar* s : {&t.sigma, &t.pi, &t.arrival}) {
      if (s->is_infinite()) return false;
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), s->rational().get_den_mpz_t());
    }
  }
  const mpz_class limit = mpz_class(1) << 50;
  auto scaled = [&](const Scalar& s, __int128& out) {
    mpz_class v = s.rational().get_num() * (den / s.rational().get_den());
    if (v >= limit) return false;
    out = static_cast<__int128>(v.get_si());
    return true;
  };
  std::vector<__int128> S(n), P(n), T(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!scaled(tap[i].sigma, S[i]) || !scaled(tap[i].pi, P[i]) || !scaled(tap[i].arrival, T[i])) return false;
  }
  const std::uint64_t total = std::uint64_t(1) << n;
  lb.assign(total, 0);
  for (std::uint64_t m = 0; m < total; ++m) {
    __int128 best = 0, suffix = 0;
    for (std::size_t k = n; k-- > 0;) {
      const bool ser = (m >> k) & 1;
      __int128 own = ser ? p * (T[k] + S[k]) : p * T[k] + P[k];
      best = std::max(best, own);
      suffix += ser ? S[k] : P[k];
      if (k == 0 || T[k - 1] != T[k]) best = std::max(best, p * T[k] + suffix);
    }
    lb[m] = best;
  }
  return true;
}

std::vector<Scalar> scalar_bounds(const Tap& tap, long p) {
  const std::size_t n = tap.size();
  const std::uint64_t total = std::uint64_t(1) << n;
  const Scalar P(p);
  std::vector<Scalar> lb(total);
  for (std::uint64_t m = 0; m < total; ++m) {
    Scalar best(0), suffix(0);
    for (std::size_t k = n; k-- > 0;) {
      const bool ser = (m >> k) & 1;
      const Task& t = tap[k];
      best = max(best, t.arrival + (ser ? t.sigma : t.pi / P));
      suffix += ser ? t.sigma : t.pi;
      if (k == 0 || tap[k - 1].arrival != t.arrival) best = max(best, t.arrival + suffix / P);
    }
    lb[m] = std::move(best);
  }
  return lb;
}

}  // namespace

BruteForceResult brute_force_exact(const Tap& tap, const MachineModel& machine, std::size_t cap) {
  const std::size_t n = tap.size();
  if (n > cap || n > 30) {
    throw InstanceTooLarge("brute force: " + std::to_string(n) + " tasks exceeds cap " + std::to_string(cap));
  }
  BruteForceResult res;
  res.completion = Scalar::infinity();
  res.assignment = mask_modes(n, 0);
  const std::uint64_t total = std::uint64_t(1) << n;
  if (machine.is_ofms()) {
    for (std::uint64_t m = 0; m < total; ++m) {
      auto a = mask_modes(n, m);
      auto run = simulate_assignment_ofms(tap, a);
      ++res.simulations;
      if (run.completion < res.completion || res.simulations == 1) {
        res.completion = run.completion;
        res.assignment = std::move(a);
      }
    }
    return res;
  }
  // SPDP: simulate in order of a valid lower bound, stop once it cannot improve
  std::vector<std::uint64_t> order(total);
  std::iota(order.begin(), order.end(), 0);
  std::vector<__int128> ilb;
  std::vector<Scalar> slb;
  const bool ints = integer_bounds(tap, machine.p, ilb);
  if (ints) {
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return ilb[a] < ilb[b]; });
  } else {
    slb = scalar_bounds(tap, machine.p);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return slb[a] < slb[b]; });
  }
  mpz_class den = 1;
  if (ints) {
    for (const Task& t : tap)
      for (const Scalar* s : {&t.sigma, &t.pi, &t.arrival})
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), s->rational().get_den_mpz_t());
  }
  auto bound = [&](std::uint64_t m) -> Scalar {
    if (!ints) return slb[m];
    __int128 v = ilb[m];
    mpz_class num;
    mpz_import(num.get_mpz_t(), 1, -1, sizeof(__int128), 0, 0, &v);
    return Scalar::ratio(num, den * machine.p);
  };
  for (std::uint64_t m : order) {
    if (res.simulations > 0 && bound(m) >= res.completion) break;
    auto a = mask_modes(n, m);
    auto run = simulate_assignment_spdp(tap, a, machine.p);
    ++res.simulations;
    if (run.completion < res.completion || res.simulations == 1) {
      res.completion = run.completion;
      res.assignment = std::move(a);
    }
  }
  return res;
}

}  // namespace taskforge
