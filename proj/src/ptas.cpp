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

#include "taskforge/ptas.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>

#include "taskforge/offline.hpp"

namespace taskforge {

std::size_t default_max_states() {
  if (const char* env = std::getenv("TASKFORGE_MAX_STATES")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return 2'000'000;
}

namespace {

long ceil_long(const Scalar& x) {
  mpz_class c = x.ceil();
  if (!c.fits_slong_p()) return -1;
  return c.get_si();
}

struct SegmentBest {
  Scalar completion = Scalar::infinity();
  std::vector<Mode> assignment;
};

class SegmentSolver {
 public:
  SegmentSolver(const Tap& seg, long p, const Scalar& eps, std::size_t budget, std::size_t& states, std::size_t& probes)
      : seg_(seg), p_(p), eps_(eps), budget_(budget), states_(states), probes_(probes) {}

  SegmentBest solve();

 private:
  void consider(std::vector<Mode> a) {
    auto run = simulate_assignment_spdp(seg_, a, p_);
    if (run.completion < best_.completion) {
      best_.completion = run.completion;
      best_.assignment = std::move(a);
    }
  }
  bool probe(const Scalar& D);

  const Tap& seg_;
  long p_;
  Scalar eps_;
  std::size_t budget_;
  std::size_t& states_;
  std::size_t& probes_;
  SegmentBest best_;
};

bool SegmentSolver::probe(const Scalar& D) {
  ++probes_;
  const std::size_t n = seg_.size();
  const long m = ceil_long(Scalar(3) / eps_);  // grid fineness, eps'' = 1/m
  const long nn = static_cast<long>(n);
  const Scalar q = D / Scalar(nn * m * m);        // work quantum eps''^2 D / n
  const long unit = nn * m;                      // one boundary step in quanta
  const long horizon = nn * m * m + 3 * nn * m;  // D(1 + 3 eps'') in quanta
  const Scalar small = D / Scalar(nn * m);       // eps'' D / n
  std::vector<long> bidx(n), sig(n), par(n);
  std::vector<bool> tail(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Task& t = seg_[j];
    bidx[j] = ceil_long(t.arrival / (D / Scalar(m)));
    tail[j] = t.sigma < small;
    sig[j] = t.sigma.is_finite() ? ceil_long(t.sigma / q) : -1;
    par[j] = t.pi.is_finite() ? ceil_long(t.pi / q) : -1;
    if (bidx[j] < 0 || bidx[j] > m) return false;
  }
  const std::size_t nb = static_cast<std::size_t>(m) + 1;
  std::map<std::vector<long>, std::uint64_t> layer;
  layer.emplace(std::vector<long>(nb, 0), 0);
  for (std::size_t j = 0; j < n; ++j) {
    std::map<std::vector<long>, std::uint64_t> next;
    for (const auto& [L, mask] : layer) {
      for (int opt = 0; opt < 2; ++opt) {
        const bool serial = opt == 0;
        std::vector<long> L2 = L;
        if (tail[j]) {
          if (!serial) continue;  // tiny serial work runs at the tail; no DP load
        } else if (serial) {
          if (sig[j] < 0 || bidx[j] * unit + sig[j] > horizon) continue;
          for (std::size_t b = 0; b < nb; ++b) {
            long bb = static_cast<long>(b);
            long add = bidx[j] >= bb ? sig[j] : std::max(0L, sig[j] - (bb - bidx[j]) * unit);
            L2[b] += add;
          }
        } else {
          if (par[j] < 0) continue;
          for (std::size_t b = 0; b < nb; ++b) {
            if (bidx[j] >= static_cast<long>(b)) L2[b] += par[j];
          }
        }
        bool ok = true;
        for (std::size_t b = 0; b < nb && ok; ++b) {
          ok = L2[b] <= p_ * (horizon - static_cast<long>(b) * unit);
        }
        if (!ok) continue;
        std::uint64_t m2 = serial ? (mask | (std::uint64_t(1) << j)) : mask;
        next.emplace(std::move(L2), m2);
      }
    }
    states_ += next.size();
    if (states_ > budget_) throw InstanceTooLarge("ptas: DP state budget exceeded");
    layer = std::move(next);
    if (layer.empty()) return false;
  }
  for (const auto& [L, mask] : layer) {
    std::vector<Mode> a(n);
    for (std::size_t j = 0; j < n; ++j) a[j] = (mask >> j) & 1 ? Mode::Serial : Mode::Parallel;
    consider(std::move(a));
  }
  return true;
}

SegmentBest SegmentSolver::solve() {
  const std::size_t n = seg_.size();
  const Scalar P(p_);
  // candidate upper bounds: all parallel, all serial, per-task cheaper side
  std::vector<Mode> greedy(n), allp(n, Mode::Parallel), alls(n, Mode::Serial);
  Scalar lb(0);
  for (std::size_t j = 0; j < n; ++j) {
    const Task& t = seg_[j];
    greedy[j] = t.sigma <= t.pi / P ? Mode::Serial : Mode::Parallel;
    lb = max(lb, t.arrival + min(t.sigma, t.pi / P));
  }
  consider(allp);
  consider(alls);
  consider(greedy);
  const Scalar ub = best_.completion;
  if (ub.is_infinite() || lb.is_zero() || lb == ub) return best_;
  const Scalar ratio = Scalar(1) + eps_ / Scalar(3);
  std::vector<Scalar> grid{lb};
  while (grid.back() < ub) grid.push_back(grid.back() * ratio);
  // smallest accepted probe
  std::size_t lo = 0, hi = grid.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (probe(grid[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  probe(grid[lo]);
  return best_;
}

}  // namespace

PtasResult ptas_offline(const Tap& tap, long p, const Scalar& eps, std::size_t max_states) {
  if (eps.sign() <= 0 || eps > Scalar(1)) throw std::invalid_argument("ptas: eps must lie in (0, 1]");
  if (auto v = validate_tap(tap); !v.ok()) throw InvalidInstance("invalid TAP: " + v.str());
  const std::size_t n = tap.size();
  if (n > 60) throw InstanceTooLarge("ptas: too many tasks for the bitmask witness");
  PtasResult res;
  res.completion = Scalar(0);
  res.awake = Scalar(0);
  if (n == 0) return res;
  // gap partition over contiguous arrival segments, minimizing summed spans
  std::map<std::pair<std::size_t, std::size_t>, SegmentBest> cache;
  auto segment = [&](std::size_t a, std::size_t b) -> const SegmentBest& {
    auto key = std::make_pair(a, b);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<Task> part(tap.tasks().begin() + static_cast<long>(a), tap.tasks().begin() + static_cast<long>(b) + 1);
    for (std::size_t k = 0; k < part.size(); ++k) part[k].id = k + 1;
    Tap sub(std::move(part));
    SegmentSolver s(sub, p, eps, max_states, res.states, res.probes);
    return cache.emplace(key, s.solve()).first->second;
  };
  std::vector<std::optional<Scalar>> best(n + 1);
  std::vector<std::size_t> from(n + 1, 0);
  best[0] = Scalar(0);
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t a = 0; a < k; ++a) {
      if (!best[a]) continue;
      if (a > 0 && tap[a].arrival == tap[a - 1].arrival) continue;  // cut must fall between arrivals
      if (k < n && tap[k].arrival == tap[k - 1].arrival) continue;
      const SegmentBest& sb = segment(a, k - 1);
      if (sb.completion.is_infinite()) continue;
      if (k < n && sb.completion > tap[k].arrival) continue;
      Scalar v = *best[a] + (sb.completion - tap[a].arrival);
      if (!best[k] || v < *best[k]) {
        best[k] = v;
        from[k] = a;
      }
    }
  }
  res.assignment.assign(n, Mode::Parallel);
  if (!best[n]) {
    res.completion = Scalar::infinity();
    res.awake = Scalar::infinity();
    return res;
  }
  for (std::size_t k = n; k > 0; k = from[k]) {
    const SegmentBest& sb = cache.at({from[k], k - 1});
    for (std::size_t j = from[k]; j < k; ++j) res.assignment[j] = sb.assignment[j - from[k]];
    ++res.segments;
  }
  auto run = simulate_assignment_spdp(tap, res.assignment, p);
  res.completion = run.completion;
  res.awake = run.awake;
  return res;
}

}  // namespace taskforge
