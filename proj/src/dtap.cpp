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

#include "taskforge/dtap.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace taskforge {

namespace {

std::vector<std::vector<std::size_t>> predecessors(const Dtap& d) {
  std::vector<std::vector<std::size_t>> pred(d.tap.size());
  for (auto [u, v] : d.deps) pred[v].push_back(u);
  return pred;
}

void check_strategy(const PromiseStrategy& s, const Dtap& d) {
  const std::size_t n = d.tap.size();
  if (s.a.size() != n || s.b.size() != n || s.choice.size() != n || s.work.size() != n) {
    throw InvalidStrategy("strategy size does not match the DTAP");
  }
  if (s.ticks_per_unit < 1 || s.horizon < 0) throw InvalidStrategy("bad horizon or tick resolution");
  for (std::size_t i = 0; i < n; ++i) {
    if (s.a[i] < 0 || s.a[i] > s.b[i] || s.b[i] > s.horizon) {
      throw InvalidStrategy("promise interval out of range for task " + std::to_string(i + 1));
    }
    if (s.work[i] < 0) throw InvalidStrategy("negative work for task " + std::to_string(i + 1));
  }
  for (auto [u, v] : d.deps) {
    if (s.a[v] < s.b[u]) {
      throw InvalidStrategy("task " + std::to_string(v + 1) + " starts before task " + std::to_string(u + 1) +
                            " promised to finish");
    }
  }
}

}  // namespace

EdfVerdict edf_feasible(const PromiseStrategy& s, const Dtap& dtap) {
  check_strategy(s, dtap);
  const std::size_t n = dtap.tap.size();
  const long r = s.ticks_per_unit;
  EdfVerdict v;
  v.feasible = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (s.choice[i] == Mode::Serial && (s.b[i] - s.a[i]) * r < s.work[i]) {
      v.feasible = false;
      v.witness = "serial task " + std::to_string(i + 1) + " does not fit its interval";
      break;
    }
  }
  std::vector<long> rem(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    if (s.choice[i] == Mode::Parallel) rem[i] = s.work[i];
  for (long tick = 0; tick <= s.horizon * r && v.feasible; ++tick) {
    for (std::size_t i = 0; i < n; ++i) {
      if (rem[i] > 0 && s.b[i] * r <= tick) {
        v.feasible = false;
        v.witness = "parallel task " + std::to_string(i + 1) + " misses its promise";
        break;
      }
    }
    if (!v.feasible || tick == s.horizon * r) break;
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < n; ++i) {
      if (rem[i] > 0 && s.a[i] * r <= tick && (!pick || s.b[i] < s.b[*pick])) pick = i;
    }
    if (pick) --rem[*pick];
  }
  // interval capacity over every [x, y]
  v.capacity_ok = true;
  std::string cap_witness;
  for (long x = 0; x <= s.horizon && v.capacity_ok; ++x) {
    for (long y = x; y <= s.horizon; ++y) {
      long load = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (s.choice[i] == Mode::Parallel && s.a[i] >= x && s.b[i] <= y) load += s.work[i];
      if (load > (y - x) * r) {
        v.capacity_ok = false;
        cap_witness = "interval [" + std::to_string(x) + "," + std::to_string(y) + "] over capacity";
        break;
      }
    }
  }
  // serial fit is part of both verdicts
  for (std::size_t i = 0; i < n; ++i)
    if (s.choice[i] == Mode::Serial && (s.b[i] - s.a[i]) * r < s.work[i]) v.capacity_ok = false;
  if (v.witness.empty()) v.witness = cap_witness;
  return v;
}

bool exhaustive_feasible(const PromiseStrategy& s, const Dtap& dtap) {
  check_strategy(s, dtap);
  const std::size_t n = dtap.tap.size();
  const long r = s.ticks_per_unit;
  for (std::size_t i = 0; i < n; ++i)
    if (s.choice[i] == Mode::Serial && (s.b[i] - s.a[i]) * r < s.work[i]) return false;
  std::vector<long> rem(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    if (s.choice[i] == Mode::Parallel) rem[i] = s.work[i];
  std::map<std::pair<long, std::vector<long>>, bool> memo;
  std::function<bool(long)> go = [&](long tick) -> bool {
    for (std::size_t i = 0; i < n; ++i)
      if (rem[i] > 0 && s.b[i] * r <= tick) return false;
    if (std::all_of(rem.begin(), rem.end(), [](long x) { return x == 0; })) return true;
    if (tick >= s.horizon * r) return false;
    auto key = std::make_pair(tick, rem);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    bool ok = go(tick + 1);  // idle
    for (std::size_t i = 0; i < n && !ok; ++i) {
      if (rem[i] > 0 && s.a[i] * r <= tick) {
        --rem[i];
        ok = go(tick + 1);
        ++rem[i];
      }
    }
    memo[key] = ok;
    return ok;
  };
  return go(0);
}

Scalar simulate_dtap(const Dtap& dtap, const std::vector<Mode>& choice, const std::vector<std::size_t>& priority) {
  const std::size_t n = dtap.tap.size();
  auto pred = predecessors(dtap);
  std::vector<std::optional<Scalar>> finish(n), serial_end(n);
  std::vector<Scalar> rem(n);
  for (std::size_t i = 0; i < n; ++i) rem[i] = choice[i] == Mode::Parallel ? dtap.tap[i].pi : dtap.tap[i].sigma;
  std::size_t done = 0;
  Scalar now(0), makespan(0);
  auto ready_at = [&](std::size_t i) -> std::optional<Scalar> {
    Scalar t = dtap.tap[i].arrival;
    for (std::size_t u : pred[i]) {
      if (!finish[u]) return std::nullopt;
      t = max(t, *finish[u]);
    }
    return t;
  };
  while (done < n) {
    bool progressed = true;
    while (progressed) {
      progressed = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (finish[i]) continue;
        auto r = ready_at(i);
        if (!r || *r > now) continue;
        if (choice[i] == Mode::Serial) {
          if (!serial_end[i]) serial_end[i] = *r + dtap.tap[i].sigma;
          if (*serial_end[i] <= now) {
            finish[i] = serial_end[i];
            ++done;
            progressed = true;
          }
        } else if (rem[i].is_zero()) {
          finish[i] = now;
          ++done;
          progressed = true;
        }
      }
    }
    if (done == n) break;
    std::optional<std::size_t> run;
    Scalar next = Scalar::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (finish[i]) continue;
      auto r = ready_at(i);
      if (!r) continue;
      if (*r > now) {
        next = min(next, *r);
        continue;
      }
      if (choice[i] == Mode::Serial) {
        next = min(next, *serial_end[i]);
      } else if (!run || priority[i] < priority[*run]) {
        run = i;
      }
    }
    if (run) next = min(next, now + rem[*run]);
    if (next.is_infinite()) return Scalar::infinity();
    if (run) rem[*run] -= next - now;
    now = next;
  }
  for (auto& f : finish) makespan = max(makespan, *f);
  return makespan;
}

namespace {

std::vector<std::vector<bool>> reachability(const Dtap& d) {
  const std::size_t n = d.tap.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (auto [u, v] : d.deps) reach[u][v] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = true;
  return reach;
}

// Longest dependency path with the chosen works, plus total parallel work.
Scalar dtap_lower_bound(const Dtap& d, const std::vector<Mode>& choice) {
  const std::size_t n = d.tap.size();
  auto pred = predecessors(d);
  std::vector<std::optional<Scalar>> path(n);
  std::function<Scalar(std::size_t)> longest = [&](std::size_t i) -> Scalar {
    if (path[i]) return *path[i];
    Scalar start = d.tap[i].arrival;
    for (std::size_t u : pred[i]) start = max(start, longest(u));
    path[i] = start + (choice[i] == Mode::Serial ? d.tap[i].sigma : d.tap[i].pi);
    return *path[i];
  };
  Scalar lb(0), par(0);
  for (std::size_t i = 0; i < n; ++i) {
    lb = max(lb, longest(i));
    if (choice[i] == Mode::Parallel) par += d.tap[i].pi;
  }
  return max(lb, par);
}

}  // namespace

DtapOptimum brute_force_dtap(const Dtap& dtap, std::size_t cap) {
  const std::size_t n = dtap.tap.size();
  if (n > cap || n > 24) throw InstanceTooLarge("brute_force_dtap: " + std::to_string(n) + " tasks exceeds cap " + std::to_string(cap));
  auto rep = validate_dtap(dtap);
  if (!rep.violation.ok()) throw InvalidInstance("invalid DTAP: " + rep.violation.str());
  DtapOptimum best;
  best.makespan = Scalar::infinity();
  best.choice.assign(n, Mode::Parallel);
  best.priority.resize(n);
  std::iota(best.priority.begin(), best.priority.end(), 0);
  if (n == 0) {
    best.makespan = Scalar(0);
    return best;
  }
  auto reach = reachability(dtap);
  const std::uint64_t total = std::uint64_t(1) << n;
  std::vector<std::pair<Scalar, std::uint64_t>> masks;
  masks.reserve(total);
  for (std::uint64_t m = 0; m < total; ++m) {
    std::vector<Mode> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = (m >> i) & 1 ? Mode::Serial : Mode::Parallel;
    Scalar lb = dtap_lower_bound(dtap, c);
    if (lb.is_finite()) masks.emplace_back(std::move(lb), m);
  }
  std::stable_sort(masks.begin(), masks.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  bool found = false;
  for (const auto& [lb, m] : masks) {
    if (found && lb >= best.makespan) break;
    std::vector<Mode> c(n);
    std::vector<std::size_t> par;
    for (std::size_t i = 0; i < n; ++i) {
      c[i] = (m >> i) & 1 ? Mode::Serial : Mode::Parallel;
      if (c[i] == Mode::Parallel) par.push_back(i);
    }
    // every precedence-consistent priority order of the parallel tasks
    std::vector<std::size_t> prio(n, n), order;
    std::vector<bool> placed(n, false);
    bool tight = false;
    std::function<void()> extend = [&]() {
      if (tight) return;
      if (order.size() == par.size()) {
        for (std::size_t k = 0; k < order.size(); ++k) prio[order[k]] = k;
        Scalar v = simulate_dtap(dtap, c, prio);
        if (!found || v < best.makespan) {
          found = true;
          best.makespan = v;
          best.choice = c;
          best.priority = prio;
        }
        if (best.makespan == lb) tight = true;
        return;
      }
      for (std::size_t i : par) {
        if (placed[i]) continue;
        bool free = true;
        for (std::size_t j : par)
          if (!placed[j] && j != i && reach[j][i]) free = false;
        if (!free) continue;
        placed[i] = true;
        order.push_back(i);
        extend();
        order.pop_back();
        placed[i] = false;
      }
    };
    extend();
  }
  return best;
}

Scalar grid_search_dtap(const Dtap& dtap, const Scalar& step, std::size_t cap) {
  const std::size_t n = dtap.tap.size();
  if (n > cap) throw InstanceTooLarge("grid_search_dtap: too many tasks");
  if (n == 0) return Scalar(0);
  auto pred = predecessors(dtap);
  Scalar best = Scalar::infinity();
  for (std::uint64_t m = 0; m < (std::uint64_t(1) << n); ++m) {
    std::vector<Mode> c(n);
    std::vector<long> work(n);
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i) {
      c[i] = (m >> i) & 1 ? Mode::Serial : Mode::Parallel;
      const Scalar& w = c[i] == Mode::Serial ? dtap.tap[i].sigma : dtap.tap[i].pi;
      if (w.is_infinite()) {
        ok = false;
        break;
      }
      Scalar q = w / step;
      if (q.ceil() != q.floor()) throw std::invalid_argument("grid_search_dtap: works must be multiples of step");
      work[i] = q.floor().get_si();
    }
    if (!ok) continue;
    // state: per task finish tick (-1 unknown) and remaining parallel ticks
    std::map<std::pair<long, std::vector<long>>, long> memo;
    std::function<long(long, std::vector<long>&, std::vector<long>&)> go =
        [&](long tick, std::vector<long>& fin, std::vector<long>& rem) -> long {
      // settle everything that completes by `tick`
      bool moved = true;
      while (moved) {
        moved = false;
        for (std::size_t i = 0; i < n; ++i) {
          if (fin[i] >= 0) continue;
          long ready = 0;
          bool known = true;
          for (std::size_t u : pred[i]) {
            if (fin[u] < 0) known = false;
            else ready = std::max(ready, fin[u]);
          }
          if (!known || ready > tick) continue;
          if (c[i] == Mode::Serial) {
            if (ready + work[i] <= tick) {
              fin[i] = ready + work[i];
              moved = true;
            }
          } else if (rem[i] == 0) {
            fin[i] = std::max(ready, tick);
            moved = true;
          }
        }
      }
      if (std::all_of(fin.begin(), fin.end(), [](long f) { return f >= 0; })) {
        return *std::max_element(fin.begin(), fin.end());
      }
      std::vector<long> key = fin;
      key.insert(key.end(), rem.begin(), rem.end());
      auto mk = std::make_pair(tick, key);
      if (auto it = memo.find(mk); it != memo.end()) return it->second;
      long result = -1;
      bool any = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (fin[i] >= 0 || c[i] != Mode::Parallel || rem[i] == 0) continue;
        bool ready = true;
        for (std::size_t u : pred[i])
          if (fin[u] < 0 || fin[u] > tick) ready = false;
        if (!ready) continue;
        any = true;
        auto f2 = fin;
        auto r2 = rem;
        --r2[i];
        long v = go(tick + 1, f2, r2);
        if (result < 0 || v < result) result = v;
      }
      if (!any) {
        auto f2 = fin;
        auto r2 = rem;
        result = go(tick + 1, f2, r2);
      }
      memo[mk] = result;
      return result;
    };
    std::vector<long> fin(n, -1), rem(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      if (c[i] == Mode::Parallel) rem[i] = work[i];
    long v = go(0, fin, rem);
    best = min(best, Scalar(v) * step);
  }
  return best;
}

void validate_x3c(const X3CInstance& x) {
  if (x.n < 0 || x.n % 3 != 0) throw InvalidInstance("X3C universe size must be a multiple of 3");
  for (const auto& e : x.edges) {
    if (!(1 <= e[0] && e[0] < e[1] && e[1] < e[2] && e[2] <= x.n)) {
      throw InvalidInstance("X3C triple must hold distinct increasing elements in [1, n]");
    }
  }
}

bool x3c_brute(const X3CInstance& x) {
  validate_x3c(x);
  if (x.edges.size() > 20) throw InstanceTooLarge("x3c_brute: more than 20 triples");
  std::vector<bool> covered(static_cast<std::size_t>(x.n) + 1, false);
  std::function<bool()> go = [&]() -> bool {
    long first = 1;
    while (first <= x.n && covered[static_cast<std::size_t>(first)]) ++first;
    if (first > x.n) return true;
    for (const auto& e : x.edges) {
      if (e[0] != first && e[1] != first && e[2] != first) continue;
      if (covered[e[0]] || covered[e[1]] || covered[e[2]]) continue;
      for (long v : e) covered[static_cast<std::size_t>(v)] = true;
      bool ok = go();
      for (long v : e) covered[static_cast<std::size_t>(v)] = false;
      if (ok) return true;
    }
    return false;
  };
  return go();
}

Dtap gen_x3c_gadget(const X3CInstance& x, const GadgetParams& params) {
  validate_x3c(x);
  const long m = static_cast<long>(x.edges.size());
  if (m == 0) return {};
  const Scalar s = params.scale ? *params.scale : Scalar(1) / Scalar(10 * x.n * m);
  if (s.sign() <= 0) throw InvalidInstance("gadget scale must be positive");
  const Scalar head = params.head_sigma ? *params.head_sigma : Scalar(m, 2);
  const Scalar inf = Scalar::infinity();
  Dtap d;
  for (const auto& e : x.edges) {
    const std::size_t base = d.tap.size();
    d.tap.add(head, Scalar(1), Scalar(0));
    d.tap.add(Scalar(e[0]) * s, inf, Scalar(0));
    d.tap.add(inf, s, Scalar(0));
    d.tap.add(Scalar(e[1] - e[0] - 1) * s, inf, Scalar(0));
    d.tap.add(inf, s, Scalar(0));
    d.tap.add(Scalar(e[2] - e[1] - 1) * s, inf, Scalar(0));
    for (std::size_t k = 0; k < 5; ++k) d.deps.emplace_back(base + k, base + k + 1);
  }
  return d;
}

}  // namespace taskforge
