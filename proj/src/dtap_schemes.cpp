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

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>

#include "taskforge/dtap.hpp"
#include "taskforge/ptas.hpp"

namespace taskforge {

namespace {

void require_zero_arrivals(const Dtap& d) {
  for (const Task& t : d.tap)
    if (!t.arrival.is_zero()) throw InvalidInstance("DTAP schemes need every arrival at 0");
}

std::vector<std::vector<std::size_t>> preds_of(const Dtap& d) {
  std::vector<std::vector<std::size_t>> pred(d.tap.size());
  for (auto [u, v] : d.deps) pred[v].push_back(u);
  return pred;
}

std::vector<std::size_t> topo_order(const Dtap& d, const std::vector<std::size_t>& members) {
  const std::size_t n = d.tap.size();
  std::vector<bool> in(n, false);
  for (std::size_t i : members) in[i] = true;
  std::vector<std::size_t> indeg(n, 0);
  std::vector<std::vector<std::size_t>> succ(n);
  for (auto [u, v] : d.deps) {
    if (in[u] && in[v]) {
      succ[u].push_back(v);
      ++indeg[v];
    }
  }
  std::vector<std::size_t> out, ready;
  for (std::size_t i : members)
    if (indeg[i] == 0) ready.push_back(i);
  while (!ready.empty()) {
    auto it = std::min_element(ready.begin(), ready.end());
    std::size_t i = *it;
    ready.erase(it);
    out.push_back(i);
    for (std::size_t v : succ[i])
      if (--indeg[v] == 0) ready.push_back(v);
  }
  return out;
}

// Longest dependency path with min(sigma, pi) per task; a lower bound on OPT.
Scalar path_lower_bound(const Dtap& d) {
  const std::size_t n = d.tap.size();
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  auto order = topo_order(d, all);
  auto pred = preds_of(d);
  std::vector<Scalar> end(n);
  Scalar lb(0);
  for (std::size_t i : order) {
    Scalar start(0);
    for (std::size_t u : pred[i]) start = max(start, end[u]);
    end[i] = start + min(d.tap[i].sigma, d.tap[i].pi);
    lb = max(lb, end[i]);
  }
  return lb;
}

long ceil_long(const Scalar& x) { return x.ceil().get_si(); }

std::size_t budget(std::size_t max_states) { return max_states ? max_states : default_max_states(); }

struct Probe {
  bool accepted = false;
  Scalar makespan;
  std::vector<Mode> choice;
  std::optional<PromiseStrategy> strategy;
  std::size_t states = 0;
};

template <class Try>
DtapScheme search_target(const Scalar& lb, const Scalar& eps, Try&& attempt) {
  // probes lb * (1+eps)^i; grow until accepted, then bisect on the exponent
  const Scalar base = Scalar(1) + eps;
  auto probe_at = [&](long i) {
    Scalar t = lb;
    for (long k = 0; k < i; ++k) t *= base;
    return t;
  };
  std::size_t states = 0;
  long hi = 0;
  Probe best = attempt(probe_at(0));
  states += best.states;
  while (!best.accepted) {
    hi = hi == 0 ? 1 : hi * 2;
    if (hi > 4096) throw InstanceTooLarge("DTAP scheme found no feasible probe");
    best = attempt(probe_at(hi));
    states += best.states;
  }
  long lo = hi / 2;
  if (hi == 0) lo = -1;
  else if (hi == 1) lo = 0;
  // lo rejected (or -1), hi accepted
  while (hi - lo > 1) {
    long mid = (lo + hi) / 2;
    Probe p = attempt(probe_at(mid));
    states += p.states;
    if (p.accepted) {
      hi = mid;
      best = std::move(p);
    } else {
      lo = mid;
    }
  }
  DtapScheme out;
  out.makespan = best.makespan;
  out.target = probe_at(hi);
  out.choice = best.choice;
  out.strategy = best.strategy;
  out.states = states;
  return out;
}

}  // namespace

DtapScheme ptas_bounded_components(const Dtap& dtap, std::size_t L, const Scalar& eps, std::size_t max_states) {
  if (!(eps.sign() > 0 && eps <= Scalar(1))) throw std::invalid_argument("eps must lie in (0, 1]");
  if (L == 0) throw std::invalid_argument("component bound L must be positive");
  auto rep = validate_dtap(dtap);
  if (!rep.violation.ok()) throw InvalidInstance("invalid DTAP: " + rep.violation.str());
  require_zero_arrivals(dtap);
  if (rep.summary.max_component_size > L) throw InvalidInstance("component larger than L");
  const std::size_t n = dtap.tap.size();
  const long N = ceil_long(Scalar(1) / eps) + 2 * static_cast<long>(L);
  DtapScheme empty;
  empty.makespan = Scalar(0);
  empty.target = Scalar(0);
  empty.factor = (Scalar(N) * eps) * (Scalar(1) + eps);
  if (n == 0) return empty;
  const Scalar lb = path_lower_bound(dtap);
  if (lb.is_infinite()) throw InvalidInstance("a task has no finite implementation");
  if (lb.is_zero()) {
    empty.choice.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      empty.choice[i] = dtap.tap[i].sigma.is_zero() ? Mode::Serial : Mode::Parallel;
    return empty;
  }
  const long r = std::max<long>(1, ceil_long(Scalar(static_cast<long>(n)) / eps));
  const std::size_t cap = budget(max_states);
  const auto comps = dtap_components(dtap);
  const auto pred = preds_of(dtap);
  const std::size_t side = static_cast<std::size_t>(N + 1);

  auto attempt = [&](const Scalar& T) -> Probe {
    Probe res;
    const Scalar tick = eps * T / Scalar(r);
    std::vector<long> ws(n, -1), wp(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
      if (dtap.tap[i].sigma.is_finite()) ws[i] = ceil_long(dtap.tap[i].sigma / tick);
      if (dtap.tap[i].pi.is_finite()) wp[i] = ceil_long(dtap.tap[i].pi / tick);
    }
    struct Partial {
      std::vector<long> a, b, work;
      std::vector<Mode> choice;
    };
    auto fits = [&](const std::vector<long>& W) {
      // load(x, y) = sum of W[a][b] over x <= a, b <= y
      std::vector<long> S(side * side, 0);
      for (long x = N; x >= 0; --x) {
        for (long y = 0; y <= N; ++y) {
          long v = W[static_cast<std::size_t>(x) * side + static_cast<std::size_t>(y)];
          if (x < N) v += S[static_cast<std::size_t>(x + 1) * side + static_cast<std::size_t>(y)];
          if (y > 0) v += S[static_cast<std::size_t>(x) * side + static_cast<std::size_t>(y - 1)];
          if (x < N && y > 0) v -= S[static_cast<std::size_t>(x + 1) * side + static_cast<std::size_t>(y - 1)];
          S[static_cast<std::size_t>(x) * side + static_cast<std::size_t>(y)] = v;
          if (y >= x && v > (y - x) * r) return false;
        }
      }
      return true;
    };
    std::map<std::vector<long>, Partial> layer;
    Partial start{std::vector<long>(n, 0), std::vector<long>(n, 0), std::vector<long>(n, 0),
                  std::vector<Mode>(n, Mode::Parallel)};
    layer.emplace(std::vector<long>(side * side, 0), start);
    for (const auto& comp : comps) {
      const auto order = topo_order(dtap, comp);
      const std::size_t k = order.size();
      std::map<std::vector<long>, Partial> next;
      for (const auto& [W, part] : layer) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << k); ++mask) {
          bool ok = true;
          for (std::size_t j = 0; j < k && ok; ++j)
            ok = ((mask >> j) & 1 ? ws[order[j]] : wp[order[j]]) >= 0;
          if (!ok) continue;
          Partial cur = part;
          std::vector<long> W2 = W;
          std::function<void(std::size_t)> place = [&](std::size_t j) {
            if (next.size() > cap) return;
            if (j == k) {
              if (fits(W2) && !next.count(W2)) next.emplace(W2, cur);
              ++res.states;
              return;
            }
            const std::size_t i = order[j];
            long a = 0;
            for (std::size_t u : pred[i]) a = std::max(a, cur.b[u]);
            cur.a[i] = a;
            if ((mask >> j) & 1) {
              cur.choice[i] = Mode::Serial;
              cur.work[i] = ws[i];
              long b = a + (ws[i] + r - 1) / r;
              if (b > N) return;
              cur.b[i] = b;
              place(j + 1);
            } else {
              cur.choice[i] = Mode::Parallel;
              cur.work[i] = wp[i];
              for (long b = a + (wp[i] + r - 1) / r; b <= N; ++b) {
                cur.b[i] = b;
                const std::size_t cell = static_cast<std::size_t>(a) * side + static_cast<std::size_t>(b);
                W2[cell] += wp[i];
                place(j + 1);
                W2[cell] -= wp[i];
              }
            }
          };
          place(0);
        }
      }
      if (next.size() > cap) throw InstanceTooLarge("bounded-component DP exceeded the state budget");
      layer = std::move(next);
      if (layer.empty()) return res;
    }
    const Partial& win = layer.begin()->second;
    PromiseStrategy s;
    s.horizon = N;
    s.ticks_per_unit = r;
    s.a = win.a;
    s.b = win.b;
    s.choice = win.choice;
    s.work = win.work;
    // promise order realizes the strategy
    std::vector<std::size_t> idx(n), prio(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return s.b[x] < s.b[y]; });
    for (std::size_t k = 0; k < n; ++k) prio[idx[k]] = k;
    res.accepted = true;
    res.makespan = simulate_dtap(dtap, s.choice, prio);
    res.choice = s.choice;
    res.strategy = std::move(s);
    return res;
  };
  DtapScheme out = search_target(lb, eps, attempt);
  out.factor = empty.factor;
  return out;
}

DtapScheme dp_k_chains(const Dtap& dtap, const Scalar& eps, std::size_t max_states) {
  if (!(eps.sign() > 0 && eps <= Scalar(1))) throw std::invalid_argument("eps must lie in (0, 1]");
  auto rep = validate_dtap(dtap);
  if (!rep.violation.ok()) throw InvalidInstance("invalid DTAP: " + rep.violation.str());
  if (!rep.summary.is_chain_union) throw InvalidInstance("DTAP is not a union of chains");
  require_zero_arrivals(dtap);
  const std::size_t n = dtap.tap.size();
  DtapScheme empty;
  empty.makespan = Scalar(0);
  empty.target = Scalar(0);
  empty.factor = (Scalar(1) + Scalar(2) * eps) * (Scalar(1) + eps);
  if (n == 0) return empty;
  const Scalar lb = path_lower_bound(dtap);
  if (lb.is_infinite()) throw InvalidInstance("a task has no finite implementation");
  if (lb.is_zero()) {
    empty.choice.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      empty.choice[i] = dtap.tap[i].sigma.is_zero() ? Mode::Serial : Mode::Parallel;
    return empty;
  }
  std::vector<std::vector<std::size_t>> chains;
  for (const auto& comp : dtap_components(dtap)) chains.push_back(topo_order(dtap, comp));
  const std::size_t k = chains.size();
  const long H = (((Scalar(1) + Scalar(2) * eps) * Scalar(static_cast<long>(n))) / eps).floor().get_si();
  const std::size_t cap = budget(max_states);

  auto attempt = [&](const Scalar& T) -> Probe {
    Probe res;
    const Scalar g = eps * T / Scalar(static_cast<long>(n));
    std::vector<long> ws(n, -1), wp(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
      if (dtap.tap[i].sigma.is_finite()) ws[i] = ceil_long(dtap.tap[i].sigma / g);
      if (dtap.tap[i].pi.is_finite()) wp[i] = ceil_long(dtap.tap[i].pi / g);
    }
    // per chain: (index of live task, mode 0 serial / 1 parallel, progress)
    using State = std::vector<long>;
    struct Back {
      State parent;
      std::vector<std::pair<std::size_t, Mode>> chosen;
      std::vector<std::size_t> finished;
    };
    std::vector<std::map<State, Back>> layers;
    auto work_of = [&](std::size_t task, long mode) { return mode == 1 ? wp[task] : ws[task]; };
    // settle: a live task with all its work done hands over to the next task in its chain
    std::function<void(State&, std::size_t, Back&, std::vector<State>&, std::vector<Back>&)> expand =
        [&](State& s, std::size_t c, Back& back, std::vector<State>& outs, std::vector<Back>& backs) {
          if (c == k) {
            outs.push_back(s);
            backs.push_back(back);
            return;
          }
          const long idx = s[3 * c];
          if (idx >= static_cast<long>(chains[c].size())) {
            expand(s, c + 1, back, outs, backs);
            return;
          }
          const std::size_t task = chains[c][static_cast<std::size_t>(idx)];
          if (s[3 * c + 1] < 0) {
            for (long mode : {0L, 1L}) {
              if (work_of(task, mode) < 0) continue;
              State t = s;
              t[3 * c + 1] = mode;
              t[3 * c + 2] = 0;
              back.chosen.emplace_back(task, mode == 1 ? Mode::Parallel : Mode::Serial);
              expand(t, c, back, outs, backs);
              back.chosen.pop_back();
            }
            return;
          }
          if (s[3 * c + 2] >= work_of(task, s[3 * c + 1])) {
            State t = s;
            t[3 * c] = idx + 1;
            t[3 * c + 1] = -1;
            t[3 * c + 2] = 0;
            back.finished.push_back(task);
            expand(t, c, back, outs, backs);
            back.finished.pop_back();
            return;
          }
          expand(s, c + 1, back, outs, backs);
        };
    auto done = [&](const State& s) {
      for (std::size_t c = 0; c < k; ++c)
        if (s[3 * c] < static_cast<long>(chains[c].size())) return false;
      return true;
    };
    State init(3 * k, 0);
    for (std::size_t c = 0; c < k; ++c) init[3 * c + 1] = -1;
    std::map<State, Back> cur;
    {
      std::vector<State> outs;
      std::vector<Back> backs;
      Back b0;
      expand(init, 0, b0, outs, backs);
      for (std::size_t j = 0; j < outs.size(); ++j) cur.emplace(outs[j], backs[j]);
    }
    layers.push_back(cur);
    std::optional<State> goal;
    long steps = 0;
    for (; steps <= H; ++steps) {
      for (const auto& [s, b] : layers.back()) {
        if (done(s)) {
          goal = s;
          break;
        }
      }
      if (goal || steps == H) break;
      std::map<State, Back> next;
      for (const auto& [s, b] : layers.back()) {
        std::vector<std::size_t> par;
        State adv = s;
        for (std::size_t c = 0; c < k; ++c) {
          if (adv[3 * c] >= static_cast<long>(chains[c].size())) continue;
          if (adv[3 * c + 1] == 0) ++adv[3 * c + 2];
          else par.push_back(c);
        }
        std::vector<State> grants;
        if (par.empty()) grants.push_back(adv);
        for (std::size_t c : par) {
          State t = adv;
          ++t[3 * c + 2];
          grants.push_back(t);
        }
        for (State& t : grants) {
          std::vector<State> outs;
          std::vector<Back> backs;
          Back bk;
          bk.parent = s;
          expand(t, 0, bk, outs, backs);
          res.states += outs.size();
          for (std::size_t j = 0; j < outs.size(); ++j)
            if (!next.count(outs[j])) next.emplace(outs[j], backs[j]);
        }
        if (next.size() > cap) throw InstanceTooLarge("k-chain DP exceeded the state budget");
      }
      if (next.empty()) break;
      layers.push_back(std::move(next));
    }
    if (!goal) return res;
    // walk back for choices and grid finish steps
    std::vector<Mode> choice(n, Mode::Parallel);
    std::vector<long> fin(n, 0);
    State s = *goal;
    for (long step = steps; step >= 0; --step) {
      const Back& b = layers[static_cast<std::size_t>(step)].at(s);
      for (auto [task, m] : b.chosen) choice[task] = m;
      for (std::size_t task : b.finished) fin[task] = step;
      if (step > 0) s = b.parent;
    }
    std::vector<std::size_t> idx(n), prio(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return fin[x] < fin[y]; });
    for (std::size_t j = 0; j < n; ++j) prio[idx[j]] = j;
    res.accepted = true;
    res.choice = choice;
    res.makespan = min(Scalar(steps) * g, simulate_dtap(dtap, choice, prio));
    return res;
  };
  DtapScheme out = search_target(lb, eps, attempt);
  out.factor = empty.factor;
  return out;
}

}  // namespace taskforge
