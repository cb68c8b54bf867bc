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

#include "taskforge/task.hpp"

#include <algorithm>
#include <numeric>

namespace taskforge {

Tap& Tap::add(Scalar sigma, Scalar pi, Scalar arrival) {
  tasks_.push_back(Task{tasks_.size() + 1, std::move(sigma), std::move(pi), std::move(arrival)});
  return *this;
}

MachineModel MachineModel::spdp(long procs) {
  if (procs < 1) throw InvalidInstance("spdp needs p >= 1");
  return {Regime::SPDP, procs};
}

std::string MachineModel::str() const {
  return is_ofms() ? std::string("ofms") : "spdp:" + std::to_string(p);
}

std::string Violation::str() const {
  if (ok()) return "ok";
  if (task_id) return message + " at id " + std::to_string(*task_id);
  return message;
}

Violation validate_tap(const Tap& tap) {
  for (std::size_t i = 0; i < tap.size(); ++i) {
    const Task& t = tap[i];
    if (t.id != i + 1) return {"id order", i + 1};
    if (t.arrival.is_infinite() || t.arrival.sign() < 0) return {"arrival range", t.id};
    if (t.sigma.sign() < 0 || t.pi.sign() < 0) return {"negative work", t.id};
    if (t.sigma.is_zero() && t.pi.is_zero()) return {"zero-size task", t.id};
    if (i > 0 && t.arrival < tap[i - 1].arrival) return {"arrival order", t.id};
  }
  return {};
}

namespace {

struct Dsu {
  std::vector<std::size_t> parent;
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<std::vector<std::size_t>> dtap_components(const Dtap& dtap) {
  const std::size_t n = dtap.tap.size();
  Dsu dsu(n);
  for (auto [u, v] : dtap.deps) {
    if (u < n && v < n) dsu.unite(u, v);
  }
  std::vector<std::vector<std::size_t>> by_root(n);
  for (std::size_t i = 0; i < n; ++i) by_root[dsu.find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& c : by_root) {
    if (!c.empty()) out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

DtapReport validate_dtap(const Dtap& dtap) {
  DtapReport rep;
  rep.violation = validate_tap(dtap.tap);
  const std::size_t n = dtap.tap.size();
  std::vector<std::size_t> indeg(n, 0), outdeg(n, 0);
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [u, v] : dtap.deps) {
    if (u >= n || v >= n) {
      if (rep.violation.ok()) rep.violation = {"dependency endpoint out of range", std::nullopt};
      return rep;
    }
    if (u == v) {
      if (rep.violation.ok()) rep.violation = {"cycle", u + 1};
      return rep;
    }
    adj[u].push_back(v);
    ++indeg[v];
    ++outdeg[u];
  }
  // Kahn
  std::vector<std::size_t> deg = indeg, queue;
  for (std::size_t i = 0; i < n; ++i)
    if (deg[i] == 0) queue.push_back(i);
  std::size_t seen = 0;
  while (seen < queue.size()) {
    std::size_t u = queue[seen++];
    for (std::size_t v : adj[u])
      if (--deg[v] == 0) queue.push_back(v);
  }
  if (seen < n) {
    if (rep.violation.ok()) {
      std::size_t first = 0;
      while (deg[first] == 0) ++first;
      rep.violation = {"cycle", first + 1};
    }
    return rep;
  }
  auto comps = dtap_components(dtap);
  rep.summary.is_chain_union = true;
  for (std::size_t i = 0; i < n; ++i)
    if (indeg[i] > 1 || outdeg[i] > 1) rep.summary.is_chain_union = false;
  for (auto& c : comps) rep.summary.max_component_size = std::max(rep.summary.max_component_size, c.size());
  rep.summary.chain_count = rep.summary.is_chain_union ? comps.size() : 0;
  return rep;
}

Tap truncate(const Tap& tap, const Scalar& t) {
  std::vector<Task> out;
  for (const Task& task : tap) {
    if (task.arrival <= t) out.push_back(task);
  }
  return Tap(std::move(out));
}

}  // namespace taskforge
