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

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "taskforge/scalar.hpp"
#include "taskforge/task.hpp"
#include "taskforge/trace.hpp"

namespace taskforge {

class InvalidStrategy : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Width-zero DTAP semantics: a serial task occupies wall-clock sigma and no
/// shared capacity; parallel tasks share one unit-rate resource
/// (preemptive); a task starts once all its predecessors have finished.

/// Promised completion intervals on an integer grid of N units. Works are
/// measured in ticks, `ticks_per_unit` per unit.
struct PromiseStrategy {
  long horizon = 0;
  long ticks_per_unit = 1;
  std::vector<long> a, b;
  std::vector<Mode> choice;
  std::vector<long> work;  // ticks
};

struct EdfVerdict {
  bool feasible = false;      // greedy earliest-promise-first run
  bool capacity_ok = false;   // interval-capacity condition
  std::string witness;        // first late task or violated interval
};

EdfVerdict edf_feasible(const PromiseStrategy& s, const Dtap& dtap);
/// Exhaustive tick-by-tick search over resource assignments (tiny inputs).
bool exhaustive_feasible(const PromiseStrategy& s, const Dtap& dtap);

/// Makespan when `choice` is fixed and the resource always serves the
/// highest-priority ready parallel task (`priority[i]` smaller = earlier).
Scalar simulate_dtap(const Dtap& dtap, const std::vector<Mode>& choice, const std::vector<std::size_t>& priority);

struct DtapOptimum {
  Scalar makespan;
  std::vector<Mode> choice;
  std::vector<std::size_t> priority;
};

DtapOptimum brute_force_dtap(const Dtap& dtap, std::size_t cap = 7);
/// Time-indexed search with resource decisions on multiples of `step`.
Scalar grid_search_dtap(const Dtap& dtap, const Scalar& step, std::size_t cap = 5);

struct DtapScheme {
  Scalar makespan;
  Scalar target;  // accepted probe T
  Scalar factor;  // the scheme's recorded (1 + c eps) bound
  std::vector<Mode> choice;
  std::optional<PromiseStrategy> strategy;
  std::size_t states = 0;
};

DtapScheme ptas_bounded_components(const Dtap& dtap, std::size_t L, const Scalar& eps, std::size_t max_states = 0);
DtapScheme dp_k_chains(const Dtap& dtap, const Scalar& eps, std::size_t max_states = 0);

struct X3CInstance {
  long n = 0;
  std::vector<std::array<long, 3>> edges;  // 1-based, strictly increasing
};

void validate_x3c(const X3CInstance& x);
bool x3c_brute(const X3CInstance& x);

struct GadgetParams {
  std::optional<Scalar> scale;       // default 1 / (10 n m)
  std::optional<Scalar> head_sigma;  // default m / 2
};

/// One chain of six tasks per hyperedge: a head (sigma = head, pi = 1), then
/// serial i*s, parallel s, serial (j-i-1)*s, parallel s, serial (k-j-1)*s.
Dtap gen_x3c_gadget(const X3CInstance& x, const GadgetParams& params = {});

}  // namespace taskforge
