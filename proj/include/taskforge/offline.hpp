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

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "taskforge/scalar.hpp"
#include "taskforge/task.hpp"
#include "taskforge/trace.hpp"

namespace taskforge {

/// Canonical OFMS optimum: everything with sigma + t <= completion goes slow.
struct ThresholdSolution {
  Scalar completion;
  std::vector<std::size_t> slow_set;    // 0-based, ascending
  std::vector<std::size_t> fast_order;  // sigma + t descending, then id
};

/// Incremental OFMS optimum for a growing arrival-ordered prefix.
///
/// Keeps, for each candidate threshold theta (every finite sigma_i + t_i plus
/// "nothing slow"), the non-idle fast makespan of the tasks above theta.
class OfmsOptTracker {
 public:
  void add(const Task& t);
  std::size_t size() const { return tasks_.size(); }
  const Scalar& completion() const;
  ThresholdSolution solution() const;
  /// Fast makespan when exactly the tasks with sigma + t > theta run fast;
  /// theta = nullopt means all fast.
  Scalar fast_makespan(const std::optional<Scalar>& theta) const;

 private:
  std::vector<Task> tasks_;
  Scalar all_fast_{0};
  std::map<Scalar, Scalar> by_theta_;
  mutable std::optional<Scalar> cached_;
};

ThresholdSolution opt_completion_ofms(const Tap& tap);

struct SingleArrivalResult {
  Scalar completion;
  std::size_t k = 0;             // number of serial candidates considered (0 = all parallel)
  std::vector<Mode> assignment;  // input order
};

SingleArrivalResult single_arrival_exact(const std::vector<std::pair<Scalar, Scalar>>& tasks, long p);
/// All arrivals must be equal; the result is measured from time 0.
SingleArrivalResult single_arrival_exact(const Tap& tap, long p);

struct AssignmentRun {
  Scalar completion;
  Scalar awake;
  std::vector<Scalar> finish;
};

/// Non-idle fast machine in arrival order plus a slow machine per serial task.
AssignmentRun simulate_assignment_ofms(const Tap& tap, const std::vector<Mode>& assignment);
/// Fluid most-work-first from each arrival.
AssignmentRun simulate_assignment_spdp(const Tap& tap, const std::vector<Mode>& assignment, long p);
AssignmentRun simulate_assignment(const Tap& tap, const std::vector<Mode>& assignment, const MachineModel& m);

struct BruteForceResult {
  Scalar completion;
  std::vector<Mode> assignment;
  std::size_t simulations = 0;
};

BruteForceResult brute_force_exact(const Tap& tap, const MachineModel& machine, std::size_t cap = 14);

}  // namespace taskforge
