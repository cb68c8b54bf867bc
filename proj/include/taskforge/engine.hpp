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
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "taskforge/scalar.hpp"
#include "taskforge/task.hpp"
#include "taskforge/trace.hpp"

namespace taskforge {

class PolicyViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ObservabilityViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// What a policy may see of one task. pi() throws for redacted views.
class TaskView {
 public:
  TaskView(const Task& task, Scalar arrival, bool redacted) : task_(&task), arrival_(std::move(arrival)), redacted_(redacted) {}

  std::size_t index() const { return task_->id - 1; }
  std::size_t id() const { return task_->id; }
  const Scalar& sigma() const { return task_->sigma; }
  const Scalar& pi() const;
  const Scalar& arrival() const { return arrival_; }
  void set_arrival(Scalar a) { arrival_ = std::move(a); }

  Mode mode = Mode::Undecided;
  bool started = false;    // launched on some machine or pool
  bool finished = false;
  bool on_slow = false;    // OFMS slow machine or SPDP serial pool
  bool on_fast = false;    // OFMS fast list or SPDP parallel pool
  bool background = false;

 private:
  const Task* task_;
  Scalar arrival_;
  bool redacted_;
};

/// Read-only simulation state offered to policies.
class SimView {
 public:
  virtual ~SimView() = default;
  virtual Scalar now() const = 0;
  virtual const MachineModel& machine() const = 0;
  /// Arrived task indices in arrival order.
  virtual const std::vector<std::size_t>& arrived() const = 0;
  /// Finished task indices in completion order.
  virtual const std::vector<std::size_t>& completed() const = 0;
  virtual TaskView task(std::size_t index) const = 0;
  /// Front of the OFMS fast list, if any.
  virtual std::optional<std::size_t> fast_front() const = 0;
  /// C^now: optimal completion of the tasks arrived so far.
  virtual Scalar opt_completion() const = 0;
};

class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string name() const = 0;
  virtual Commitment commitment() const = 0;
  virtual bool parallel_work_oblivious() const { return false; }
  virtual void reset() {}
  /// Called at every decision point (arrivals, completions, wakeups).
  virtual void decide(const SimView& view, std::vector<PolicyEvent>& out) = 0;
  /// Absolute time of the next requested decision point.
  virtual std::optional<Scalar> next_wakeup() const { return std::nullopt; }
  /// Ask the engine for a decision point when the optimum of the arrived
  /// tasks would have finished everything.
  virtual bool wants_opt_idle_signal() const { return false; }
};

/// Injects tasks while watching a run.
class AdaptiveAdversary {
 public:
  virtual ~AdaptiveAdversary() = default;
  virtual std::string name() const = 0;
  virtual Tap initial() = 0;
  /// Called after each decision point; returned tasks need arrival >= now
  /// (ids are reassigned by the engine).
  virtual std::vector<Task> observe(const Scalar& now, const std::vector<PolicyEvent>& events, const SimView& view) = 0;
};

/// Source of C^t for policies.
struct OracleConfig {
  enum class Mode { Exact, Brute, Ptas };
  Mode mode = Mode::Exact;
  std::size_t cap = 14;
  Scalar eps{1, 2};

  static OracleConfig exact() { return {}; }
  static OracleConfig brute(std::size_t cap = 14) { return {Mode::Brute, cap, Scalar(1, 2)}; }
  static OracleConfig ptas(const Scalar& eps) { return {Mode::Ptas, 14, eps}; }
  std::string str() const;
};

struct SimOptions {
  OracleConfig oracle;
  AdaptiveAdversary* adversary = nullptr;
  std::size_t max_decision_rounds = 1000;
};

struct SimResult {
  ScheduleTrace trace;
  Tap tap;  // the input plus any injected tasks
};

SimResult simulate(const Tap& tap, Policy& policy, const MachineModel& machine, const SimOptions& opts = {});
/// Runs against an adaptive adversary, starting from its initial TAP.
SimResult simulate(AdaptiveAdversary& adversary, Policy& policy, const MachineModel& machine, SimOptions opts = {});

/// Optimal completion of `tap` under the oracle configuration.
Scalar oracle_completion(const Tap& tap, const MachineModel& machine, const OracleConfig& cfg);

}  // namespace taskforge
