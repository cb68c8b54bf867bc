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
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "taskforge/scalar.hpp"

namespace taskforge {

class InvalidInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InstanceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One schedulable unit. `id` is 1-based and equals position + 1 inside its
/// TAP; it doubles as the tie-break key.
struct Task {
  std::size_t id = 0;
  Scalar sigma;
  Scalar pi;
  Scalar arrival;
};

/// Arrival-ordered task sequence.
class Tap {
 public:
  Tap() = default;
  explicit Tap(std::vector<Task> tasks) : tasks_(std::move(tasks)) {}

  /// Appends a task with the next id.
  Tap& add(Scalar sigma, Scalar pi, Scalar arrival);

  std::size_t size() const { return tasks_.size(); }
  bool empty() const { return tasks_.empty(); }
  const Task& operator[](std::size_t i) const { return tasks_[i]; }
  const std::vector<Task>& tasks() const { return tasks_; }
  auto begin() const { return tasks_.begin(); }
  auto end() const { return tasks_.end(); }

 private:
  std::vector<Task> tasks_;
};

/// TAP plus precedence pairs (u, v), 0-based indices: u finishes before v starts.
struct Dtap {
  Tap tap;
  std::vector<std::pair<std::size_t, std::size_t>> deps;
};

struct MachineModel {
  enum class Regime { OFMS, SPDP };
  Regime regime = Regime::OFMS;
  long p = 1;

  static MachineModel ofms() { return {Regime::OFMS, 1}; }
  static MachineModel spdp(long procs);
  bool is_ofms() const { return regime == Regime::OFMS; }
  std::string str() const;
  friend bool operator==(const MachineModel&, const MachineModel&) = default;
};

struct Metrics {
  Scalar completion_time;
  Scalar awake_time;
};

/// Empty `message` means ok.
struct Violation {
  std::string message;
  std::optional<std::size_t> task_id;  // 1-based
  bool ok() const { return message.empty(); }
  std::string str() const;
};

Violation validate_tap(const Tap& tap);

struct DtapSummary {
  bool is_chain_union = false;
  std::size_t max_component_size = 0;
  std::size_t chain_count = 0;
};

struct DtapReport {
  Violation violation;
  DtapSummary summary;
};

DtapReport validate_dtap(const Dtap& dtap);

/// Tasks with arrival <= t, order preserved.
Tap truncate(const Tap& tap, const Scalar& t);

/// Weakly connected components of the dependency graph, each sorted.
std::vector<std::vector<std::size_t>> dtap_components(const Dtap& dtap);

}  // namespace taskforge
