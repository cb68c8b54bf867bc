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
#include <string>
#include <vector>

#include "taskforge/scalar.hpp"
#include "taskforge/task.hpp"

namespace taskforge {

enum class Commitment { Instant, Eventual, Never };
enum class Mode { Undecided, Serial, Parallel };
enum class Lane { Slow, Fast, Serial, Parallel, Background };

std::string to_string(Commitment c);
std::string to_string(Mode m);
std::string to_string(Lane l);

/// A policy's request. `task` is a 0-based index.
struct PolicyEvent {
  enum class Kind { Assign, StartSerial, StartParallel, Cancel, SetActive, SetFastQueue, SetBackground };
  Kind kind = Kind::Assign;
  std::size_t task = 0;
  Mode mode = Mode::Undecided;
  std::vector<std::size_t> order;

  static PolicyEvent assign(std::size_t t, Mode m) { return {Kind::Assign, t, m, {}}; }
  static PolicyEvent start_serial(std::size_t t) { return {Kind::StartSerial, t, Mode::Serial, {}}; }
  static PolicyEvent start_parallel(std::size_t t) { return {Kind::StartParallel, t, Mode::Parallel, {}}; }
  static PolicyEvent cancel(std::size_t t) { return {Kind::Cancel, t, Mode::Undecided, {}}; }
  static PolicyEvent set_active(std::size_t t) { return {Kind::SetActive, t, Mode::Parallel, {}}; }
  static PolicyEvent set_fast_queue(std::vector<std::size_t> o) {
    return {Kind::SetFastQueue, 0, Mode::Parallel, std::move(o)};
  }
  static PolicyEvent set_background(std::size_t t) { return {Kind::SetBackground, t, Mode::Undecided, {}}; }
};

std::string to_string(PolicyEvent::Kind k);

struct TraceEvent {
  Scalar time;
  PolicyEvent event;
};

struct Segment {
  Scalar start;
  Scalar end;
  Scalar rate;
  Lane lane = Lane::Slow;
  long machine = -1;  // slow machine number in OFMS, -1 otherwise
  bool cancelled = false;
};

struct TaskRecord {
  std::size_t id = 0;  // 1-based
  Scalar arrival;
  Mode decision = Mode::Undecided;
  std::vector<Segment> segments;
  std::optional<Scalar> finish;
};

struct ScheduleTrace {
  std::string policy;
  std::string commitment;
  std::string machine;
  std::string oracle;
  bool stalled = false;
  std::vector<TraceEvent> events;
  std::vector<TaskRecord> tasks;
  Metrics metrics;
};

/// Measure of the union of [arrival, finish] over tasks. Unfinished tasks
/// count as running forever.
Scalar awake_time(const ScheduleTrace& trace);

/// Re-derives every invariant from the per-task segments.
Violation validate_trace(const ScheduleTrace& trace, const Tap& tap, const MachineModel& machine);

}  // namespace taskforge
