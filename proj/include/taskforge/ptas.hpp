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
#include <vector>

#include "taskforge/scalar.hpp"
#include "taskforge/task.hpp"
#include "taskforge/trace.hpp"

namespace taskforge {

/// DP state budget: TASKFORGE_MAX_STATES if set, else 2,000,000.
std::size_t default_max_states();

struct PtasResult {
  Scalar completion;  // exact makespan of `assignment` under most-work-first
  Scalar awake;
  std::vector<Mode> assignment;
  std::size_t segments = 0;   // busy segments chosen by the gap partition
  std::size_t states = 0;     // DP states visited across all probes
  std::size_t probes = 0;
};

/// Boundary-time DP inside a binary search over (1 + eps/3)^i makespan
/// probes, wrapped in a gap-partition DP over contiguous arrival segments.
PtasResult ptas_offline(const Tap& tap, long p, const Scalar& eps, std::size_t max_states = default_max_states());

}  // namespace taskforge
