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

namespace taskforge {

/// Fluid most-work-first state for SPDP(p).
///
/// Foreground serial jobs: the min(p, #serial) with most remaining work get a
/// processor each; equal-remaining groups split what is left fractionally.
/// Leftover processors go to the lowest-id foreground parallel job. With no
/// foreground parallel job, background jobs share the leftover equally
/// (serial background jobs capped at rate 1).
class MwfFluid {
 public:
  struct Job {
    std::size_t task = 0;
    Scalar remaining;
    bool serial = true;
    bool background = false;
  };
  struct Rate {
    std::size_t task = 0;
    Scalar rate;
    bool serial = true;
    bool background = false;
  };

  explicit MwfFluid(long p) : p_(p) {}

  long p() const { return p_; }
  const std::vector<Job>& jobs() const { return jobs_; }
  bool empty() const { return jobs_.empty(); }

  void add(std::size_t task, Scalar work, bool serial, bool background = false);
  /// Removes the job and returns its remaining work.
  Scalar remove(std::size_t task);
  void set_background(std::size_t task);
  const Job* find(std::size_t task) const;

  /// Current rates of every job (zero-rate jobs included).
  std::vector<Rate> rates() const;

  /// Time until the next internal event (a completion or a group merge);
  /// infinity when nothing moves.
  Scalar next_event() const;

  /// Advances by dt, which must not exceed next_event(). Jobs reaching zero
  /// are removed and appended to `done`. Returns the rates that applied.
  std::vector<Rate> advance(const Scalar& dt, std::vector<std::size_t>& done);

  /// Advances by `duration`, resolving internal events.
  void run(const Scalar& duration, std::vector<std::size_t>& done);

 private:
  long p_;
  std::vector<Job> jobs_;
};

struct MwfState {
  std::vector<std::pair<std::size_t, Scalar>> serial;  // (id, remaining)
  Scalar pool;
};

/// Standalone fluid run: serial jobs plus one parallel pool for `duration`.
/// Finished serial jobs stay in the result with remaining 0.
MwfState most_work_first_run(const MwfState& state, long p, const Scalar& duration);

}  // namespace taskforge
