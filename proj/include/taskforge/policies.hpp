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

#include <functional>
#include <memory>
#include <string>

#include "taskforge/engine.hpp"
#include "taskforge/threshold.hpp"

namespace taskforge {

using PolicyPtr = std::unique_ptr<Policy>;
using PolicyFactory = std::function<PolicyPtr()>;

/// Instant: on arrival go fast/parallel iff sigma + t > lambda * C^t (strict).
PolicyPtr make_threshold_policy(const Scalar& lambda, std::string name = "");
/// Scheduler 2: lambda = 2, FIFO fast queue.
PolicyPtr policy_ins();
/// Same rule against the SPDP oracle; most-work-first execution.
PolicyPtr policy_ins_spdp();
/// Eventual: slow start when sigma + t <= xi * C^t, one active fast task.
PolicyPtr policy_eve(const ThresholdConstant& xi = ThresholdConstant::xi());
/// Never: move to slow when sigma + t <= 1.5 * C^t; fast runs max sigma + t_i.
PolicyPtr policy_nev();
/// Single arrival, PWO: largest-first parallel until the switch ratio hits 2.
PolicyPtr policy_pwo_til();
/// Batches of alive tasks handed to a fresh inner policy.
PolicyPtr batch_transform(PolicyFactory inner, std::string name);
PolicyPtr policy_pwo_batched();
/// Batches solved exactly by single_arrival_exact.
PolicyPtr policy_batched_opt();
/// Instant, PWO: first ceil(sqrt p) arrivals per ceil(log2 sigma) bucket run parallel.
PolicyPtr policy_sqrtp_doa(long p, bool background = true);

PolicyPtr policy_always_fast();
PolicyPtr policy_always_slow();
PolicyPtr policy_idle();
/// Plays back an offline optimum computed from the full TAP.
PolicyPtr policy_offline_replay(const Tap& tap, const MachineModel& machine);

/// ceil(log2 sigma); sigma = 0 and sigma = inf map to the extreme buckets.
long sigma_bucket(const Scalar& sigma);
long ceil_sqrt(long p);

}  // namespace taskforge
