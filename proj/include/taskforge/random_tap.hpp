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

#include <cstdint>
#include <string>

#include "taskforge/task.hpp"

namespace taskforge {

/// Version tag of the random-instance distribution, embedded in reports.
inline constexpr const char* kRandomDistribution =
    "v2 mt19937_64; sigma=m/1024*2^e, e in [-5,4], m in [1024,2048); pi=sigma*k/64, k in [1,64]; "
    "arrival=j/64, j in [0,16n]; spdp pi=sigma*(64+(p-1)k)/64, k in [0,64]";

/// n tasks with log-uniform sigma in [2^-5, 2^5), pi <= sigma, arrivals
/// uniform on the 1/64 grid in [0, n/4], sorted.
Tap random_tap(std::size_t n, std::uint64_t seed);

/// SPDP instance: parallel work pi in [sigma, p * sigma] (a parallel
/// implementation never takes less total work than the serial one), same
/// sigma and arrival draws as random_tap.
Tap random_spdp_tap(std::size_t n, long p, std::uint64_t seed);

/// Same works, all arrivals 0.
Tap random_single_arrival(std::size_t n, std::uint64_t seed);

/// Works drawn from {1..max_work} (both sigma and pi), arrivals 0.
Tap random_small_tap(std::size_t n, long max_work, std::uint64_t seed);

/// Union of at most `chains` chains over n tasks with arrivals 0; works in
/// quarters from [1/4, 2], occasionally one side infinite.
Dtap random_chain_dtap(std::size_t n, std::size_t chains, std::uint64_t seed);

/// Components of size at most L (each a chain or a small tree-like DAG).
Dtap random_component_dtap(std::size_t n, std::size_t L, std::uint64_t seed);

}  // namespace taskforge
