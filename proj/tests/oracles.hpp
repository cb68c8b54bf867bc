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

// Independent reference computations used only by the tests.

#include <algorithm>
#include <map>
#include <vector>

#include "taskforge/scalar.hpp"

namespace taskforge::testing {

// Round-robin time slicing with slice width h: in each slice the min(p, #jobs)
// serial jobs with most remaining work (ties by id) get one processor for h,
// and leftover processors drain the pool.
inline std::pair<std::map<std::size_t, Scalar>, Scalar> sliced_mwf(std::map<std::size_t, Scalar> serial, Scalar pool,
                                                                     long p, const Scalar& duration,
                                                                     const Scalar& h) {
  Scalar t(0);
  while (t < duration) {
    Scalar step = min(h, duration - t);
    std::vector<std::pair<Scalar, std::size_t>> live;
    for (auto& [id, r] : serial)
      if (r.sign() > 0) live.emplace_back(r, id);
    std::sort(live.begin(), live.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    long used = 0;
    for (auto& [r, id] : live) {
      if (used == p) break;
      serial[id] = max(Scalar(0), serial[id] - step);
      ++used;
    }
    pool = max(Scalar(0), pool - Scalar(p - used) * step);
    t += step;
  }
  return {serial, pool};
}

inline Scalar abs_diff(const Scalar& a, const Scalar& b) { return a < b ? b - a : a - b; }

}  // namespace taskforge::testing
