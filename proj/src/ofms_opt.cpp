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

#include <algorithm>

#include "taskforge/offline.hpp"

namespace taskforge {

void OfmsOptTracker::add(const Task& t) {
  const Scalar key = t.sigma + t.arrival;
  for (auto& [theta, f] : by_theta_) {
    if (key > theta) f = max(f, t.arrival) + t.pi;
  }
  all_fast_ = max(all_fast_, t.arrival) + t.pi;
  tasks_.push_back(t);
  if (key.is_finite() && !by_theta_.count(key)) by_theta_.emplace(key, fast_makespan(key));
  cached_.reset();
}

Scalar OfmsOptTracker::fast_makespan(const std::optional<Scalar>& theta) const {
  Scalar f(0);
  for (const Task& t : tasks_) {
    if (!theta || t.sigma + t.arrival > *theta) f = max(f, t.arrival) + t.pi;
  }
  return f;
}

const Scalar& OfmsOptTracker::completion() const {
  if (!cached_) {
    Scalar best = all_fast_;
    for (const auto& [theta, f] : by_theta_) best = min(best, max(theta, f));
    cached_ = best;
  }
  return *cached_;
}

ThresholdSolution OfmsOptTracker::solution() const {
  ThresholdSolution s;
  s.completion = completion();
  std::vector<std::pair<Scalar, std::size_t>> fast;
  for (std::size_t i = 0; i < tasks_.size(); ++i) {
    Scalar key = tasks_[i].sigma + tasks_[i].arrival;
    if (key <= s.completion) {
      s.slow_set.push_back(i);
    } else {
      fast.emplace_back(key, i);
    }
  }
  std::sort(fast.begin(), fast.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (auto& [k, i] : fast) s.fast_order.push_back(i);
  return s;
}

ThresholdSolution opt_completion_ofms(const Tap& tap) {
  OfmsOptTracker tr;
  for (const Task& t : tap) tr.add(t);
  return tr.solution();
}

}  // namespace taskforge
