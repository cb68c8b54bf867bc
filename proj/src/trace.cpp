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

#include "taskforge/trace.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace taskforge {

std::string to_string(Commitment c) {
  switch (c) {
    case Commitment::Instant: return "instant";
    case Commitment::Eventual: return "eventual";
    case Commitment::Never: return "never";
  }
  return "?";
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Undecided: return "undecided";
    case Mode::Serial: return "serial";
    case Mode::Parallel: return "parallel";
  }
  return "?";
}

std::string to_string(Lane l) {
  switch (l) {
    case Lane::Slow: return "slow";
    case Lane::Fast: return "fast";
    case Lane::Serial: return "serial";
    case Lane::Parallel: return "parallel";
    case Lane::Background: return "background";
  }
  return "?";
}

std::string to_string(PolicyEvent::Kind k) {
  using K = PolicyEvent::Kind;
  switch (k) {
    case K::Assign: return "assign";
    case K::StartSerial: return "start_serial";
    case K::StartParallel: return "start_parallel";
    case K::Cancel: return "cancel";
    case K::SetActive: return "set_active";
    case K::SetFastQueue: return "set_fast_queue";
    case K::SetBackground: return "set_background";
  }
  return "?";
}

Scalar awake_time(const ScheduleTrace& trace) {
  std::vector<std::pair<Scalar, Scalar>> iv;
  for (const auto& r : trace.tasks) {
    iv.emplace_back(r.arrival, r.finish ? *r.finish : Scalar::infinity());
  }
  std::sort(iv.begin(), iv.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Scalar total(0);
  std::optional<Scalar> lo, hi;
  for (auto& [a, b] : iv) {
    if (hi && a <= *hi) {
      if (b > *hi) hi = b;
      continue;
    }
    if (hi) total += *hi - *lo;
    lo = a;
    hi = b;
  }
  if (hi) {
    if (hi->is_infinite()) return Scalar::infinity();
    total += *hi - *lo;
  }
  return total;
}

Violation validate_trace(const ScheduleTrace& trace, const Tap& tap, const MachineModel& machine) {
  if (trace.tasks.size() != tap.size()) return {"task count mismatch", std::nullopt};
  // (time, delta) pairs for the capacity sweep; ends sort before starts
  std::vector<std::pair<Scalar, std::pair<int, Scalar>>> sweep;
  std::vector<std::pair<Scalar, Scalar>> fast;
  std::map<long, std::size_t> slow_owner;
  Scalar completion(0);
  for (std::size_t i = 0; i < tap.size(); ++i) {
    const Task& task = tap[i];
    const TaskRecord& rec = trace.tasks[i];
    if (rec.id != task.id) return {"record order", task.id};
    if (!rec.finish) return {"unfinished task", task.id};
    Scalar work(0);
    std::optional<Lane> lane;
    long mach = -1;
    Scalar last_end = task.arrival;
    for (const Segment& s : rec.segments) {
      if (s.start < task.arrival) return {"early work", task.id};
      if (s.end < s.start) return {"segment order", task.id};
      if (s.rate.sign() < 0) return {"negative rate", task.id};
      if (machine.is_ofms()) {
        if (s.lane != Lane::Slow && s.lane != Lane::Fast) return {"lane mismatch", task.id};
        if (s.rate != Scalar(1)) return {"machine speed", task.id};
        if (s.lane == Lane::Fast) fast.emplace_back(s.start, s.end);
        if (s.lane == Lane::Slow) {
          auto [it, fresh] = slow_owner.emplace(s.machine, i);
          if (!fresh && it->second != i) return {"machine exclusivity", task.id};
        }
      } else {
        if (s.lane == Lane::Slow || s.lane == Lane::Fast) return {"lane mismatch", task.id};
        if (rec.decision == Mode::Serial && s.rate > Scalar(1)) return {"serial rate", task.id};
        if (s.end > s.start) {
          sweep.push_back({s.start, {1, s.rate}});
          sweep.push_back({s.end, {0, s.rate}});
        }
      }
      if (s.cancelled) continue;
      if (lane && machine.is_ofms() && (*lane != s.lane || mach != s.machine)) {
        return {"machine exclusivity", task.id};
      }
      lane = s.lane;
      mach = s.machine;
      work += s.rate * (s.end - s.start);
      if (s.end > last_end) last_end = s.end;
    }
    if (rec.decision == Mode::Undecided) return {"undecided task", task.id};
    const Scalar& need = rec.decision == Mode::Serial ? task.sigma : task.pi;
    if (lane) {
      bool ser = machine.is_ofms() ? *lane == Lane::Slow : *lane == Lane::Serial;
      bool par = machine.is_ofms() ? *lane == Lane::Fast : *lane == Lane::Parallel;
      if ((ser && rec.decision != Mode::Serial) || (par && rec.decision != Mode::Parallel)) {
        return {"decision mismatch", task.id};
      }
    }
    if (work != need) return {"work mismatch", task.id};
    if (*rec.finish != last_end) return {"finish mismatch", task.id};
    if (*rec.finish > completion) completion = *rec.finish;
  }
  if (machine.is_ofms()) {
    std::sort(fast.begin(), fast.end());
    for (std::size_t k = 1; k < fast.size(); ++k) {
      if (fast[k].first < fast[k - 1].second) return {"fast overlap", std::nullopt};
    }
  } else {
    std::sort(sweep.begin(), sweep.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first < b.first;
      return a.second.first < b.second.first;
    });
    Scalar load(0);
    const Scalar p(machine.p);
    for (auto& [t, d] : sweep) {
      if (d.first == 1) {
        load += d.second;
        if (load > p) return {"processor overcommit", std::nullopt};
      } else {
        load -= d.second;
      }
    }
  }
  if (!trace.stalled) {
    if (trace.metrics.completion_time != completion) return {"completion metric", std::nullopt};
    if (trace.metrics.awake_time != awake_time(trace)) return {"awake metric", std::nullopt};
  }
  return {};
}

}  // namespace taskforge
