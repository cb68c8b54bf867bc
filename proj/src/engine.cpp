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

#include "taskforge/engine.hpp"

#include <algorithm>
#include <list>
#include <map>
#include <queue>
#include <tuple>
#include <unordered_map>

#include "taskforge/mwf.hpp"
#include "taskforge/offline.hpp"
#include "taskforge/ptas.hpp"

namespace taskforge {

const Scalar& TaskView::pi() const {
  if (redacted_) throw ObservabilityViolation("parallel work of task " + std::to_string(id()) + " is hidden");
  return task_->pi;
}

std::string OracleConfig::str() const {
  switch (mode) {
    case Mode::Exact: return "exact";
    case Mode::Brute: return "brute:" + std::to_string(cap);
    case Mode::Ptas: return "ptas:" + eps.str();
  }
  return "?";
}

Scalar oracle_completion(const Tap& tap, const MachineModel& machine, const OracleConfig& cfg) {
  if (machine.is_ofms() && cfg.mode != OracleConfig::Mode::Brute) return opt_completion_ofms(tap).completion;
  if (cfg.mode == OracleConfig::Mode::Ptas) return ptas_offline(tap, machine.p, cfg.eps).completion;
  return brute_force_exact(tap, machine, cfg.cap).completion;
}

namespace {

struct TaskState {
  Mode mode = Mode::Undecided;
  bool arrived = false;
  bool started = false;
  bool finished = false;
  bool on_slow = false;
  bool on_fast = false;
  bool background = false;
  Scalar remaining;  // fast-list work (OFMS parallel)
  long slow_machine = -1;
};

class Engine final : public SimView {
 public:
  Engine(Tap tap, Policy& policy, const MachineModel& machine, const SimOptions& opts)
      : tasks_(tap.tasks()), machine_(machine), policy_(policy), opts_(opts), fluid_(machine.p) {
    if (auto v = validate_tap(tap); !v.ok()) throw InvalidInstance("invalid TAP: " + v.str());
    for (const Task& t : tasks_) add_record(t);
  }

  SimResult run();

  // SimView
  Scalar now() const override { return now_; }
  const MachineModel& machine() const override { return machine_; }
  const std::vector<std::size_t>& arrived() const override { return arrived_; }
  const std::vector<std::size_t>& completed() const override { return completed_; }
  TaskView task(std::size_t i) const override;
  std::optional<std::size_t> fast_front() const override {
    if (fast_.empty()) return std::nullopt;
    return fast_.front();
  }
  Scalar opt_completion() const override;

 private:
  void add_record(const Task& t) {
    TaskRecord r;
    r.id = t.id;
    r.arrival = t.arrival;
    recs_.push_back(std::move(r));
    st_.emplace_back();
  }
  void admit_due();
  void decision_point();
  void apply(const PolicyEvent& e);
  void commit_mode(std::size_t i, Mode m, bool starting);
  void start_serial(std::size_t i);
  void start_parallel(std::size_t i, bool front);
  void cancel(std::size_t i);
  bool settle_zero_work();
  void finish(std::size_t i);
  void sync_fast();
  void push_segment(std::size_t i, Segment s);
  Scalar next_internal_event() const;
  bool advance_to(const Scalar& target);
  void violation(const std::string& what, std::size_t i) const {
    throw PolicyViolation(policy_.name() + ": " + what + " (task " + std::to_string(i + 1) + ")");
  }

  std::vector<Task> tasks_;
  MachineModel machine_;
  Policy& policy_;
  SimOptions opts_;
  Scalar now_{0};
  std::size_t next_arrival_ = 0;
  std::vector<std::size_t> arrived_, completed_, pending_instant_;
  std::vector<TaskState> st_;
  std::vector<TaskRecord> recs_;
  std::vector<TraceEvent> events_;
  std::vector<std::size_t> zero_pending_;

  // OFMS
  std::list<std::size_t> fast_;
  std::unordered_map<std::size_t, std::list<std::size_t>::iterator> fast_pos_;
  std::optional<std::size_t> fast_running_;
  Scalar fast_since_{0};
  using SlowEntry = std::tuple<Scalar, std::size_t, long>;
  std::priority_queue<SlowEntry, std::vector<SlowEntry>, std::greater<>> slow_heap_;
  long next_slow_ = 0;

  // SPDP
  MwfFluid fluid_;

  // oracle
  OfmsOptTracker tracker_;
  mutable std::map<std::size_t, Scalar> opt_cache_;
};

TaskView Engine::task(std::size_t i) const {
  if (i >= tasks_.size() || !st_[i].arrived) throw PolicyViolation("task " + std::to_string(i + 1) + " has not arrived");
  TaskView v(tasks_[i], tasks_[i].arrival, policy_.parallel_work_oblivious());
  const TaskState& s = st_[i];
  v.mode = s.mode;
  v.started = s.started;
  v.finished = s.finished;
  v.on_slow = s.on_slow;
  v.on_fast = s.on_fast;
  v.background = s.background;
  return v;
}

Scalar Engine::opt_completion() const {
  if (machine_.is_ofms() && opts_.oracle.mode == OracleConfig::Mode::Exact) return tracker_.completion();
  auto it = opt_cache_.find(arrived_.size());
  if (it != opt_cache_.end()) return it->second;
  std::vector<Task> prefix(tasks_.begin(), tasks_.begin() + static_cast<long>(arrived_.size()));
  Scalar c = oracle_completion(Tap(std::move(prefix)), machine_, opts_.oracle);
  opt_cache_.emplace(arrived_.size(), c);
  return c;
}

void Engine::admit_due() {
  while (next_arrival_ < tasks_.size() && tasks_[next_arrival_].arrival <= now_) {
    const std::size_t i = next_arrival_++;
    st_[i].arrived = true;
    arrived_.push_back(i);
    if (policy_.commitment() == Commitment::Instant) pending_instant_.push_back(i);
    if (machine_.is_ofms()) tracker_.add(tasks_[i]);
  }
}

void Engine::push_segment(std::size_t i, Segment s) {
  auto& segs = recs_[i].segments;
  if (!segs.empty()) {
    Segment& last = segs.back();
    if (!last.cancelled && last.lane == s.lane && last.machine == s.machine && last.rate == s.rate && last.end == s.start) {
      last.end = s.end;
      return;
    }
  }
  segs.push_back(std::move(s));
}

void Engine::commit_mode(std::size_t i, Mode m, bool starting) {
  TaskState& s = st_[i];
  const Commitment c = policy_.commitment();
  if (s.mode != Mode::Undecided && s.mode != m) {
    if (c == Commitment::Instant) violation("instant commitment changed", i);
    if (c == Commitment::Eventual && s.started) violation("eventual commitment changed after start", i);
  }
  if (starting && s.started) violation("task already started", i);
  s.mode = m;
  recs_[i].decision = m;
}

void Engine::start_serial(std::size_t i) {
  commit_mode(i, Mode::Serial, true);
  TaskState& s = st_[i];
  s.started = true;
  s.on_slow = true;
  const Task& t = tasks_[i];
  if (t.sigma.is_zero()) zero_pending_.push_back(i);
  if (machine_.is_ofms()) {
    s.slow_machine = next_slow_++;
    Scalar end = now_ + t.sigma;
    if (t.sigma.is_finite()) slow_heap_.emplace(end, i, s.slow_machine);
    recs_[i].segments.push_back(Segment{now_, end, Scalar(1), Lane::Slow, s.slow_machine, false});
  } else if (!t.sigma.is_zero()) {
    fluid_.add(i, t.sigma, true, s.background);
  }
}

void Engine::start_parallel(std::size_t i, bool front) {
  TaskState& s = st_[i];
  commit_mode(i, Mode::Parallel, true);
  s.started = true;
  s.on_fast = true;
  if (tasks_[i].pi.is_zero()) zero_pending_.push_back(i);
  if (machine_.is_ofms()) {
    s.remaining = tasks_[i].pi;
    auto it = front ? fast_.insert(fast_.begin(), i) : fast_.insert(fast_.end(), i);
    fast_pos_[i] = it;
  } else if (!tasks_[i].pi.is_zero()) {
    fluid_.add(i, tasks_[i].pi, false, s.background);
  }
}

void Engine::cancel(std::size_t i) {
  if (policy_.commitment() != Commitment::Never) violation("cancel under " + to_string(policy_.commitment()) + " commitment", i);
  TaskState& s = st_[i];
  if (!s.started) violation("cancel of a task that is not running", i);
  if (machine_.is_ofms()) {
    if (s.on_fast) {
      if (fast_running_ == i) {
        if (now_ > fast_since_) push_segment(i, Segment{fast_since_, now_, Scalar(1), Lane::Fast, -1, false});
        fast_running_.reset();
      }
      fast_.erase(fast_pos_.at(i));
      fast_pos_.erase(i);
    }
  } else if (fluid_.find(i)) {
    fluid_.remove(i);
  }
  for (auto& seg : recs_[i].segments) {
    if (seg.end > now_) seg.end = now_;
    seg.cancelled = true;
  }
  auto& segs = recs_[i].segments;
  segs.erase(std::remove_if(segs.begin(), segs.end(), [](const Segment& g) { return g.end == g.start; }), segs.end());
  s.started = s.on_slow = s.on_fast = false;
  s.slow_machine = -1;
  s.mode = Mode::Undecided;
  recs_[i].decision = Mode::Undecided;
}

void Engine::apply(const PolicyEvent& e) {
  using K = PolicyEvent::Kind;
  if (e.kind == K::SetFastQueue) {
    if (!machine_.is_ofms()) throw PolicyViolation(policy_.name() + ": fast queue outside OFMS");
    for (auto it = e.order.rbegin(); it != e.order.rend(); ++it) {
      apply(PolicyEvent::set_active(*it));
    }
    return;
  }
  const std::size_t i = e.task;
  if (i >= tasks_.size() || !st_[i].arrived) violation("event for a task that has not arrived", i);
  if (st_[i].finished) violation("event for a finished task", i);
  TaskState& s = st_[i];
  switch (e.kind) {
    case K::Assign:
      if (e.mode == Mode::Undecided) violation("assign without a mode", i);
      commit_mode(i, e.mode, false);
      break;
    case K::StartSerial: start_serial(i); break;
    case K::StartParallel: start_parallel(i, false); break;
    case K::Cancel: cancel(i); break;
    case K::SetActive:
      if (!machine_.is_ofms()) violation("set_active outside OFMS", i);
      if (s.on_slow) violation("set_active on a slow task", i);
      if (!s.on_fast) {
        start_parallel(i, true);
      } else {
        fast_.erase(fast_pos_.at(i));
        fast_pos_[i] = fast_.insert(fast_.begin(), i);
      }
      break;
    case K::SetBackground:
      if (machine_.is_ofms()) violation("background outside SPDP", i);
      if (!s.started) violation("background for a task that is not running", i);
      s.background = true;
      fluid_.set_background(i);
      break;
    case K::SetFastQueue: break;
  }
}

void Engine::finish(std::size_t i) {
  TaskState& s = st_[i];
  s.finished = true;
  recs_[i].finish = now_;
  completed_.push_back(i);
  if (s.on_fast && machine_.is_ofms()) {
    if (fast_running_ == i) {
      if (now_ > fast_since_) push_segment(i, Segment{fast_since_, now_, Scalar(1), Lane::Fast, -1, false});
      fast_running_.reset();
    }
    fast_.erase(fast_pos_.at(i));
    fast_pos_.erase(i);
  }
}

// Tasks with no work left finish the moment they are launched.
bool Engine::settle_zero_work() {
  bool any = false;
  auto pending = std::move(zero_pending_);
  zero_pending_.clear();
  for (std::size_t i : pending) {
    TaskState& s = st_[i];
    if (s.finished || !s.started) continue;
    bool zero = s.mode == Mode::Serial ? tasks_[i].sigma.is_zero() : tasks_[i].pi.is_zero();
    if (zero) {
      finish(i);
      any = true;
    }
  }
  return any;
}

void Engine::sync_fast() {
  if (!machine_.is_ofms()) return;
  std::optional<std::size_t> front;
  if (!fast_.empty()) front = fast_.front();
  if (front == fast_running_) return;
  if (fast_running_ && now_ > fast_since_) {
    push_segment(*fast_running_, Segment{fast_since_, now_, Scalar(1), Lane::Fast, -1, false});
  }
  fast_running_ = front;
  fast_since_ = now_;
}

void Engine::decision_point() {
  std::vector<PolicyEvent> evs;
  for (std::size_t round = 0;; ++round) {
    if (round >= opts_.max_decision_rounds) throw PolicyViolation(policy_.name() + ": decision loop does not settle");
    evs.clear();
    policy_.decide(*this, evs);
    for (const auto& e : evs) {
      apply(e);
      events_.push_back(TraceEvent{now_, e});
    }
    for (std::size_t i : pending_instant_) {
      if (st_[i].mode == Mode::Undecided && !st_[i].finished) violation("instant policy left an arrival undecided", i);
    }
    pending_instant_.clear();
    bool changed = settle_zero_work();
    sync_fast();
    if (opts_.adversary) {
      auto extra = opts_.adversary->observe(now_, evs, *this);
      for (Task& t : extra) {
        const Scalar floor = tasks_.empty() ? now_ : max(now_, tasks_.back().arrival);
        if (t.arrival < floor) throw InvalidInstance("adversary injected a task into the past");
        t.id = tasks_.size() + 1;
        tasks_.push_back(t);
        add_record(tasks_.back());
      }
      if (next_arrival_ < tasks_.size() && tasks_[next_arrival_].arrival <= now_) {
        admit_due();
        changed = true;
      }
    }
    if (!changed) break;
  }
}

Scalar Engine::next_internal_event() const {
  if (!machine_.is_ofms()) return fluid_.next_event();
  Scalar best = Scalar::infinity();
  auto heap = slow_heap_;
  while (!heap.empty()) {
    auto [t, i, m] = heap.top();
    if (st_[i].on_slow && st_[i].slow_machine == m && !st_[i].finished) {
      best = t - now_;
      break;
    }
    heap.pop();
  }
  if (!fast_.empty()) best = min(best, st_[fast_.front()].remaining);
  return best;
}

// Advances toward `target`, stopping early at the first completion.
bool Engine::advance_to(const Scalar& target) {
  bool progressed = false;
  if (machine_.is_ofms()) {
    while (!slow_heap_.empty()) {
      auto [t, i, m] = slow_heap_.top();
      if (st_[i].on_slow && st_[i].slow_machine == m && !st_[i].finished) break;
      slow_heap_.pop();
    }
    Scalar stop = target;
    if (!slow_heap_.empty()) stop = min(stop, std::get<0>(slow_heap_.top()));
    if (!fast_.empty()) stop = min(stop, now_ + st_[fast_.front()].remaining);
    if (stop.is_infinite()) return false;
    if (!fast_.empty()) st_[fast_.front()].remaining -= stop - now_;
    progressed = stop > now_;
    now_ = stop;
    while (!slow_heap_.empty() && std::get<0>(slow_heap_.top()) == now_) {
      auto [t, i, m] = slow_heap_.top();
      slow_heap_.pop();
      if (st_[i].on_slow && st_[i].slow_machine == m && !st_[i].finished) {
        finish(i);
        progressed = true;
      }
    }
    if (!fast_.empty() && st_[fast_.front()].remaining.is_zero()) {
      finish(fast_.front());
      progressed = true;
    }
    sync_fast();
    return progressed;
  }
  std::vector<std::size_t> done;
  while (now_ < target) {
    Scalar step = min(target - now_, fluid_.next_event());
    if (step.is_infinite() || step.is_zero()) break;
    auto rates = fluid_.advance(step, done);
    for (const auto& r : rates) {
      if (r.rate.sign() <= 0) continue;
      Lane lane = r.background ? Lane::Background : (r.serial ? Lane::Serial : Lane::Parallel);
      push_segment(r.task, Segment{now_, now_ + step, r.rate, lane, -1, false});
    }
    now_ += step;
    progressed = true;
    if (!done.empty()) break;
  }
  std::sort(done.begin(), done.end());
  for (std::size_t i : done) finish(i);
  return progressed;
}

SimResult Engine::run() {
  policy_.reset();
  for (;;) {
    admit_due();
    if (!arrived_.empty() || next_arrival_ == tasks_.size()) decision_point();
    bool all_done = next_arrival_ == tasks_.size() && completed_.size() == tasks_.size();
    if (all_done) break;
    Scalar target = next_arrival_ < tasks_.size() ? tasks_[next_arrival_].arrival : Scalar::infinity();
    if (auto w = policy_.next_wakeup(); w && *w > now_) target = min(target, *w);
    if (policy_.wants_opt_idle_signal() && !arrived_.empty()) {
      Scalar c = opt_completion();
      if (c > now_) target = min(target, c);
    }
    if (target.is_infinite() && next_internal_event().is_infinite()) break;  // stalled
    if (target < now_) target = now_;
    advance_to(target);
  }
  sync_fast();
  SimResult res;
  ScheduleTrace& tr = res.trace;
  tr.policy = policy_.name();
  tr.commitment = to_string(policy_.commitment());
  tr.machine = machine_.str();
  tr.oracle = opts_.oracle.str();
  tr.events = std::move(events_);
  tr.tasks = std::move(recs_);
  tr.stalled = completed_.size() != tasks_.size();
  Scalar completion(0);
  for (const auto& r : tr.tasks) completion = max(completion, r.finish ? *r.finish : Scalar::infinity());
  tr.metrics.completion_time = completion;
  tr.metrics.awake_time = awake_time(tr);
  res.tap = Tap(std::move(tasks_));
  return res;
}

}  // namespace

SimResult simulate(const Tap& tap, Policy& policy, const MachineModel& machine, const SimOptions& opts) {
  Engine e(tap, policy, machine, opts);
  return e.run();
}

SimResult simulate(AdaptiveAdversary& adversary, Policy& policy, const MachineModel& machine, SimOptions opts) {
  opts.adversary = &adversary;
  Engine e(adversary.initial(), policy, machine, opts);
  return e.run();
}

}  // namespace taskforge
