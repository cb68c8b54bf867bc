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

#include "taskforge/mwf.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace taskforge {

void MwfFluid::add(std::size_t task, Scalar work, bool serial, bool background) {
  jobs_.push_back(Job{task, std::move(work), serial, background});
}

Scalar MwfFluid::remove(std::size_t task) {
  for (auto it = jobs_.begin(); it != jobs_.end(); ++it) {
    if (it->task == task) {
      Scalar r = it->remaining;
      jobs_.erase(it);
      return r;
    }
  }
  throw std::logic_error("MwfFluid::remove: unknown job");
}

void MwfFluid::set_background(std::size_t task) {
  for (auto& j : jobs_) {
    if (j.task == task) j.background = true;
  }
}

const MwfFluid::Job* MwfFluid::find(std::size_t task) const {
  for (const auto& j : jobs_) {
    if (j.task == task) return &j;
  }
  return nullptr;
}

namespace {

// foreground serial jobs, most remaining first, ties by task
std::vector<std::size_t> serial_order(const std::vector<MwfFluid::Job>& jobs) {
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    if (jobs[k].serial && !jobs[k].background) idx.push_back(k);
  }
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (jobs[a].remaining != jobs[b].remaining) return jobs[a].remaining > jobs[b].remaining;
    return jobs[a].task < jobs[b].task;
  });
  return idx;
}

}  // namespace

std::vector<MwfFluid::Rate> MwfFluid::rates() const {
  std::vector<Rate> out(jobs_.size());
  for (std::size_t k = 0; k < jobs_.size(); ++k) {
    out[k] = Rate{jobs_[k].task, Scalar(0), jobs_[k].serial, jobs_[k].background};
  }
  Scalar cap(p_);
  auto order = serial_order(jobs_);
  for (std::size_t a = 0; a < order.size();) {
    std::size_t b = a;
    while (b < order.size() && jobs_[order[b]].remaining == jobs_[order[a]].remaining) ++b;
    const long g = static_cast<long>(b - a);
    Scalar share(0);
    if (cap >= Scalar(g)) {
      share = Scalar(1);
      cap -= Scalar(g);
    } else if (cap.sign() > 0) {
      share = cap / Scalar(g);
      cap = Scalar(0);
    }
    for (std::size_t k = a; k < b; ++k) out[order[k]].rate = share;
    a = b;
  }
  if (cap.sign() <= 0) return out;
  // lowest-id foreground parallel job takes the rest
  std::optional<std::size_t> par;
  for (std::size_t k = 0; k < jobs_.size(); ++k) {
    if (!jobs_[k].serial && !jobs_[k].background && (!par || jobs_[k].task < jobs_[*par].task)) par = k;
  }
  if (par) {
    out[*par].rate = cap;
    return out;
  }
  std::size_t nser = 0, npar = 0;
  for (const auto& j : jobs_) {
    if (!j.background) continue;
    (j.serial ? nser : npar) += 1;
  }
  if (nser + npar == 0) return out;
  Scalar level = cap / Scalar(static_cast<long>(nser + npar));
  Scalar ser_rate = level, par_rate = level;
  if (level > Scalar(1)) {
    ser_rate = Scalar(1);
    par_rate = npar ? (cap - Scalar(static_cast<long>(nser))) / Scalar(static_cast<long>(npar)) : Scalar(0);
  }
  for (std::size_t k = 0; k < jobs_.size(); ++k) {
    if (jobs_[k].background) out[k].rate = jobs_[k].serial ? ser_rate : par_rate;
  }
  return out;
}

Scalar MwfFluid::next_event() const {
  auto r = rates();
  Scalar best = Scalar::infinity();
  for (std::size_t k = 0; k < jobs_.size(); ++k) {
    if (r[k].rate.sign() > 0 && jobs_[k].remaining.is_finite()) best = min(best, jobs_[k].remaining / r[k].rate);
  }
  auto order = serial_order(jobs_);
  for (std::size_t k = 1; k < order.size(); ++k) {
    const Job& hi = jobs_[order[k - 1]];
    const Job& lo = jobs_[order[k]];
    if (hi.remaining == lo.remaining || hi.remaining.is_infinite()) continue;
    const Scalar& rh = r[order[k - 1]].rate;
    const Scalar& rl = r[order[k]].rate;
    if (rh > rl) best = min(best, (hi.remaining - lo.remaining) / (rh - rl));
  }
  return best;
}

std::vector<MwfFluid::Rate> MwfFluid::advance(const Scalar& dt, std::vector<std::size_t>& done) {
  auto r = rates();
  if (dt.is_infinite()) throw std::logic_error("MwfFluid::advance: infinite step");
  if (dt.is_zero()) return r;
  for (std::size_t k = 0; k < jobs_.size(); ++k) {
    if (r[k].rate.sign() == 0 || jobs_[k].remaining.is_infinite()) continue;
    jobs_[k].remaining -= r[k].rate * dt;
    if (jobs_[k].remaining.sign() < 0) throw std::logic_error("MwfFluid::advance: overshoot");
  }
  std::vector<Job> keep;
  keep.reserve(jobs_.size());
  for (auto& j : jobs_) {
    if (j.remaining.is_zero()) {
      done.push_back(j.task);
    } else {
      keep.push_back(std::move(j));
    }
  }
  jobs_ = std::move(keep);
  return r;
}

void MwfFluid::run(const Scalar& duration, std::vector<std::size_t>& done) {
  Scalar left = duration;
  while (left.sign() > 0) {
    Scalar step = min(left, next_event());
    if (step.is_infinite()) break;
    advance(step, done);
    left -= step;
  }
}

MwfState most_work_first_run(const MwfState& state, long p, const Scalar& duration) {
  if (duration.sign() <= 0) throw std::invalid_argument("most_work_first_run: duration must be positive");
  MwfFluid f(p);
  std::size_t pool_id = 0;
  for (auto& [id, rem] : state.serial) {
    if (!rem.is_zero()) f.add(id, rem, true);
    pool_id = std::max(pool_id, id + 1);
  }
  if (!state.pool.is_zero()) f.add(pool_id, state.pool, false);
  std::vector<std::size_t> done;
  f.run(duration, done);
  MwfState out;
  out.pool = Scalar(0);
  for (auto& [id, rem] : state.serial) {
    const auto* j = f.find(id);
    out.serial.emplace_back(id, j ? j->remaining : Scalar(0));
  }
  if (const auto* j = f.find(pool_id)) out.pool = j->remaining;
  return out;
}

}  // namespace taskforge
