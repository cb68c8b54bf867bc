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

#include "taskforge/policies.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <set>

#include "taskforge/offline.hpp"

namespace taskforge {

namespace {

// Hands out arrivals not yet seen by the policy.
class ArrivalCursor {
 public:
  template <class F>
  void drain(const SimView& v, F&& f) {
    const auto& a = v.arrived();
    while (pos_ < a.size()) f(a[pos_++]);
  }
  void reset() { pos_ = 0; }

 private:
  std::size_t pos_ = 0;
};

class ThresholdPolicy final : public Policy {
 public:
  ThresholdPolicy(Scalar lambda, std::string name) : lambda_(std::move(lambda)), name_(std::move(name)) {}
  std::string name() const override { return name_; }
  Commitment commitment() const override { return Commitment::Instant; }
  void reset() override { cur_.reset(); }
  void decide(const SimView& v, std::vector<PolicyEvent>& out) override {
    std::optional<Scalar> c;
    cur_.drain(v, [&](std::size_t i) {
      if (!c) c = v.opt_completion();
      TaskView t = v.task(i);
      if (t.sigma() + t.arrival() > lambda_ * *c) {
        out.push_back(PolicyEvent::start_parallel(i));
      } else {
        out.push_back(PolicyEvent::start_serial(i));
      }
    });
  }

 private:
  Scalar lambda_;
  std::string name_;
  ArrivalCursor cur_;
};

// (sigma + t_i) descending, then index ascending
struct KeyOrder {
  bool operator()(const std::pair<Scalar, std::size_t>& a, const std::pair<Scalar, std::size_t>& b) const {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  }
};

class EvePolicy final : public Policy {
 public:
  explicit EvePolicy(ThresholdConstant xi) : xi_(std::move(xi)) {}
  std::string name() const override { return "eve"; }
  Commitment commitment() const override { return Commitment::Eventual; }
  void reset() override {
    cur_.reset();
    by_sigma_.clear();
    by_key_.clear();
  }
  void decide(const SimView& v, std::vector<PolicyEvent>& out) override {
    cur_.drain(v, [&](std::size_t i) {
      TaskView t = v.task(i);
      by_sigma_.emplace(t.sigma(), i);
      by_key_.emplace(t.sigma() + t.arrival(), i);
    });
    if (by_sigma_.empty()) return;
    const Scalar now = v.now();
    const Scalar c = v.opt_completion();
    std::vector<std::size_t> go;
    for (const auto& [s, i] : by_sigma_) {
      if (xi_.compare_scaled(s + now, c) > 0) break;
      go.push_back(i);
    }
    std::sort(go.begin(), go.end());
    for (std::size_t i : go) {
      TaskView t = v.task(i);
      by_sigma_.erase({t.sigma(), i});
      by_key_.erase({t.sigma() + t.arrival(), i});
      out.push_back(PolicyEvent::start_serial(i));
    }
    if (!v.fast_front() && !by_key_.empty()) {
      auto [k, i] = *by_key_.begin();
      by_key_.erase(by_key_.begin());
      by_sigma_.erase({v.task(i).sigma(), i});
      out.push_back(PolicyEvent::set_active(i));
    }
  }

 private:
  ThresholdConstant xi_;
  ArrivalCursor cur_;
  std::set<std::pair<Scalar, std::size_t>> by_sigma_;
  std::set<std::pair<Scalar, std::size_t>, KeyOrder> by_key_;
};

class NevPolicy final : public Policy {
 public:
  std::string name() const override { return "nev"; }
  Commitment commitment() const override { return Commitment::Never; }
  void reset() override {
    cur_.reset();
    done_ = 0;
    by_sigma_.clear();
    by_key_.clear();
  }
  void decide(const SimView& v, std::vector<PolicyEvent>& out) override {
    cur_.drain(v, [&](std::size_t i) {
      TaskView t = v.task(i);
      by_sigma_.emplace(t.sigma(), i);
      by_key_.emplace(t.sigma() + t.arrival(), i);
    });
    const auto& comp = v.completed();
    for (; done_ < comp.size(); ++done_) {
      TaskView t = v.task(comp[done_]);
      by_sigma_.erase({t.sigma(), t.index()});
      by_key_.erase({t.sigma() + t.arrival(), t.index()});
    }
    if (by_key_.empty()) return;
    const Scalar now = v.now();
    const Scalar bound = Scalar(3, 2) * v.opt_completion();
    std::vector<std::size_t> go;
    for (const auto& [s, i] : by_sigma_) {
      if (s + now > bound) break;
      go.push_back(i);
    }
    std::sort(go.begin(), go.end());
    for (std::size_t i : go) {
      TaskView t = v.task(i);
      by_sigma_.erase({t.sigma(), i});
      by_key_.erase({t.sigma() + t.arrival(), i});
      if (t.started) out.push_back(PolicyEvent::cancel(i));
      out.push_back(PolicyEvent::start_serial(i));
    }
    if (by_key_.empty()) return;
    std::size_t top = by_key_.begin()->second;
    if (v.fast_front() != top) out.push_back(PolicyEvent::set_active(top));
  }

 private:
  ArrivalCursor cur_;
  std::size_t done_ = 0;
  std::set<std::pair<Scalar, std::size_t>> by_sigma_;
  std::set<std::pair<Scalar, std::size_t>, KeyOrder> by_key_;
};

class TilPolicy final : public Policy {
 public:
  std::string name() const override { return "pwo-til"; }
  Commitment commitment() const override { return Commitment::Eventual; }
  bool parallel_work_oblivious() const override { return true; }
  void reset() override {
    order_.clear();
    sigma_.clear();
    next_ = 0;
    switched_ = false;
    running_.reset();
    wake_.reset();
    seen_ = 0;
  }
  void decide(const SimView& v, std::vector<PolicyEvent>& out) override {
    const auto& arr = v.arrived();
    if (arr.size() != seen_) {
      if (seen_ != 0) throw InvalidInstance("pwo-til handles a single arrival time");
      seen_ = arr.size();
      std::vector<std::pair<Scalar, std::size_t>> s;
      for (std::size_t i : arr) {
        TaskView t = v.task(i);
        if (t.arrival() != v.task(arr.front()).arrival()) throw InvalidInstance("pwo-til handles a single arrival time");
        s.emplace_back(t.sigma(), i);
      }
      std::stable_sort(s.begin(), s.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
      for (auto& [sg, i] : s) {
        order_.push_back(i);
        sigma_.push_back(sg);
      }
    }
    if (running_ && v.task(*running_).finished) running_.reset();
    wake_.reset();
    const Scalar t = v.now();
    const Scalar P(v.machine().p);
    while (!switched_ && next_ < order_.size()) {
      // the largest task always starts parallel; afterwards the rest is
      // serialized once (t + sigma_next) / (t + tail / p) has come down to 2
      if (next_ >= 1 && sigma_[next_].is_finite()) {
        Scalar tail(0);
        for (std::size_t k = next_; k < order_.size(); ++k) tail += sigma_[k];
        if (t + sigma_[next_] <= Scalar(2) * (t + tail / P)) {
          for (std::size_t k = next_; k < order_.size(); ++k) out.push_back(PolicyEvent::start_serial(order_[k]));
          switched_ = true;
          break;
        }
        if (running_) wake_ = sigma_[next_] - Scalar(2) * tail / P;
      }
      if (running_) break;
      running_ = order_[next_++];
      out.push_back(PolicyEvent::start_parallel(*running_));
    }
  }
  std::optional<Scalar> next_wakeup() const override { return wake_; }

 private:
  std::vector<std::size_t> order_;
  std::vector<Scalar> sigma_;
  std::size_t next_ = 0, seen_ = 0;
  bool switched_ = false;
  std::optional<Scalar> wake_;
  std::optional<std::size_t> running_;
};

// Inner policies see batch-relative time with every batch task arriving at 0.
class BatchView final : public SimView {
 public:
  BatchView(const SimView& outer, const std::vector<std::size_t>& batch, const std::vector<std::size_t>& done,
            const Scalar& start)
      : outer_(outer), batch_(batch), done_(done), start_(start) {}
  Scalar now() const override { return outer_.now() - start_; }
  const MachineModel& machine() const override { return outer_.machine(); }
  const std::vector<std::size_t>& arrived() const override { return batch_; }
  const std::vector<std::size_t>& completed() const override { return done_; }
  TaskView task(std::size_t i) const override {
    TaskView t = outer_.task(i);
    t.set_arrival(Scalar(0));
    return t;
  }
  std::optional<std::size_t> fast_front() const override { return outer_.fast_front(); }
  Scalar opt_completion() const override { throw std::logic_error("optimum oracle is not available inside a batch"); }

 private:
  const SimView& outer_;
  const std::vector<std::size_t>& batch_;
  const std::vector<std::size_t>& done_;
  Scalar start_;
};

class BatchPolicy final : public Policy {
 public:
  BatchPolicy(PolicyFactory f, std::string name) : factory_(std::move(f)), name_(std::move(name)) {
    auto probe = factory_();
    pwo_ = probe->parallel_work_oblivious();
  }
  std::string name() const override { return name_; }
  Commitment commitment() const override { return Commitment::Eventual; }
  bool parallel_work_oblivious() const override { return pwo_; }
  void reset() override {
    cur_.reset();
    inner_.reset();
    waiting_.clear();
    batch_.clear();
    batch_done_.clear();
    done_pos_ = 0;
  }
  void decide(const SimView& v, std::vector<PolicyEvent>& out) override {
    cur_.drain(v, [&](std::size_t i) { waiting_.push_back(i); });
    const auto& comp = v.completed();
    for (; done_pos_ < comp.size(); ++done_pos_) {
      if (in_batch_.count(comp[done_pos_])) batch_done_.push_back(comp[done_pos_]);
    }
    if (inner_ && batch_done_.size() == batch_.size()) inner_.reset();
    if (!inner_ && !waiting_.empty()) {
      batch_ = std::move(waiting_);
      waiting_.clear();
      in_batch_ = std::set<std::size_t>(batch_.begin(), batch_.end());
      batch_done_.clear();
      start_ = v.now();
      inner_ = factory_();
      inner_->reset();
    }
    if (inner_) {
      BatchView bv(v, batch_, batch_done_, start_);
      inner_->decide(bv, out);
    }
  }
  std::optional<Scalar> next_wakeup() const override {
    if (!inner_) return std::nullopt;
    auto w = inner_->next_wakeup();
    if (!w) return std::nullopt;
    return *w + start_;
  }

 private:
  PolicyFactory factory_;
  std::string name_;
  bool pwo_ = false;
  ArrivalCursor cur_;
  PolicyPtr inner_;
  std::vector<std::size_t> waiting_, batch_, batch_done_;
  std::set<std::size_t> in_batch_;
  std::size_t done_pos_ = 0;
  Scalar start_{0};
};

class SingleArrivalOptPolicy final : public Policy {
 public:
  std::string name() const override { return "single-arrival-opt"; }
  Commitment commitment() const override { return Commitment::Eventual; }
  void reset() override { done_ = false; }
  void decide(const SimView& v, std::vector<PolicyEvent>& out) override {
    if (done_ || v.arrived().empty()) return;
    done_ = true;
    std::vector<std::pair<Scalar, Scalar>> w;
    for (std::size_t i : v.arrived()) {
      TaskView t = v.task(i);
      w.emplace_back(t.sigma(), t.pi());
    }
    auto r = single_arrival_exact(w, v.machine().p);
    for (std::size_t k = 0; k < w.size(); ++k) {
      std::size_t i = v.arrived()[k];
      out.push_back(r.assignment[k] == Mode::Serial ? PolicyEvent::start_serial(i) : PolicyEvent::start_parallel(i));
    }
  }

 private:
  bool done_ = false;
};

class SqrtpPolicy final : public Policy {
 public:
  SqrtpPolicy(long p, bool background) : quota_(ceil_sqrt(p)), background_(background) {}
  std::string name() const override { return background_ ? "sqrtp-doa" : "sqrtp-doa:background=0"; }
  Commitment commitment() const override { return Commitment::Instant; }
  bool parallel_work_oblivious() const override { return true; }
  bool wants_opt_idle_signal() const override { return background_; }
  void reset() override {
    cur_.reset();
    counts_.clear();
    idle_seen_ = 0;
  }
  void decide(const SimView& v, std::vector<PolicyEvent>& out) override {
    const auto& arr = v.arrived();
    if (background_ && !arr.empty() && idle_seen_ != arr.size() && v.opt_completion() <= v.now()) {
      idle_seen_ = arr.size();
      for (std::size_t i : arr) {
        TaskView t = v.task(i);
        if (t.started && !t.finished && !t.background) out.push_back(PolicyEvent::set_background(i));
      }
      counts_.clear();
    }
    cur_.drain(v, [&](std::size_t i) {
      long b = sigma_bucket(v.task(i).sigma());
      long& c = counts_[b];
      if (c < quota_) {
        ++c;
        out.push_back(PolicyEvent::start_parallel(i));
      } else {
        out.push_back(PolicyEvent::start_serial(i));
      }
    });
  }

 private:
  long quota_;
  bool background_;
  ArrivalCursor cur_;
  std::map<long, long> counts_;
  std::size_t idle_seen_ = 0;
};

class FixedPolicy final : public Policy {
 public:
  FixedPolicy(std::string name, std::optional<Mode> mode) : name_(std::move(name)), mode_(mode) {}
  std::string name() const override { return name_; }
  Commitment commitment() const override { return mode_ ? Commitment::Instant : Commitment::Eventual; }
  void reset() override { cur_.reset(); }
  void decide(const SimView& v, std::vector<PolicyEvent>& out) override {
    if (!mode_) return;
    cur_.drain(v, [&](std::size_t i) {
      out.push_back(*mode_ == Mode::Serial ? PolicyEvent::start_serial(i) : PolicyEvent::start_parallel(i));
    });
  }

 private:
  std::string name_;
  std::optional<Mode> mode_;
  ArrivalCursor cur_;
};

class ReplayPolicy final : public Policy {
 public:
  explicit ReplayPolicy(std::vector<Mode> plan) : plan_(std::move(plan)) {}
  std::string name() const override { return "replay"; }
  Commitment commitment() const override { return Commitment::Instant; }
  void reset() override { cur_.reset(); }
  void decide(const SimView& v, std::vector<PolicyEvent>& out) override {
    cur_.drain(v, [&](std::size_t i) {
      Mode m = i < plan_.size() ? plan_[i] : Mode::Parallel;
      out.push_back(m == Mode::Serial ? PolicyEvent::start_serial(i) : PolicyEvent::start_parallel(i));
    });
  }

 private:
  std::vector<Mode> plan_;
  ArrivalCursor cur_;
};

}  // namespace

long ceil_sqrt(long p) {
  long r = 0;
  while (r * r < p) ++r;
  return r;
}

long sigma_bucket(const Scalar& sigma) {
  if (sigma.is_infinite()) return LONG_MAX;
  if (sigma.sign() <= 0) return LONG_MIN;
  const mpq_class& q = sigma.rational();
  long e = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) - static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2)) - 1;
  while (pow2(static_cast<int>(e)) < sigma) ++e;
  while (pow2(static_cast<int>(e - 1)) >= sigma) --e;
  return e;
}

PolicyPtr make_threshold_policy(const Scalar& lambda, std::string name) {
  if (name.empty()) name = "threshold:lambda=" + lambda.str();
  return std::make_unique<ThresholdPolicy>(lambda, std::move(name));
}

PolicyPtr policy_ins() { return make_threshold_policy(Scalar(2), "ins"); }
PolicyPtr policy_ins_spdp() { return make_threshold_policy(Scalar(2), "ins-spdp"); }
PolicyPtr policy_eve(const ThresholdConstant& xi) { return std::make_unique<EvePolicy>(xi); }
PolicyPtr policy_nev() { return std::make_unique<NevPolicy>(); }
PolicyPtr policy_pwo_til() { return std::make_unique<TilPolicy>(); }
PolicyPtr batch_transform(PolicyFactory inner, std::string name) {
  return std::make_unique<BatchPolicy>(std::move(inner), std::move(name));
}
PolicyPtr policy_pwo_batched() { return batch_transform(policy_pwo_til, "pwo-batched"); }
PolicyPtr policy_batched_opt() {
  return batch_transform([] { return PolicyPtr(std::make_unique<SingleArrivalOptPolicy>()); }, "batched-opt");
}
PolicyPtr policy_sqrtp_doa(long p, bool background) { return std::make_unique<SqrtpPolicy>(p, background); }
PolicyPtr policy_always_fast() { return std::make_unique<FixedPolicy>("always-fast", Mode::Parallel); }
PolicyPtr policy_always_slow() { return std::make_unique<FixedPolicy>("always-slow", Mode::Serial); }
PolicyPtr policy_idle() { return std::make_unique<FixedPolicy>("idle", std::nullopt); }

PolicyPtr policy_offline_replay(const Tap& tap, const MachineModel& machine) {
  std::vector<Mode> plan(tap.size(), Mode::Parallel);
  if (machine.is_ofms()) {
    for (std::size_t i : opt_completion_ofms(tap).slow_set) plan[i] = Mode::Serial;
  } else {
    plan = brute_force_exact(tap, machine).assignment;
  }
  return std::make_unique<ReplayPolicy>(std::move(plan));
}

}  // namespace taskforge
