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

#include "taskforge/adversary.hpp"

#include <algorithm>

#include "taskforge/offline.hpp"

namespace taskforge {

Tap gen_geometric(std::size_t n, const Scalar& delta) {
  if (n < 1 || delta.sign() <= 0) throw std::invalid_argument("gen_geometric: need n >= 1 and delta > 0");
  Tap tap;
  for (std::size_t i = 1; i <= n; ++i) {
    tap.add(pow2(static_cast<int>(i)), pow2(static_cast<int>(i) - 1), Scalar(static_cast<long>(i - 1)) * delta);
  }
  return tap;
}

namespace {

Scalar constant_at(ThresholdConstant::Kind k, const Scalar& precision) {
  ThresholdConstant c = ThresholdConstant::bracket(k);
  c.refine(precision);
  return c.approx();
}

}  // namespace

PhiAdversary::PhiAdversary(const Scalar& precision) : phi_(constant_at(ThresholdConstant::Kind::Phi, precision)) {}

Tap PhiAdversary::initial() {
  injected_.reset();
  Tap t;
  t.add(phi_, Scalar(1), Scalar(0));
  return t;
}

std::vector<Task> PhiAdversary::observe(const Scalar& now, const std::vector<PolicyEvent>&, const SimView& view) {
  if (injected_ || now >= phi_) return {};
  if (view.fast_front() != std::optional<std::size_t>(0)) return {};
  injected_ = now;
  return {Task{0, Scalar::infinity(), phi_ - now, now}};
}

TapPair gen_canclb(const Scalar& /*eps*/, const Scalar& precision) {
  const Scalar psi = constant_at(ThresholdConstant::Kind::Psi, precision);
  TapPair out;
  out.full.add(Scalar(1), Scalar(2) * psi, Scalar(0));
  out.full.add(Scalar::infinity(), Scalar(1) - psi, psi);
  out.short_.add(Scalar(1), Scalar(2) * psi, Scalar(0));
  return out;
}

Tap gen_xi_nonproc(const Scalar& eps, const Scalar& precision) {
  if (eps.sign() <= 0 || eps >= Scalar(1)) throw std::invalid_argument("gen_xi_nonproc: eps in (0, 1)");
  const Scalar xi = constant_at(ThresholdConstant::Kind::Xi, precision);
  const Scalar e2 = eps * eps;
  Tap tap;
  tap.add(Scalar(1) / xi, Scalar(1) / (xi * xi), Scalar(0));
  tap.add(Scalar(1) - e2, Scalar(1) / xi - e2, e2);
  const Scalar start = xi + Scalar(1) / xi - Scalar(2);
  const Scalar end = Scalar(1) - e2;
  mpz_class k = (start / e2).ceil();
  if (k < 2) k = 2;  // keep arrivals ordered after tau_2
  for (Scalar t = Scalar::ratio(k, 1) * e2; t <= end; t += e2) tap.add(Scalar::infinity(), e2, t);
  return tap;
}

Tap gen_nocancel(const Scalar& eps, std::optional<Scalar> grid_end) {
  if (eps.sign() <= 0 || eps >= Scalar(1)) throw std::invalid_argument("gen_nocancel: eps in (0, 1)");
  const Scalar e2 = eps * eps;
  const Scalar end = grid_end ? *grid_end : Scalar(2) - e2;
  Tap tap;
  tap.add(Scalar(2), Scalar(1), Scalar(0));
  for (Scalar t = e2; t <= end; t += e2) tap.add(Scalar::infinity(), e2, t);
  return tap;
}

SqrtpFamily gen_sqrtp_lb(long p) {
  if (p < 1) throw std::invalid_argument("gen_sqrtp_lb: p >= 1");
  SqrtpFamily f;
  f.p = p;
  const long k = ceil_sqrt(p);
  for (long i = 0; i < k; ++i) {
    f.scalable.add(Scalar(1), Scalar(1), Scalar(0));
    f.rigid.add(Scalar(1), Scalar(p), Scalar(0));
  }
  return f;
}

Scalar ratio_of(const Scalar& completion, const Scalar& opt) {
  if (completion.is_infinite()) return Scalar::infinity();
  if (opt.is_zero()) return completion.is_zero() ? Scalar(1) : Scalar::infinity();
  return completion / opt;
}

SqrtpMinMax sqrtp_minmax(const SqrtpFamily& fam) {
  const MachineModel m = MachineModel::spdp(fam.p);
  const std::size_t n = fam.scalable.size();
  const Scalar optA = brute_force_exact(fam.scalable, m).completion;
  const Scalar optB = brute_force_exact(fam.rigid, m).completion;
  SqrtpMinMax out;
  out.value = Scalar::infinity();
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
    std::vector<Mode> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = (mask >> i) & 1 ? Mode::Serial : Mode::Parallel;
    Scalar ra = ratio_of(simulate_assignment_spdp(fam.scalable, d, fam.p).completion, optA);
    Scalar rb = ratio_of(simulate_assignment_spdp(fam.rigid, d, fam.p).completion, optB);
    Scalar r = max(ra, rb);
    ++out.vectors;
    if (r < out.value) {
      out.value = r;
      out.decisions = d;
    }
  }
  return out;
}

RatioReport empirical_ratio(const PolicyFactory& policy, const std::vector<Tap>& instances, const MachineModel& machine,
                            const OracleConfig& oracle) {
  if (instances.empty()) throw EmptySuite("empirical ratio over an empty suite");
  RatioReport rep;
  rep.max_ratio = Scalar(0);
  SimOptions opts;
  opts.oracle = oracle;
  for (std::size_t k = 0; k < instances.size(); ++k) {
    auto pol = policy();
    auto res = simulate(instances[k], *pol, machine, opts);
    RatioRow row;
    row.instance = k;
    row.completion = res.trace.metrics.completion_time;
    row.opt = oracle_completion(instances[k], machine, oracle);
    row.ratio = ratio_of(row.completion, row.opt);
    if (k == 0 || row.ratio > rep.max_ratio) {
      rep.max_ratio = row.ratio;
      rep.witness = k;
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

namespace {

struct DoaSearch {
  int N;
  std::uint64_t best = ~std::uint64_t(0);
  std::string best_str, cur;
  std::uint64_t leaves = 0;

  // position k is 1-based; max_s / sum_p describe the prefix d_1..d_{k-1}
  void dfs(int k, std::uint64_t max_s, std::uint64_t sum_p, std::uint64_t acc) {
    if (acc >= best) return;  // terms are positive; cannot improve
    if (k > N) {
      ++leaves;
      best = acc;
      best_str = cur;
      return;
    }
    const std::uint64_t sigma = std::uint64_t(1) << (k + 1), pi = std::uint64_t(1) << k;
    // parallel first: lexicographically smallest argmin with 'P' < 'S'
    {
      std::uint64_t c = std::max(max_s, sum_p + pi);
      cur.push_back('P');
      dfs(k + 1, max_s, sum_p + pi, acc + c * (std::uint64_t(1) << (N - k)));
      cur.pop_back();
    }
    {
      std::uint64_t ms = std::max(max_s, sigma);
      std::uint64_t c = std::max(ms, sum_p);
      cur.push_back('S');
      dfs(k + 1, ms, sum_p, acc + c * (std::uint64_t(1) << (N - k)));
      cur.pop_back();
    }
  }
};

Scalar doa_value(std::uint64_t scaled, int N) {
  return Scalar::ratio(mpz_class(static_cast<unsigned long>(scaled)),
                       mpz_class(static_cast<unsigned long>(N)) * (mpz_class(1) << N));
}

}  // namespace

DoaEnumeration enumerate_doa_geometric(int N) {
  if (N < 1 || N > 25) throw std::invalid_argument("enumerate_doa_geometric: 1 <= N <= 25");
  DoaSearch s;
  s.N = N;
  s.dfs(1, 0, 0, 0);
  DoaEnumeration out;
  out.min_expected_ratio = doa_value(s.best, N);
  out.decisions = s.best_str;
  out.strategies = std::uint64_t(1) << N;
  return out;
}

Scalar doa_expected_ratio(const std::string& d) {
  const int N = static_cast<int>(d.size());
  if (N < 1 || N > 25) throw std::invalid_argument("doa_expected_ratio: 1 <= N <= 25");
  Scalar total(0);
  Scalar max_s(0), sum_p(0);
  for (int k = 1; k <= N; ++k) {
    if (d[k - 1] == 'S') {
      max_s = max(max_s, pow2(k + 1));
    } else {
      sum_p += pow2(k);
    }
    total += max(max_s, sum_p) / pow2(k);
  }
  return total / Scalar(N);
}

DoaEnumeration enumerate_doa_geometric_plain(int N) {
  if (N < 1 || N > 20) throw std::invalid_argument("enumerate_doa_geometric_plain: 1 <= N <= 20");
  DoaEnumeration out;
  out.min_expected_ratio = Scalar::infinity();
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << N); ++mask) {
    std::string d(static_cast<std::size_t>(N), 'P');
    for (int i = 0; i < N; ++i)
      if ((mask >> i) & 1) d[static_cast<std::size_t>(i)] = 'S';
    Scalar v = doa_expected_ratio(d);
    ++out.strategies;
    if (v < out.min_expected_ratio || (v == out.min_expected_ratio && d < out.decisions)) {
      out.min_expected_ratio = v;
      out.decisions = d;
    }
  }
  return out;
}

std::vector<NamedTap> adversarial_suite(const Scalar& eps) {
  std::vector<NamedTap> out;
  out.push_back({"geometric-3", gen_geometric(3, pow10_neg(6))});
  out.push_back({"geometric-10", gen_geometric(10, pow10_neg(6))});
  const Scalar phi = constant_at(ThresholdConstant::Kind::Phi, pow10_neg(30));
  Tap single;
  single.add(phi, Scalar(1), Scalar(0));
  out.push_back({"phi-single", single});
  Tap pair = single;
  pair.add(Scalar::infinity(), phi, Scalar(0));
  out.push_back({"phi-pair", pair});
  auto cl = gen_canclb(eps);
  out.push_back({"canclb-full", cl.full});
  out.push_back({"canclb-short", cl.short_});
  out.push_back({"xi-nonproc", gen_xi_nonproc(eps)});
  out.push_back({"nocancel", gen_nocancel(eps)});
  return out;
}

}  // namespace taskforge
