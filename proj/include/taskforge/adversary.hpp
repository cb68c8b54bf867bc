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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "taskforge/engine.hpp"
#include "taskforge/policies.hpp"
#include "taskforge/threshold.hpp"

namespace taskforge {

class EmptySuite : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// (2^i, 2^{i-1}, (i-1) delta) for i = 1..n.
Tap gen_geometric(std::size_t n, const Scalar& delta);

/// tau_1 = (phi, 1, 0); when tau_1 starts on the fast machine at t0 < phi,
/// inject tau_2 = (inf, phi - t0, t0). phi is the rational midpoint of its
/// enclosure at `precision`.
class PhiAdversary final : public AdaptiveAdversary {
 public:
  explicit PhiAdversary(const Scalar& precision = pow10_neg(30));
  std::string name() const override { return "phi-adaptive"; }
  Tap initial() override;
  std::vector<Task> observe(const Scalar& now, const std::vector<PolicyEvent>& events, const SimView& view) override;
  const Scalar& phi() const { return phi_; }
  std::optional<Scalar> injected_at() const { return injected_; }

 private:
  Scalar phi_;
  std::optional<Scalar> injected_;
};

struct TapPair {
  Tap full;   // T
  Tap short_; // T'
};

/// T = ((1, 2psi, 0), (inf, 1 - psi, psi)), T' = ((1, 2psi, 0)); psi rational
/// midpoint at `precision`.
TapPair gen_canclb(const Scalar& eps, const Scalar& precision = pow10_neg(30));

/// tau_1 = (1/xi, 1/xi^2, 0), tau_2 = (1 - e^2, 1/xi - e^2, e^2), then
/// (inf, e^2, t) on the e^2 grid inside [xi + 1/xi - 2, 1 - e^2].
Tap gen_xi_nonproc(const Scalar& eps, const Scalar& precision = pow10_neg(30));

/// tau_1 = (2, 1, 0) plus (inf, e^2, t) on the e^2 grid inside
/// [e^2, grid_end]; grid_end defaults to 2 - e^2.
Tap gen_nocancel(const Scalar& eps, std::optional<Scalar> grid_end = std::nullopt);

struct SqrtpFamily {
  long p = 0;
  Tap scalable;    // pi = 1
  Tap rigid;       // pi = p
};

/// ceil(sqrt p) tasks (sigma = 1, t = 0) and the two pi realizations.
SqrtpFamily gen_sqrtp_lb(long p);

struct SqrtpMinMax {
  Scalar value;                  // min over decision vectors of the worse ratio
  std::vector<Mode> decisions;   // an argmin
  std::size_t vectors = 0;
};

/// Exhaustive over all decision vectors, each charged the worse realization
/// (completion over brute-force optimum).
SqrtpMinMax sqrtp_minmax(const SqrtpFamily& fam);

struct RatioRow {
  std::size_t instance = 0;
  Scalar completion;
  Scalar opt;
  Scalar ratio;
};

struct RatioReport {
  Scalar max_ratio;
  std::size_t witness = 0;
  std::vector<RatioRow> rows;
};

/// Completion over oracle optimum for each instance; infinity when a run
/// stalls. Throws EmptySuite for an empty instance list.
RatioReport empirical_ratio(const PolicyFactory& policy, const std::vector<Tap>& instances, const MachineModel& machine,
                            const OracleConfig& oracle = {});

Scalar ratio_of(const Scalar& completion, const Scalar& opt);

struct DoaEnumeration {
  Scalar min_expected_ratio;
  std::string decisions;  // 'S' / 'P' per position
  std::uint64_t strategies = 0;
};

/// Family T_k (sigma_i = 2^{i+1}, pi_i = 2^i, arrivals 0, k = 1..N), uniform k.
/// Shared-prefix DFS over all 2^N decision strings.
DoaEnumeration enumerate_doa_geometric(int N);
/// Independent plain loop over all strings (N <= 20).
DoaEnumeration enumerate_doa_geometric_plain(int N);
/// Expected ratio of one decision string, exact.
Scalar doa_expected_ratio(const std::string& decisions);

/// Named OFMS lower-bound instances used by the sweeps.
struct NamedTap {
  std::string name;
  Tap tap;
};
std::vector<NamedTap> adversarial_suite(const Scalar& eps = Scalar(1, 100));

}  // namespace taskforge
