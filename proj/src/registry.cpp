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

#include "taskforge/registry.hpp"

#include <stdexcept>

namespace taskforge {

std::string PolicySpec::str() const {
  std::string s = name;
  char sep = ':';
  for (const auto& [k, v] : params) {
    s += sep + k + "=" + v;
    sep = ',';
  }
  return s;
}

PolicySpec parse_policy_spec(std::string_view text) {
  PolicySpec spec;
  auto colon = text.find(':');
  spec.name = std::string(text.substr(0, colon));
  if (spec.name.empty()) throw std::invalid_argument("empty policy name");
  if (colon == std::string_view::npos) return spec;
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    auto comma = rest.find(',');
    std::string_view kv = rest.substr(0, comma);
    auto eq = kv.find('=');
    if (eq == std::string_view::npos || eq == 0) throw std::invalid_argument("policy parameter needs k=v: " + std::string(kv));
    spec.params[std::string(kv.substr(0, eq))] = std::string(kv.substr(eq + 1));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return spec;
}

namespace {

void expect_params(const PolicySpec& s, std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : s.params) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw std::invalid_argument("policy " + s.name + " has no parameter '" + k + "'");
  }
}

void need(const MachineModel& m, bool ofms, const std::string& name) {
  if (m.is_ofms() != ofms) {
    throw std::invalid_argument("policy " + name + " needs the " + (ofms ? std::string("ofms") : std::string("spdp")) +
                                " regime");
  }
}

}  // namespace

PolicyPtr make_policy(const PolicySpec& s, const MachineModel& m, const Tap* tap) {
  const std::string& n = s.name;
  if (n == "ins") {
    expect_params(s, {});
    return m.is_ofms() ? policy_ins() : policy_ins_spdp();
  }
  if (n == "ins-spdp") {
    expect_params(s, {});
    need(m, false, n);
    return policy_ins_spdp();
  }
  if (n == "eve") {
    expect_params(s, {});
    need(m, true, n);
    return policy_eve();
  }
  if (n == "nev") {
    expect_params(s, {});
    need(m, true, n);
    return policy_nev();
  }
  if (n == "pwo-til") {
    expect_params(s, {});
    need(m, false, n);
    return policy_pwo_til();
  }
  if (n == "pwo-batched") {
    expect_params(s, {});
    need(m, false, n);
    return policy_pwo_batched();
  }
  if (n == "batched-opt") {
    expect_params(s, {});
    need(m, false, n);
    return policy_batched_opt();
  }
  if (n == "sqrtp-doa") {
    expect_params(s, {"background"});
    need(m, false, n);
    bool bg = true;
    if (auto it = s.params.find("background"); it != s.params.end()) bg = it->second != "0" && it->second != "false";
    return policy_sqrtp_doa(m.p, bg);
  }
  if (n == "threshold") {
    expect_params(s, {"lambda"});
    auto it = s.params.find("lambda");
    Scalar lambda = it == s.params.end() ? Scalar(2) : Scalar::parse(it->second);
    return make_threshold_policy(lambda);
  }
  if (n == "always-fast" || n == "always-parallel") {
    expect_params(s, {});
    return policy_always_fast();
  }
  if (n == "always-slow" || n == "always-serial") {
    expect_params(s, {});
    return policy_always_slow();
  }
  if (n == "idle") {
    expect_params(s, {});
    return policy_idle();
  }
  if (n == "replay") {
    expect_params(s, {});
    if (!tap) throw std::invalid_argument("replay needs the full TAP");
    return policy_offline_replay(*tap, m);
  }
  throw std::invalid_argument("unknown policy '" + n + "'");
}

PolicyPtr make_policy(std::string_view spec, const MachineModel& machine, const Tap* tap) {
  return make_policy(parse_policy_spec(spec), machine, tap);
}

std::vector<std::string> policy_names() {
  return {"ins", "ins-spdp", "eve", "nev", "pwo-til", "pwo-batched", "batched-opt", "sqrtp-doa",
          "threshold", "always-fast", "always-slow", "idle", "replay"};
}

}  // namespace taskforge
