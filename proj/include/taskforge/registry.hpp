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

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "taskforge/policies.hpp"

namespace taskforge {

struct PolicySpec {
  std::string name;
  std::map<std::string, std::string> params;
  std::string str() const;
};

/// "NAME" or "NAME:k=v,k=v".
PolicySpec parse_policy_spec(std::string_view text);

/// Builds a policy by name. `tap` is needed only by "replay".
PolicyPtr make_policy(const PolicySpec& spec, const MachineModel& machine, const Tap* tap = nullptr);
PolicyPtr make_policy(std::string_view spec, const MachineModel& machine, const Tap* tap = nullptr);

std::vector<std::string> policy_names();

}  // namespace taskforge
