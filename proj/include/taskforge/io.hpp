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

#include <string>

#include <json.hpp>

#include "taskforge/dtap.hpp"
#include "taskforge/scalar.hpp"
#include "taskforge/task.hpp"
#include "taskforge/trace.hpp"

namespace taskforge {

using Json = nlohmann::ordered_json;

/// Parsed instance file. `dtap.deps` is empty for a plain TAP.
struct Instance {
  MachineModel machine;
  Dtap dtap;
  bool has_deps = false;
};

/// "ofms" or "spdp:P".
MachineModel parse_machine(const std::string& text);

/// Reads JSON keeping every number literal exact. Syntax errors become
/// ParseError with line and column.
Json parse_json_exact(const std::string& text);

Scalar scalar_from_json(const Json& j, const std::string& where);
Json scalar_to_json(const Scalar& s);

Instance parse_instance(const std::string& text);
Instance read_instance_file(const std::string& path);
Json instance_to_json(const Tap& tap, const MachineModel& machine,
                      const std::vector<std::pair<std::size_t, std::size_t>>* deps = nullptr);

X3CInstance parse_x3c(const std::string& text);
Json x3c_to_json(const X3CInstance& x);

Json trace_to_json(const ScheduleTrace& trace, int precision = 12);

/// Exact value plus its decimal rendering.
Json value_json(const Scalar& s, int precision);

std::string read_file(const std::string& path);
/// Pretty JSON with a trailing newline.
std::string dump(const Json& j);

}  // namespace taskforge
