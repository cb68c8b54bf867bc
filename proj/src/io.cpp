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

#include "taskforge/io.hpp"

#include <fstream>
#include <sstream>

namespace taskforge {

namespace {

// DOM builder that keeps floating literals as their source text.
class ExactSax : public nlohmann::detail::json_sax_dom_parser<Json> {
 public:
  using nlohmann::detail::json_sax_dom_parser<Json>::json_sax_dom_parser;
  bool number_float(double /*value*/, const std::string& text) {
    std::string copy = text;
    return string(copy);
  }
};

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(where + ": missing \"" + key + "\"");
  return obj.at(key);
}

}  // namespace

MachineModel parse_machine(const std::string& text) {
  if (text == "ofms") return MachineModel::ofms();
  if (text.rfind("spdp:", 0) == 0) {
    const std::string num = text.substr(5);
    if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos || num.size() > 9) {
      throw ParseError("bad processor count in regime '" + text + "'");
    }
    return MachineModel::spdp(std::stol(num));
  }
  throw ParseError("unknown regime '" + text + "' (expected ofms or spdp:P)");
}

Json parse_json_exact(const std::string& text) {
  Json out;
  ExactSax sax(out, true);
  try {
    Json::sax_parse(text, &sax);
  } catch (const nlohmann::json::parse_error& e) {
    // locate the byte offset as line:column
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("JSON syntax error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                     e.what());
  }
  return out;
}

Scalar scalar_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return Scalar::parse(j.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Scalar(j.get<long>());
  throw ParseError(where + ": expected a number, \"num/den\" or \"inf\"");
}

Json scalar_to_json(const Scalar& s) { return s.str(); }

Json value_json(const Scalar& s, int precision) {
  Json j;
  j["exact"] = s.str();
  j["decimal"] = s.decimal(precision);
  return j;
}

Instance parse_instance(const std::string& text) {
  const Json j = parse_json_exact(text);
  if (!j.is_object()) throw ParseError("instance: top level must be an object");
  Instance inst;
  if (j.contains("regime")) {
    const Json& r = j.at("regime");
    if (r.is_string()) {
      inst.machine = parse_machine(r.get<std::string>());
    } else if (r.is_object() && r.contains("spdp") && r.at("spdp").is_number_integer()) {
      inst.machine = MachineModel::spdp(r.at("spdp").get<long>());
    } else {
      throw ParseError("regime: expected \"ofms\" or {\"spdp\": p}");
    }
  }
  const Json& tasks = field(j, "tasks", "instance");
  if (!tasks.is_array()) throw ParseError("tasks: expected an array");
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const std::string where = "tasks[" + std::to_string(i) + "]";
    const Json& t = tasks[i];
    Scalar sigma = scalar_from_json(field(t, "sigma", where), where + ".sigma");
    Scalar pi = scalar_from_json(field(t, "pi", where), where + ".pi");
    Scalar arrival = t.contains("arrival") ? scalar_from_json(t.at("arrival"), where + ".arrival") : Scalar(0);
    inst.dtap.tap.add(sigma, pi, arrival);
  }
  if (j.contains("deps")) {
    inst.has_deps = true;
    const Json& deps = j.at("deps");
    if (!deps.is_array()) throw ParseError("deps: expected an array");
    for (std::size_t i = 0; i < deps.size(); ++i) {
      const Json& d = deps[i];
      const std::string where = "deps[" + std::to_string(i) + "]";
      if (!d.is_array() || d.size() != 2 || !d[0].is_number_integer() || !d[1].is_number_integer()) {
        throw ParseError(where + ": expected [u, v]");
      }
      const long u = d[0].get<long>(), v = d[1].get<long>();
      const long n = static_cast<long>(inst.dtap.tap.size());
      if (u < 1 || v < 1 || u > n || v > n) throw ParseError(where + ": task id out of range");
      inst.dtap.deps.emplace_back(static_cast<std::size_t>(u - 1), static_cast<std::size_t>(v - 1));
    }
  }
  auto rep = validate_dtap(inst.dtap);
  if (!rep.violation.ok()) throw InvalidInstance(rep.violation.str());
  return inst;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Instance read_instance_file(const std::string& path) { return parse_instance(read_file(path)); }

Json instance_to_json(const Tap& tap, const MachineModel& machine,
                      const std::vector<std::pair<std::size_t, std::size_t>>* deps) {
  Json j;
  if (machine.is_ofms()) {
    j["regime"] = "ofms";
  } else {
    j["regime"] = Json{{"spdp", machine.p}};
  }
  Json tasks = Json::array();
  for (const Task& t : tap) {
    tasks.push_back(Json{{"sigma", t.sigma.str()}, {"pi", t.pi.str()}, {"arrival", t.arrival.str()}});
  }
  j["tasks"] = tasks;
  if (deps) {
    Json d = Json::array();
    for (auto [u, v] : *deps) d.push_back(Json::array({u + 1, v + 1}));
    j["deps"] = d;
  }
  return j;
}

X3CInstance parse_x3c(const std::string& text) {
  const Json j = parse_json_exact(text);
  X3CInstance x;
  const Json& n = field(j, "n", "x3c");
  if (!n.is_number_integer()) throw ParseError("x3c.n: expected an integer");
  x.n = n.get<long>();
  const Json& edges = field(j, "edges", "x3c");
  if (!edges.is_array()) throw ParseError("x3c.edges: expected an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Json& e = edges[i];
    if (!e.is_array() || e.size() != 3) throw ParseError("x3c.edges[" + std::to_string(i) + "]: expected [i, j, k]");
    std::array<long, 3> t{};
    for (std::size_t k = 0; k < 3; ++k) {
      if (!e[k].is_number_integer()) throw ParseError("x3c.edges[" + std::to_string(i) + "]: expected integers");
      t[k] = e[k].get<long>();
    }
    x.edges.push_back(t);
  }
  validate_x3c(x);
  return x;
}

Json x3c_to_json(const X3CInstance& x) {
  Json edges = Json::array();
  for (const auto& e : x.edges) edges.push_back(Json::array({e[0], e[1], e[2]}));
  return Json{{"n", x.n}, {"edges", edges}};
}

Json trace_to_json(const ScheduleTrace& trace, int precision) {
  Json j;
  j["policy"] = trace.policy;
  j["commitment"] = trace.commitment;
  j["machine"] = trace.machine;
  j["oracle"] = trace.oracle;
  j["stalled"] = trace.stalled;
  j["metrics"] = Json{{"completion", value_json(trace.metrics.completion_time, precision)},
                      {"awake", value_json(trace.metrics.awake_time, precision)}};
  Json events = Json::array();
  for (const auto& e : trace.events) {
    Json ev{{"time", e.time.str()}, {"kind", to_string(e.event.kind)}};
    if (e.event.kind == PolicyEvent::Kind::SetFastQueue) {
      Json order = Json::array();
      for (std::size_t i : e.event.order) order.push_back(i + 1);
      ev["order"] = order;
    } else {
      ev["task"] = e.event.task + 1;
    }
    if (e.event.kind == PolicyEvent::Kind::Assign) ev["mode"] = to_string(e.event.mode);
    events.push_back(ev);
  }
  j["events"] = events;
  Json tasks = Json::array();
  for (const auto& t : trace.tasks) {
    Json segs = Json::array();
    for (const auto& s : t.segments) {
      Json sj{{"start", s.start.str()}, {"end", s.end.str()}, {"rate", s.rate.str()}, {"lane", to_string(s.lane)}};
      if (s.machine >= 0) sj["machine"] = s.machine;
      if (s.cancelled) sj["cancelled"] = true;
      segs.push_back(sj);
    }
    tasks.push_back(Json{{"id", t.id},
                         {"arrival", t.arrival.str()},
                         {"decision", to_string(t.decision)},
                         {"finish", t.finish ? Json(t.finish->str()) : Json(nullptr)},
                         {"segments", segs}});
  }
  j["tasks"] = tasks;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace taskforge
