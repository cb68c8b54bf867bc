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

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "taskforge/adversary.hpp"
#include "taskforge/dtap.hpp"
#include "taskforge/engine.hpp"
#include "taskforge/io.hpp"
#include "taskforge/offline.hpp"
#include "taskforge/ptas.hpp"
#include "taskforge/random_tap.hpp"
#include "taskforge/registry.hpp"
#include "taskforge/threshold.hpp"

using namespace taskforge;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 2;
constexpr int kPolicyViolation = 3;
constexpr int kOverflow = 4;
constexpr int kContradiction = 5;

struct Contradiction : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string out;
  int precision = 12;
};

void emit(const Common& c, const std::string& text) {
  if (c.out.empty() || c.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw ParseError("cannot write '" + c.out + "'");
  f << text;
}

OracleConfig parse_oracle(const std::string& text) {
  if (text == "exact" || text == "exact-ofms") return OracleConfig::exact();
  if (text.rfind("brute", 0) == 0) {
    if (text == "brute") return OracleConfig::brute();
    if (text.size() > 6 && text[5] == ':') {
      const std::string n = text.substr(6);
      if (n.find_first_not_of("0123456789") == std::string::npos && n.size() < 4)
        return OracleConfig::brute(std::stoul(n));
    }
  }
  if (text.rfind("ptas:", 0) == 0) {
    Scalar eps = Scalar::parse(text.substr(5));
    if (!(eps.sign() > 0 && eps <= Scalar(1))) throw ParseError("ptas eps must lie in (0, 1]");
    return OracleConfig::ptas(eps);
  }
  throw ParseError("unknown oracle '" + text + "' (expected exact, brute:N or ptas:EPS)");
}

std::string modes_string(const std::vector<Mode>& m) {
  std::string s;
  for (Mode x : m) s.push_back(x == Mode::Serial ? 'S' : x == Mode::Parallel ? 'P' : '?');
  return s;
}

Json base_config(const std::string& command, const Common& c) {
  Json j;
  j["command"] = command;
  j["precision"] = c.precision;
  return j;
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
  std::string tap, policy = "ins", regime, oracle = "exact", adversary;
};

int cmd_simulate(const SimulateArgs& a, const Common& c) {
  const OracleConfig oracle = parse_oracle(a.oracle);
  Json cfg = base_config("simulate", c);
  cfg["policy"] = parse_policy_spec(a.policy).str();
  cfg["oracle"] = oracle.str();
  SimOptions opts;
  opts.oracle = oracle;
  SimResult res;
  MachineModel machine = MachineModel::ofms();
  if (!a.adversary.empty()) {
    if (a.adversary != "phi") throw ParseError("unknown adversary '" + a.adversary + "'");
    if (!a.regime.empty()) machine = parse_machine(a.regime);
    PhiAdversary adv;
    auto policy = make_policy(a.policy, machine);
    cfg["adversary"] = a.adversary;
    cfg["regime"] = machine.str();
    res = simulate(adv, *policy, machine, opts);
  } else {
    if (a.tap.empty()) throw ParseError("simulate needs --tap or --adversary");
    Instance inst = read_instance_file(a.tap);
    if (inst.has_deps) throw InvalidInstance("simulate takes a TAP without dependencies");
    machine = a.regime.empty() ? inst.machine : parse_machine(a.regime);
    auto policy = make_policy(a.policy, machine, &inst.dtap.tap);
    cfg["tap"] = a.tap;
    cfg["regime"] = machine.str();
    res = simulate(inst.dtap.tap, *policy, machine, opts);
  }
  const auto& tr = res.trace;
  std::size_t decisions = 0;
  for (const auto& t : tr.tasks)
    if (t.decision != Mode::Undecided) ++decisions;
  Json report;
  report["config"] = cfg;
  report["instance"] = instance_to_json(res.tap, machine);
  report["trace"] = trace_to_json(tr, c.precision);
  if (!c.out.empty() && c.out != "-") emit(c, dump(report));
  std::cout << "completion=" << tr.metrics.completion_time.decimal(c.precision) << " ("
            << tr.metrics.completion_time.str() << ") awake=" << tr.metrics.awake_time.decimal(c.precision)
            << " decisions=" << decisions << (tr.stalled ? " stalled" : "") << "\n";
  return kOk;
}

// ---- opt ------------------------------------------------------------------

struct OptArgs {
  std::string tap, dtap, regime, method = "auto", oracle;
  std::size_t cap = 14;
  std::string eps = "1/2";
  bool brute = false, ptas = false;
};

int cmd_opt(const OptArgs& a, const Common& c) {
  Json cfg = base_config("opt", c);
  Json result;
  std::string method = a.method;
  if (a.brute) method = "brute";
  if (a.ptas) method = "ptas";
  std::size_t cap = a.cap;
  Scalar eps = Scalar::parse(a.eps);
  if (!a.oracle.empty()) {
    OracleConfig o = parse_oracle(a.oracle);
    if (o.mode == OracleConfig::Mode::Brute) {
      method = "brute";
      cap = o.cap;
    } else if (o.mode == OracleConfig::Mode::Ptas) {
      method = "ptas";
      eps = o.eps;
    } else {
      method = "auto";
    }
  }
  if (!a.dtap.empty()) {
    Instance inst = read_instance_file(a.dtap);
    cfg["dtap"] = a.dtap;
    cfg["method"] = "brute";
    cfg["cap"] = cap;
    auto best = brute_force_dtap(inst.dtap, std::min<std::size_t>(cap, 24));
    result["value"] = value_json(best.makespan, c.precision);
    result["choice"] = modes_string(best.choice);
  } else {
    if (a.tap.empty()) throw ParseError("opt needs --tap or --dtap");
    Instance inst = read_instance_file(a.tap);
    if (inst.has_deps) throw InvalidInstance("use --dtap for instances with dependencies");
    const Tap& tap = inst.dtap.tap;
    MachineModel machine = a.regime.empty() ? inst.machine : parse_machine(a.regime);
    cfg["tap"] = a.tap;
    cfg["regime"] = machine.str();
    bool single = true;
    for (const Task& t : tap)
      if (t.arrival != tap[0].arrival) single = false;
    if (method == "auto") method = machine.is_ofms() ? "ofms" : single ? "single" : "brute";
    cfg["method"] = method;
    if (method == "ofms") {
      if (!machine.is_ofms()) throw InvalidInstance("method ofms needs the ofms regime");
      auto sol = opt_completion_ofms(tap);
      result["value"] = value_json(sol.completion, c.precision);
      Json slow = Json::array();
      for (std::size_t i : sol.slow_set) slow.push_back(i + 1);
      result["slow_set"] = slow;
    } else if (method == "single") {
      if (machine.is_ofms()) throw InvalidInstance("method single needs an spdp regime");
      auto r = single_arrival_exact(tap, machine.p);
      result["value"] = value_json(r.completion + (tap.empty() ? Scalar(0) : tap[0].arrival), c.precision);
      result["assignment"] = modes_string(r.assignment);
    } else if (method == "brute") {
      cfg["cap"] = cap;
      auto r = brute_force_exact(tap, machine, cap);
      result["value"] = value_json(r.completion, c.precision);
      result["assignment"] = modes_string(r.assignment);
      result["simulations"] = r.simulations;
    } else if (method == "ptas") {
      if (machine.is_ofms()) throw InvalidInstance("method ptas needs an spdp regime");
      cfg["eps"] = eps.str();
      auto r = ptas_offline(tap, machine.p, eps);
      result["value"] = value_json(r.completion, c.precision);
      result["assignment"] = modes_string(r.assignment);
      result["states"] = r.states;
    } else {
      throw ParseError("unknown method '" + method + "'");
    }
  }
  Json report{{"config", cfg}, {"result", result}};
  emit(c, dump(report));
  return kOk;
}

// ---- sweep ----------------------------------------------------------------

struct SweepArgs {
  std::vector<std::string> policies{"ins", "eve", "nev"};
  std::string suite = "adversarial", regime = "ofms", oracle = "exact", eps = "1/100";
  std::size_t count = 20, n = 6;
  std::uint64_t seed = 1;
};

int cmd_sweep(const SweepArgs& a, const Common& c) {
  const MachineModel machine = parse_machine(a.regime);
  const OracleConfig oracle = parse_oracle(a.oracle);
  std::vector<std::string> names;
  std::vector<Tap> taps;
  Json cfg = base_config("sweep", c);
  cfg["suite"] = a.suite;
  cfg["regime"] = machine.str();
  cfg["oracle"] = oracle.str();
  if (a.suite == "adversarial") {
    cfg["eps"] = Scalar::parse(a.eps).str();
    for (auto& nt : adversarial_suite(Scalar::parse(a.eps))) {
      names.push_back(nt.name);
      taps.push_back(nt.tap);
    }
  } else if (a.suite == "random") {
    cfg["seed"] = a.seed;
    cfg["count"] = a.count;
    cfg["n"] = a.n;
    cfg["distribution"] = kRandomDistribution;
    for (std::size_t i = 0; i < a.count; ++i) {
      names.push_back("random-" + std::to_string(i));
      taps.push_back(machine.is_ofms() ? random_tap(a.n, a.seed + i) : random_spdp_tap(a.n, machine.p, a.seed + i));
    }
  } else {
    throw ParseError("unknown suite '" + a.suite + "'");
  }
  if (taps.empty()) throw EmptySuite("sweep over an empty suite");
  Json pol = Json::array();
  for (const auto& p : a.policies) pol.push_back(parse_policy_spec(p).str());
  cfg["policies"] = pol;

  std::ostringstream csv;
  csv << "# config " << cfg.dump() << "\n";
  csv << "instance,policy,completion,opt,ratio,ratio_exact\n";
  std::vector<std::pair<std::string, Scalar>> maxima;
  std::vector<Scalar> opts(taps.size());
  for (std::size_t i = 0; i < taps.size(); ++i) opts[i] = oracle_completion(taps[i], machine, oracle);
  for (const auto& p : a.policies) {
    Scalar worst(0);
    for (std::size_t i = 0; i < taps.size(); ++i) {
      auto policy = make_policy(p, machine, &taps[i]);
      SimOptions so;
      so.oracle = oracle;
      auto res = simulate(taps[i], *policy, machine, so);
      const Scalar& comp = res.trace.metrics.completion_time;
      Scalar r = ratio_of(comp, opts[i]);
      worst = max(worst, r);
      csv << names[i] << "," << parse_policy_spec(p).str() << "," << comp.decimal(c.precision) << ","
          << opts[i].decimal(c.precision) << "," << r.decimal(c.precision) << "," << r.str() << "\n";
    }
    maxima.emplace_back(parse_policy_spec(p).str(), worst);
  }
  for (const auto& [p, r] : maxima) csv << "# max," << p << "," << r.decimal(c.precision) << "," << r.str() << "\n";
  emit(c, csv.str());
  return kOk;
}

// ---- gen ------------------------------------------------------------------

struct GenArgs {
  std::string name, eps = "1/100", delta = "1/1000000", edges, scale, head, x3c, regime = "ofms";
  std::size_t n = 5, k = 2, L = 3;
  long p = 4;
  std::uint64_t seed = 1;
  bool short_variant = false, rigid = false;
};

std::vector<std::array<long, 3>> parse_edges(const std::string& text) {
  std::vector<std::array<long, 3>> out;
  static const std::regex triple(R"(\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\))");
  std::string rest = text;
  for (std::sregex_iterator it(text.begin(), text.end(), triple), end; it != end; ++it) {
    out.push_back({std::stol((*it)[1]), std::stol((*it)[2]), std::stol((*it)[3])});
  }
  std::string stripped = std::regex_replace(text, triple, "");
  if (stripped.find_first_not_of(" ,;") != std::string::npos || out.empty()) {
    throw ParseError("edges must look like \"(1,2,4),(3,5,6)\"");
  }
  return out;
}

X3CInstance x3c_from_args(const std::string& file, const std::string& edges, std::optional<long> n) {
  if (!file.empty()) return parse_x3c(read_file(file));
  if (edges.empty()) throw ParseError("need --x3c FILE or --edges");
  X3CInstance x;
  x.edges = parse_edges(edges);
  long hi = 0;
  for (const auto& e : x.edges) hi = std::max({hi, e[0], e[1], e[2]});
  x.n = n ? *n : (hi + 2) / 3 * 3;
  validate_x3c(x);
  return x;
}

int cmd_gen(const GenArgs& a, const Common& c, std::optional<long> n_set) {
  Json cfg = base_config("gen", c);
  cfg["generator"] = a.name;
  Json inst;
  auto tap_out = [&](const Tap& t, const MachineModel& m) { inst = instance_to_json(t, m); };
  if (a.name == "geometric") {
    cfg["n"] = a.n;
    cfg["delta"] = Scalar::parse(a.delta).str();
    tap_out(gen_geometric(a.n, Scalar::parse(a.delta)), MachineModel::ofms());
  } else if (a.name == "phi") {
    Tap t;
    t.add(PhiAdversary().phi(), Scalar(1), Scalar(0));
    tap_out(t, MachineModel::ofms());
  } else if (a.name == "canclb") {
    cfg["eps"] = Scalar::parse(a.eps).str();
    cfg["short"] = a.short_variant;
    auto pr = gen_canclb(Scalar::parse(a.eps));
    tap_out(a.short_variant ? pr.short_ : pr.full, MachineModel::ofms());
  } else if (a.name == "xi-nonproc") {
    cfg["eps"] = Scalar::parse(a.eps).str();
    tap_out(gen_xi_nonproc(Scalar::parse(a.eps)), MachineModel::ofms());
  } else if (a.name == "nocancel") {
    cfg["eps"] = Scalar::parse(a.eps).str();
    tap_out(gen_nocancel(Scalar::parse(a.eps)), MachineModel::ofms());
  } else if (a.name == "sqrtp") {
    cfg["p"] = a.p;
    cfg["rigid"] = a.rigid;
    auto fam = gen_sqrtp_lb(a.p);
    tap_out(a.rigid ? fam.rigid : fam.scalable, MachineModel::spdp(a.p));
  } else if (a.name == "random") {
    cfg["n"] = a.n;
    cfg["seed"] = a.seed;
    cfg["distribution"] = kRandomDistribution;
    const MachineModel m = parse_machine(a.regime);
    tap_out(m.is_ofms() ? random_tap(a.n, a.seed) : random_spdp_tap(a.n, m.p, a.seed), m);
  } else if (a.name == "chain-dtap") {
    cfg["n"] = a.n;
    cfg["k"] = a.k;
    cfg["seed"] = a.seed;
    Dtap d = random_chain_dtap(a.n, a.k, a.seed);
    inst = instance_to_json(d.tap, MachineModel::ofms(), &d.deps);
  } else if (a.name == "x3c-gadget") {
    X3CInstance x = x3c_from_args(a.x3c, a.edges, n_set);
    GadgetParams gp;
    if (!a.scale.empty()) gp.scale = Scalar::parse(a.scale);
    if (!a.head.empty()) gp.head_sigma = Scalar::parse(a.head);
    cfg["x3c"] = x3c_to_json(x);
    if (gp.scale) cfg["scale"] = gp.scale->str();
    if (gp.head_sigma) cfg["head"] = gp.head_sigma->str();
    Dtap d = gen_x3c_gadget(x, gp);
    inst = instance_to_json(d.tap, MachineModel::ofms(), &d.deps);
  } else {
    throw ParseError("unknown generator '" + a.name + "'");
  }
  Json out;
  out["config"] = cfg;
  for (auto it = inst.begin(); it != inst.end(); ++it) out[it.key()] = it.value();
  emit(c, dump(out));
  return kOk;
}

// ---- verify-lb ------------------------------------------------------------

struct VerifyArgs {
  std::string name;
  int N = 25;
  long p = 16;
};

int cmd_verify_lb(const VerifyArgs& a, const Common& c) {
  std::ostringstream os;
  bool contradiction = false;
  Json cfg = base_config("verify-lb", c);
  cfg["family"] = a.name;
  if (a.name == "doa-geometric") {
    cfg["N"] = a.N;
    auto r = enumerate_doa_geometric(a.N);
    const bool pass = r.min_expected_ratio >= Scalar::parse("1.637");
    contradiction = !pass;
    os << "# config " << cfg.dump() << "\n";
    os << "doa-geometric N=" << a.N << ": min expected ratio >= 1.637: measured "
       << r.min_expected_ratio.decimal(c.precision) << " (" << r.min_expected_ratio.str() << ") argmin "
       << r.decisions << " " << (pass ? "PASS" : "FAIL") << "\n";
  } else if (a.name == "sqrtp") {
    cfg["p"] = a.p;
    auto fam = gen_sqrtp_lb(a.p);
    auto mm = sqrtp_minmax(fam);
    // claimed bound sqrt(p) / 2, compared exactly as value^2 >= p / 4
    const bool pass = mm.value * mm.value >= Scalar(a.p, 4);
    contradiction = !pass;
    os << "# config " << cfg.dump() << "\n";
    os << "sqrtp p=" << a.p << ": min-max ratio >= sqrt(p)/2 = " << std::sqrt(static_cast<double>(a.p)) / 2
       << ": measured " << mm.value.decimal(c.precision) << " over " << mm.vectors << " decision vectors "
       << (pass ? "PASS" : "FAIL") << "\n";
  } else if (a.name == "panel") {
    os << "# config " << cfg.dump() << "\n";
    const MachineModel m = MachineModel::ofms();
    auto check = [&](const std::string& label, const Scalar& measured, const Scalar& claim) {
      const bool pass = measured >= claim;
      if (!pass) contradiction = true;
      os << label << ": ratio >= " << claim.decimal(6) << ": measured " << measured.decimal(c.precision) << " "
         << (pass ? "PASS" : "FAIL") << "\n";
    };
    {
      auto pol = make_policy("ins", m);
      Tap t = gen_geometric(10, pow10_neg(6));
      auto r = simulate(t, *pol, m);
      check("ins geometric-10", ratio_of(r.trace.metrics.completion_time, opt_completion_ofms(t).completion),
            Scalar::parse("1.99"));
    }
    {
      auto pol = make_policy("eve", m);
      PhiAdversary adv;
      auto r = simulate(adv, *pol, m);
      Scalar ratio = ratio_of(r.trace.metrics.completion_time, opt_completion_ofms(r.tap).completion);
      check("eve phi-adaptive", ratio, adv.phi() - pow10_neg(9));
    }
    {
      auto pol = make_policy("nev", m);
      Tap t = gen_nocancel(Scalar(1, 100));
      auto r = simulate(t, *pol, m);
      check("nev nocancel", ratio_of(r.trace.metrics.completion_time, opt_completion_ofms(t).completion),
            Scalar::parse("1.45"));
    }
  } else {
    throw ParseError("unknown lower-bound family '" + a.name + "'");
  }
  emit(c, os.str());
  if (contradiction) throw Contradiction("measured bound contradicts the claim");
  return kOk;
}

// ---- dtap -----------------------------------------------------------------

struct DtapArgs {
  std::string dtap, method = "brute", eps = "1/4", x3c, edges, scale, head;
  std::size_t L = 3, cap = 7;
};

int cmd_dtap_solve(const DtapArgs& a, const Common& c) {
  Instance inst = read_instance_file(a.dtap);
  Json cfg = base_config("dtap solve", c);
  cfg["dtap"] = a.dtap;
  cfg["method"] = a.method;
  Json result;
  const Scalar eps = Scalar::parse(a.eps);
  if (a.method == "brute") {
    cfg["cap"] = a.cap;
    auto r = brute_force_dtap(inst.dtap, a.cap);
    result["makespan"] = value_json(r.makespan, c.precision);
    result["choice"] = modes_string(r.choice);
  } else if (a.method == "components" || a.method == "chains") {
    cfg["eps"] = eps.str();
    DtapScheme r;
    if (a.method == "components") {
      cfg["L"] = a.L;
      r = ptas_bounded_components(inst.dtap, a.L, eps);
    } else {
      r = dp_k_chains(inst.dtap, eps);
    }
    result["makespan"] = value_json(r.makespan, c.precision);
    result["target"] = value_json(r.target, c.precision);
    result["factor"] = value_json(r.factor, c.precision);
    result["choice"] = modes_string(r.choice);
    result["states"] = r.states;
    if (r.strategy) {
      Json iv = Json::array();
      for (std::size_t i = 0; i < r.strategy->a.size(); ++i)
        iv.push_back(Json::array({r.strategy->a[i], r.strategy->b[i]}));
      result["promises"] = iv;
      result["horizon"] = r.strategy->horizon;
    }
  } else {
    throw ParseError("unknown dtap method '" + a.method + "'");
  }
  emit(c, dump(Json{{"config", cfg}, {"result", result}}));
  return kOk;
}

int run(int argc, char** argv) {
  CLI::App app{"taskforge: schedulers, optima and lower bounds for serial/parallel task sequences"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--out", common.out, "output file (default stdout)");
  app.add_option("--precision", common.precision, "decimal digits in reports")->check(CLI::Range(0, 200));

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "run a policy on a TAP");
  s->add_option("--tap", sim.tap, "TAP file");
  s->add_option("--policy", sim.policy, "NAME[:k=v,...]");
  s->add_option("--regime", sim.regime, "ofms | spdp:P (overrides the file)");
  s->add_option("--oracle", sim.oracle, "exact | brute:N | ptas:EPS");
  s->add_option("--adversary", sim.adversary, "adaptive adversary (phi)");

  OptArgs opt;
  auto* o = app.add_subcommand("opt", "offline optimum");
  o->add_option("--tap", opt.tap, "TAP file");
  o->add_option("--dtap", opt.dtap, "DTAP file");
  o->add_option("--regime", opt.regime, "ofms | spdp:P");
  o->add_option("--method", opt.method, "auto | ofms | single | brute | ptas");
  o->add_option("--oracle", opt.oracle, "exact | brute:N | ptas:EPS");
  o->add_option("--cap", opt.cap, "brute-force task cap");
  o->add_option("--eps", opt.eps, "PTAS accuracy");
  o->add_flag("--exact-bruteforce", opt.brute, "force brute force");
  o->add_flag("--ptas", opt.ptas, "force the PTAS");

  SweepArgs sw;
  auto* w = app.add_subcommand("sweep", "empirical competitive ratios as CSV");
  w->add_option("--policy", sw.policies, "policies (repeatable)")->delimiter(';');
  w->add_option("--suite", sw.suite, "adversarial | random");
  w->add_option("--regime", sw.regime, "ofms | spdp:P");
  w->add_option("--oracle", sw.oracle, "exact | brute:N | ptas:EPS");
  w->add_option("--eps", sw.eps, "adversarial-suite eps");
  w->add_option("--count", sw.count, "random instances");
  w->add_option("--n", sw.n, "tasks per random instance");
  w->add_option("--seed", sw.seed, "first seed");

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "write a generated instance");
  g->add_option("name", gen.name, "geometric | phi | canclb | xi-nonproc | nocancel | sqrtp | random | chain-dtap | x3c-gadget")
      ->required();
  auto* gen_n = g->add_option("--n", gen.n, "task count / universe size");
  g->add_option("--k", gen.k, "chains");
  g->add_option("--p", gen.p, "processors");
  g->add_option("--eps", gen.eps, "family eps");
  g->add_option("--delta", gen.delta, "geometric arrival gap");
  g->add_option("--seed", gen.seed, "seed");
  g->add_option("--regime", gen.regime, "random: ofms | spdp:P");
  g->add_option("--edges", gen.edges, "X3C triples \"(1,2,4),...\"");
  g->add_option("--x3c", gen.x3c, "X3C instance file");
  g->add_option("--scale", gen.scale, "gadget chain scale");
  g->add_option("--head", gen.head, "gadget head serial work");
  g->add_flag("--short", gen.short_variant, "canclb: the short TAP");
  g->add_flag("--rigid", gen.rigid, "sqrtp: pi = p realization");

  VerifyArgs vf;
  auto* v = app.add_subcommand("verify-lb", "check a lower-bound construction");
  v->add_option("name", vf.name, "doa-geometric | sqrtp | panel")->required();
  v->add_option("--N", vf.N, "doa-geometric length");
  v->add_option("--p", vf.p, "processors");

  DtapArgs dt;
  auto* d = app.add_subcommand("dtap", "DTAP solvers and gadgets");
  d->require_subcommand(1);
  auto* ds = d->add_subcommand("solve", "solve a DTAP");
  ds->add_option("--dtap", dt.dtap, "DTAP file")->required();
  ds->add_option("--method", dt.method, "brute | components | chains");
  ds->add_option("--eps", dt.eps, "scheme accuracy");
  ds->add_option("--L", dt.L, "component size bound");
  ds->add_option("--cap", dt.cap, "brute-force task cap");
  auto* dg = d->add_subcommand("gadget", "X3C gadget DTAP");
  dg->add_option("--x3c", dt.x3c, "X3C instance file");
  dg->add_option("--edges", dt.edges, "X3C triples");
  dg->add_option("--scale", dt.scale, "chain scale");
  dg->add_option("--head", dt.head, "head serial work");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*s) return cmd_simulate(sim, common);
    if (*o) return cmd_opt(opt, common);
    if (*w) return cmd_sweep(sw, common);
    if (*g) return cmd_gen(gen, common, gen_n->count() ? std::optional<long>(static_cast<long>(gen.n)) : std::nullopt);
    if (*v) return cmd_verify_lb(vf, common);
    if (*ds) return cmd_dtap_solve(dt, common);
    if (*dg) {
      GenArgs ga;
      ga.name = "x3c-gadget";
      ga.x3c = dt.x3c;
      ga.edges = dt.edges;
      ga.scale = dt.scale;
      ga.head = dt.head;
      return cmd_gen(ga, common, std::nullopt);
    }
  } catch (const PolicyViolation& e) {
    std::cerr << "policy violation: " << e.what() << "\n";
    return kPolicyViolation;
  } catch (const ObservabilityViolation& e) {
    std::cerr << "policy violation: " << e.what() << "\n";
    return kPolicyViolation;
  } catch (const InstanceTooLarge& e) {
    std::cerr << "oracle overflow: " << e.what() << "\n";
    return kOverflow;
  } catch (const Contradiction& e) {
    std::cerr << "contradiction: " << e.what() << "\n";
    return kContradiction;
  } catch (const std::exception& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
