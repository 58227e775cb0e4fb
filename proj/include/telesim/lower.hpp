// Copyright 2026 The Telesim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TELESIM_LOWER_HPP_
#define TELESIM_LOWER_HPP_

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "telesim/circuit.hpp"
#include "telesim/elements.hpp"
#include "telesim/evaluator.hpp"

namespace telesim {

struct NamedOutput {
  std::string name;
  Role role = Role::transmitted;
  ModeExpr expr;
  std::string wire;
  bool perp = false;
  int emission_bin = 0;
  std::optional<int> slot;
};

struct ClassicalRecord {
  std::string name;
  ClassicalSignal signal;
  int emission_bin = 0;
};

// An element scheduled earlier than one of its inputs arrives.
struct TimingViolation {
  std::string wire;
  int scheduled_bin = 0;
  int input_bin = 0;
  SourceLoc loc;
};

struct ProtocolOutput {
  std::string protocol;
  std::vector<ModeId> inputs;
  std::vector<NamedOutput> outputs;
  std::map<std::string, ClassicalRecord> classical;
  std::map<std::string, ModeExpr> expected_limit;
  std::optional<ModeExpr> target;
  std::vector<std::string> flags;
  std::vector<TimingViolation> timing_violations;
  ParamEnv env;
  std::shared_ptr<const Circuit> circuit;

  const ModeId* find_input(const std::string& id) const {
    for (const auto& m : inputs) {
      if (m.name == id) return &m;
    }
    return nullptr;
  }
  const NamedOutput* find_output(const std::string& name) const {
    for (const auto& o : outputs) {
      if (o.name == name) return &o;
    }
    return nullptr;
  }
  const ModeExpr& output(const std::string& name) const {
    const NamedOutput* o = find_output(name);
    if (o == nullptr) throw Error("no output named '" + name + "'");
    return o->expr;
  }
  std::map<std::string, ModeExpr> by_role(Role role) const {
    std::map<std::string, ModeExpr> out;
    for (const auto& o : outputs) {
      if (o.role == role) out.emplace(o.name, o.expr);
    }
    return out;
  }
  std::map<std::string, ModeExpr> transmitted() const {
    return by_role(Role::transmitted);
  }
  std::map<std::string, ModeExpr> reflected() const {
    return by_role(Role::reflected);
  }
};

// Builds the parameter environment of a circuit, with overrides applied on
// top of the declared values.
inline ParamEnv circuit_env(const Circuit& c, const ParamEnv& overrides) {
  ParamEnv env;
  env.set_limit_scale(overrides.limit_scale());
  for (const auto& p : c.params) {
    if (p.infinite) {
      env.set_infinite(p.name);
    } else {
      env.set(p.name, p.value);
    }
  }
  for (const auto& [name, value] : overrides.values()) env.set(name, value);
  for (const auto& name : overrides.infinite_params()) env.set_infinite(name);
  return env;
}

namespace detail {

struct Wire {
  bool classical = false;
  RailState rail;
  ClassicalSignal signal;
  int bin = 0;
};

class Lowering {
 public:
  Lowering(const Circuit& c, ParamEnv env)
      : c_(c),
        env_(std::move(env)),
        finite_env_(env_.with_infinite_as(1.0)),
        ev_(env_),
        finite_ev_(finite_env_) {}

  ProtocolOutput run() {
    ProtocolOutput out;
    check_bound_params();
    for (const auto& m : c_.modes) {
      std::string perp = m.perp_id();
      out.inputs.push_back(ModeId{m.name, m.rail, m.bin, m.kind});
      out.inputs.push_back(ModeId{perp, m.rail, m.bin, m.kind});
      Wire w;
      w.rail = RailState{ModeExpr::input(m.name), ModeExpr::input(perp)};
      w.bin = m.bin;
      wires_[m.name] = std::move(w);
    }
    for (const auto& st : c_.statements) apply(st, &out);
    for (const auto& o : c_.outputs) {
      const Wire& w = wire(o.wire, o.loc);
      NamedOutput n;
      n.name = o.name;
      n.role = o.role;
      n.expr = o.perp ? w.rail.perp : w.rail.zero;
      n.wire = o.wire;
      n.perp = o.perp;
      n.emission_bin = w.bin;
      n.slot = o.slot;
      out.outputs.push_back(std::move(n));
    }
    for (const auto& e : c_.expects) {
      out.expected_limit[e.name] = terms_to_expr(e.terms);
    }
    if (c_.target) out.target = terms_to_expr(*c_.target);
    out.flags = std::vector<std::string>(flags_.begin(), flags_.end());
    out.env = env_;
    out.circuit = std::make_shared<const Circuit>(c_);
    return out;
  }

 private:
  void check_bound_params() {
    auto check = [&](const CoefExpr& e, const SourceLoc& loc) {
      std::set<std::string> names;
      e.collect_params(&names);
      for (const auto& n : names) {
        if (!env_.has(n)) {
          throw Error("unbound parameter '" + n + "'", loc.line, loc.column);
        }
      }
    };
    for (const auto& p : c_.params) {
      if (!p.infinite) check(p.value, p.loc);
    }
    for (const auto& st : c_.statements) {
      for (const auto& [k, v] : st.args) check(v, st.loc);
      for (const auto& w : st.weights) check(w, st.loc);
    }
    for (const auto& e : c_.expects) {
      for (const auto& t : e.terms) check(t.coef, e.loc);
    }
    if (c_.target) {
      for (const auto& t : *c_.target) check(t.coef, SourceLoc{});
    }
  }

  const Wire& wire(const std::string& name, const SourceLoc& loc) const {
    auto it = wires_.find(name);
    if (it == wires_.end()) {
      throw Error("undefined wire '" + name + "'", loc.line, loc.column);
    }
    return it->second;
  }

  [[noreturn]] static void fail(const Statement& st, const std::string& msg) {
    throw Error(std::string(op_name(st.op)) + ": " + msg, st.loc.line,
                st.loc.column);
  }

  cdouble value(const Statement& st, const CoefExpr& e) {
    try {
      return to_cdouble(ev_(e));
    } catch (const Error& err) {
      fail(st, err.message());
    }
  }

  double real_value(const Statement& st, const std::string& key) {
    cdouble v = value(st, st.arg(key));
    if (std::abs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v.real()))) {
      fail(st, key + " must be real");
    }
    return v.real();
  }

  void check_preconditions(const Statement& st) {
    switch (st.op) {
      case Op::split: {
        double a = real_value(st, "alpha");
        if (a < -1e-12 || a > 1.0 + 1e-12) {
          fail(st, "alpha = " + format_number(a) + " is outside [0, 1]");
        }
        // Ratios that only reach 0 or 1 in a limit are not degenerate.
        double af = to_cdouble(finite_ev_(st.arg("alpha"))).real();
        if (std::max(a, af) <= 1e-12 || std::min(a, af) >= 1.0 - 1e-12) {
          flags_.insert("degenerate beamsplitter alpha at line " +
                        std::to_string(st.loc.line));
        }
        real_value(st, "phi");
        break;
      }
      case Op::squeeze:
      case Op::unsqueeze: {
        double g = real_value(st, "gain");
        if (g < 0.0) {
          fail(st, "gain = " + format_number(g) + " is negative");
        }
        if (st.args.count("phase") > 0) real_value(st, "phase");
        break;
      }
      case Op::phase:
        real_value(st, "phi");
        break;
      case Op::homodyne: {
        double x = real_value(st, "xphase");
        double p = real_value(st, "pphase");
        const double two_pi = 2.0 * 3.14159265358979323846;
        double d = std::remainder(p - x - two_pi / 4.0, two_pi);
        if (std::abs(d) > 1e-9) {
          flags_.insert("non-canonical homodyne phases at line " +
                        std::to_string(st.loc.line));
        }
        break;
      }
      case Op::displace:
        value(st, st.arg("gain"));
        break;
      case Op::combine:
        for (const auto& w : st.weights) value(st, w);
        break;
    }
  }

  void apply(const Statement& st, ProtocolOutput* out) {
    check_preconditions(st);
    int bin = 0;
    for (const auto& in : st.inputs) bin = std::max(bin, wire(in, st.loc).bin);
    int emit = bin;
    if (st.at) {
      emit = *st.at;
      if (emit < bin) {
        out->timing_violations.push_back(
            TimingViolation{st.outputs.front(), emit, bin, st.loc});
      }
    }
    auto quantum = [&](size_t k) -> const RailState& {
      return wire(st.inputs[k], st.loc).rail;
    };
    auto define_rail = [&](const std::string& name, RailState r) {
      Wire w;
      w.rail = std::move(r);
      w.bin = emit;
      wires_[name] = std::move(w);
    };
    auto define_signal = [&](const std::string& name, ClassicalSignal s) {
      Wire w;
      w.classical = true;
      w.signal = s;
      w.bin = emit;
      wires_[name] = std::move(w);
      out->classical[name] = ClassicalRecord{name, std::move(s), emit};
    };
    switch (st.op) {
      case Op::split: {
        auto [m, p] = apply_beamsplitter(quantum(0), quantum(1),
                                         st.arg("alpha"), st.arg("phi"),
                                         st.match);
        define_rail(st.outputs[0], std::move(m));
        define_rail(st.outputs[1], std::move(p));
        break;
      }
      case Op::squeeze:
      case Op::unsqueeze: {
        CoefExpr g = st.arg("gain");
        if (st.op == Op::unsqueeze) g = -g;
        auto [a, b] =
            apply_two_mode_squeezer(quantum(0), quantum(1), g, st.arg("phase"));
        define_rail(st.outputs[0], std::move(a));
        define_rail(st.outputs[1], std::move(b));
        break;
      }
      case Op::phase:
        define_rail(st.outputs[0],
                    apply_phase_shift(quantum(0), st.arg("phi"), st.match));
        break;
      case Op::homodyne:
        define_signal(st.outputs[0],
                      dual_homodyne(quantum(0).zero, quantum(1).zero,
                                    st.arg("xphase"), st.arg("pphase")));
        break;
      case Op::combine: {
        std::vector<std::pair<CoefExpr, ClassicalSignal>> parts;
        for (size_t k = 0; k < st.inputs.size(); ++k) {
          parts.emplace_back(st.weights[k], wire(st.inputs[k], st.loc).signal);
        }
        define_signal(st.outputs[0], classical_combine(parts));
        break;
      }
      case Op::displace:
        define_rail(st.outputs[0],
                    displace(quantum(0), wire(st.inputs[1], st.loc).signal,
                             st.arg("gain")));
        break;
    }
  }

  const Circuit& c_;
  ParamEnv env_;
  ParamEnv finite_env_;
  Evaluator<hp_complex> ev_;
  Evaluator<cdouble> finite_ev_;
  std::map<std::string, Wire> wires_;
  std::set<std::string> flags_;
};

}  // namespace detail

// Lowers an expanded circuit (no protocol invocation) to its outputs.
inline ProtocolOutput evaluate_circuit(const Circuit& c,
                                       const ParamEnv& overrides = ParamEnv()) {
  if (c.protocol) {
    throw Error("protocol invocations must be expanded before evaluation",
                c.protocol->loc.line, c.protocol->loc.column);
  }
  detail::Lowering lowering(c, circuit_env(c, overrides));
  return lowering.run();
}

}  // namespace telesim

#endif  // TELESIM_LOWER_HPP_
