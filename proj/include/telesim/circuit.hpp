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

#ifndef TELESIM_CIRCUIT_HPP_
#define TELESIM_CIRCUIT_HPP_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "telesim/coef_expr.hpp"
#include "telesim/elements.hpp"
#include "telesim/mode_expr.hpp"

namespace telesim {

struct SourceLoc {
  int line = 0;
  int column = 0;
};

struct ParamDecl {
  std::string name;
  bool infinite = false;
  CoefExpr value;
  SourceLoc loc;
};

struct ModeDecl {
  ModeKind kind = ModeKind::vacuum;
  std::string name;
  std::string rail;
  int bin = 0;
  // Label of the co-propagating orthogonal mode; empty means the mode's name.
  std::string perp_label;
  SourceLoc loc;

  std::string perp_id() const {
    return (perp_label.empty() ? name : perp_label) + ".perp";
  }
};

enum class Op { split, squeeze, unsqueeze, phase, homodyne, combine, displace };

inline std::string_view op_name(Op op) {
  switch (op) {
    case Op::split: return "split";
    case Op::squeeze: return "squeeze";
    case Op::unsqueeze: return "unsqueeze";
    case Op::phase: return "phase";
    case Op::homodyne: return "homodyne";
    case Op::combine: return "combine";
    case Op::displace: return "displace";
  }
  return "?";
}

struct OpSignature {
  Op op;
  int outputs;
  int inputs;  // -1 for a variadic weighted list
  std::vector<std::string_view> required;
  std::vector<std::string_view> optional;
  bool allows_match;
};

inline const std::vector<OpSignature>& op_signatures() {
  static const std::vector<OpSignature> sigs = {
      {Op::split, 2, 2, {"alpha", "phi"}, {}, true},
      {Op::squeeze, 2, 2, {"gain"}, {"phase"}, false},
      {Op::unsqueeze, 2, 2, {"gain"}, {"phase"}, false},
      {Op::phase, 1, 1, {"phi"}, {}, true},
      {Op::homodyne, 1, 2, {"xphase", "pphase"}, {}, false},
      {Op::combine, 1, -1, {}, {}, false},
      {Op::displace, 1, 2, {"gain"}, {}, false},
  };
  return sigs;
}

inline const OpSignature* find_signature(std::string_view name) {
  for (const auto& sig : op_signatures()) {
    if (op_name(sig.op) == name) return &sig;
  }
  return nullptr;
}

inline const OpSignature& signature(Op op) {
  return *find_signature(op_name(op));
}

struct Statement {
  Op op = Op::split;
  std::vector<std::string> outputs;
  std::vector<std::string> inputs;
  // Combine weights, parallel to inputs.
  std::vector<CoefExpr> weights;
  std::map<std::string, CoefExpr> args;
  Match match = Match::all;
  std::optional<int> at;
  SourceLoc loc;

  const CoefExpr& arg(const std::string& key) const {
    static const CoefExpr zero;
    auto it = args.find(key);
    return it == args.end() ? zero : it->second;
  }
};

enum class Role { transmitted, reflected, stage, auxiliary };

inline std::string_view role_name(Role r) {
  switch (r) {
    case Role::transmitted: return "transmitted";
    case Role::reflected: return "reflected";
    case Role::stage: return "stage";
    case Role::auxiliary: return "auxiliary";
  }
  return "transmitted";
}

inline bool role_from_name(std::string_view s, Role* out) {
  for (Role r : {Role::transmitted, Role::reflected, Role::stage,
                 Role::auxiliary}) {
    if (role_name(r) == s) {
      *out = r;
      return true;
    }
  }
  return false;
}

struct OutputDecl {
  std::string name;
  std::string wire;
  bool perp = false;
  Role role = Role::transmitted;
  std::optional<int> slot;
  SourceLoc loc;
};

// One term coef * mode or coef * dag(mode) of a written-out expression.
struct ExprTerm {
  CoefExpr coef;
  std::string mode;
  bool dag = false;
};

struct ExpectDecl {
  std::string name;
  std::vector<ExprTerm> terms;
  SourceLoc loc;
};

struct ProtocolCall {
  std::string name;
  std::vector<std::pair<std::string, std::string>> args;
  SourceLoc loc;
};

struct Circuit {
  std::vector<std::string> header;
  std::vector<ParamDecl> params;
  std::vector<ModeDecl> modes;
  std::vector<Statement> statements;
  std::vector<OutputDecl> outputs;
  std::vector<ExpectDecl> expects;
  std::optional<std::vector<ExprTerm>> target;
  std::optional<ProtocolCall> protocol;

  const ModeDecl* find_mode(const std::string& name) const {
    for (const auto& m : modes) {
      if (m.name == name) return &m;
    }
    return nullptr;
  }
  const ParamDecl* find_param(const std::string& name) const {
    for (const auto& p : params) {
      if (p.name == name) return &p;
    }
    return nullptr;
  }
};

inline ModeExpr terms_to_expr(const std::vector<ExprTerm>& terms) {
  ModeExpr out;
  for (const auto& t : terms) {
    if (t.dag) {
      out.add_term(t.mode, CoefExpr(0.0), t.coef);
    } else {
      out.add_term(t.mode, t.coef, CoefExpr(0.0));
    }
  }
  return out;
}

namespace detail {

inline bool same_terms(const std::vector<ExprTerm>& a,
                       const std::vector<ExprTerm>& b) {
  if (a.size() != b.size()) return false;
  for (size_t k = 0; k < a.size(); ++k) {
    if (a[k].mode != b[k].mode || a[k].dag != b[k].dag ||
        !structurally_equal(a[k].coef, b[k].coef)) {
      return false;
    }
  }
  return true;
}

inline bool same_args(const std::map<std::string, CoefExpr>& a,
                      const std::map<std::string, CoefExpr>& b) {
  if (a.size() != b.size()) return false;
  for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib) {
    if (ia->first != ib->first || !structurally_equal(ia->second, ib->second)) {
      return false;
    }
  }
  return true;
}

}  // namespace detail

// Equality of content, ignoring source locations.
inline bool structurally_equal(const Circuit& a, const Circuit& b) {
  if (a.header != b.header) return false;
  if (a.params.size() != b.params.size()) return false;
  for (size_t k = 0; k < a.params.size(); ++k) {
    const auto& p = a.params[k];
    const auto& q = b.params[k];
    if (p.name != q.name || p.infinite != q.infinite) return false;
    if (!p.infinite && !structurally_equal(p.value, q.value)) return false;
  }
  if (a.modes.size() != b.modes.size()) return false;
  for (size_t k = 0; k < a.modes.size(); ++k) {
    const auto& m = a.modes[k];
    const auto& n = b.modes[k];
    if (m.kind != n.kind || m.name != n.name || m.rail != n.rail ||
        m.bin != n.bin || m.perp_label != n.perp_label) {
      return false;
    }
  }
  if (a.statements.size() != b.statements.size()) return false;
  for (size_t k = 0; k < a.statements.size(); ++k) {
    const auto& s = a.statements[k];
    const auto& t = b.statements[k];
    if (s.op != t.op || s.outputs != t.outputs || s.inputs != t.inputs ||
        s.match != t.match || s.at != t.at ||
        !detail::same_args(s.args, t.args) ||
        s.weights.size() != t.weights.size()) {
      return false;
    }
    for (size_t w = 0; w < s.weights.size(); ++w) {
      if (!structurally_equal(s.weights[w], t.weights[w])) return false;
    }
  }
  if (a.outputs.size() != b.outputs.size()) return false;
  for (size_t k = 0; k < a.outputs.size(); ++k) {
    const auto& o = a.outputs[k];
    const auto& p = b.outputs[k];
    if (o.name != p.name || o.wire != p.wire || o.perp != p.perp ||
        o.role != p.role || o.slot != p.slot) {
      return false;
    }
  }
  if (a.expects.size() != b.expects.size()) return false;
  for (size_t k = 0; k < a.expects.size(); ++k) {
    if (a.expects[k].name != b.expects[k].name ||
        !detail::same_terms(a.expects[k].terms, b.expects[k].terms)) {
      return false;
    }
  }
  if (a.target.has_value() != b.target.has_value()) return false;
  if (a.target && !detail::same_terms(*a.target, *b.target)) return false;
  if (a.protocol.has_value() != b.protocol.has_value()) return false;
  if (a.protocol && (a.protocol->name != b.protocol->name ||
                     a.protocol->args != b.protocol->args)) {
    return false;
  }
  return true;
}

}  // namespace telesim

#endif  // TELESIM_CIRCUIT_HPP_
