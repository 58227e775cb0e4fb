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

#ifndef TELESIM_DSL_SERIALIZER_HPP_
#define TELESIM_DSL_SERIALIZER_HPP_

#include <string>
#include <vector>

#include "telesim/circuit.hpp"

namespace telesim::dsl {

namespace detail {

inline std::string weighted(const CoefExpr& w, const std::string& ref) {
  if (w.is_one()) return ref;
  return "(" + to_string(w) + ")*" + ref;
}

inline std::string terms_text(const std::vector<ExprTerm>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  for (size_t k = 0; k < terms.size(); ++k) {
    if (k > 0) out += " + ";
    const auto& t = terms[k];
    out += weighted(t.coef, t.dag ? "dag(" + t.mode + ")" : t.mode);
  }
  return out;
}

inline std::string statement_text(const Statement& st) {
  std::string out;
  if (st.outputs.size() == 1) {
    out = st.outputs[0];
  } else {
    out = "(";
    for (size_t k = 0; k < st.outputs.size(); ++k) {
      if (k > 0) out += ", ";
      out += st.outputs[k];
    }
    out += ")";
  }
  out += " = ";
  out += op_name(st.op);
  out += "(";
  std::vector<std::string> parts;
  for (size_t k = 0; k < st.inputs.size(); ++k) {
    if (st.op == Op::combine) {
      parts.push_back(weighted(st.weights[k], st.inputs[k]));
    } else {
      parts.push_back(st.inputs[k]);
    }
  }
  const OpSignature& sig = signature(st.op);
  for (auto key : sig.required) {
    parts.push_back(std::string(key) + "=" +
                    to_string(st.arg(std::string(key))));
  }
  for (auto key : sig.optional) {
    auto it = st.args.find(std::string(key));
    if (it != st.args.end()) {
      parts.push_back(std::string(key) + "=" + to_string(it->second));
    }
  }
  if (st.match == Match::zero) parts.emplace_back("match=zero");
  if (st.at) parts.push_back("at=" + std::to_string(*st.at));
  for (size_t k = 0; k < parts.size(); ++k) {
    if (k > 0) out += ", ";
    out += parts[k];
  }
  out += ")";
  return out;
}

}  // namespace detail

// Canonical text form. Parsing the result yields a structurally equal
// circuit, and serializing that again reproduces the same bytes.
inline std::string serialize(const Circuit& c) {
  std::vector<std::vector<std::string>> sections;
  std::vector<std::string> lines;
  auto flush = [&]() {
    if (!lines.empty()) sections.push_back(std::move(lines));
    lines.clear();
  };

  for (const auto& h : c.header) lines.push_back("#" + h);
  flush();

  for (const auto& p : c.params) {
    lines.push_back("param " + p.name + " = " +
                    (p.infinite ? std::string("infinity") : to_string(p.value)));
  }
  flush();

  for (const auto& m : c.modes) {
    std::string line = "mode " + std::string(kind_name(m.kind)) + " " +
                       m.name + " rail=" + m.rail +
                       " bin=" + std::to_string(m.bin);
    if (!m.perp_label.empty()) line += " perp=" + m.perp_label;
    lines.push_back(std::move(line));
  }
  flush();

  if (c.protocol) {
    std::string line = "protocol " + c.protocol->name + "(";
    for (size_t k = 0; k < c.protocol->args.size(); ++k) {
      if (k > 0) line += ", ";
      line += c.protocol->args[k].first + "=" + c.protocol->args[k].second;
    }
    line += ")";
    lines.push_back(std::move(line));
    flush();
  }

  for (const auto& st : c.statements) {
    lines.push_back(detail::statement_text(st));
  }
  flush();

  for (const auto& o : c.outputs) {
    std::string line = "output " + o.name + " = " + o.wire +
                       (o.perp ? ".perp" : "") +
                       " role=" + std::string(role_name(o.role));
    if (o.slot) line += " slot=" + std::to_string(*o.slot);
    lines.push_back(std::move(line));
  }
  flush();

  for (const auto& e : c.expects) {
    lines.push_back("expect " + e.name + " = " + detail::terms_text(e.terms));
  }
  if (c.target) lines.push_back("target = " + detail::terms_text(*c.target));
  flush();

  std::string out;
  for (size_t k = 0; k < sections.size(); ++k) {
    if (k > 0) out += "\n";
    for (const auto& line : sections[k]) {
      out += line;
      out += "\n";
    }
  }
  return out;
}

}  // namespace telesim::dsl

#endif  // TELESIM_DSL_SERIALIZER_HPP_
