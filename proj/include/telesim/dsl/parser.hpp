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

#ifndef TELESIM_DSL_PARSER_HPP_
#define TELESIM_DSL_PARSER_HPP_

#include <charconv>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "telesim/circuit.hpp"
#include "telesim/dsl/lexer.hpp"

namespace telesim::dsl {

inline bool is_reserved_word(std::string_view s) {
  static const std::set<std::string_view> words = {
      "param", "mode",  "output", "expect",   "target", "protocol",
      "pi",    "i",     "dag",    "infinity", "match",  "at"};
  Fn f;
  return words.count(s) > 0 || fn_from_name(s, &f);
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src), toks_(tokenize(src)) {}

  Circuit parse_circuit() {
    Circuit c;
    read_header(&c);
    while (true) {
      skip_newlines();
      if (peek().kind == Tok::end) break;
      parse_line(&c);
      const Token& t = peek();
      if (t.kind != Tok::newline && t.kind != Tok::end) {
        fail(t, "expected end of line, found " + describe(t));
      }
    }
    return c;
  }

  // Parses the whole input as a single expression. Identifiers are accepted
  // as parameter names without declaration.
  CoefExpr parse_standalone_expression() {
    strip_comments();
    check_params_ = false;
    skip_newlines();
    CoefExpr e = parse_expr();
    skip_newlines();
    if (peek().kind != Tok::end) {
      fail(peek(), "unexpected " + describe(peek()) + " after expression");
    }
    return e;
  }

 private:
  struct WireInfo {
    bool classical = false;
    bool consumed = false;
  };

  static constexpr int kMaxDepth = 200;

  // Token stream helpers.

  const Token& peek(size_t ahead = 0) const {
    size_t k = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[k];
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    next();
    return true;
  }
  const Token& expect(Tok kind, std::string_view what) {
    const Token& t = peek();
    if (t.kind != kind) {
      fail(t, "expected " + std::string(what) + ", found " + describe(t));
    }
    return next();
  }
  const Token& expect_word(std::string_view word) {
    const Token& t = peek();
    if (t.kind != Tok::ident || t.text != word) {
      fail(t, "expected '" + std::string(word) + "', found " + describe(t));
    }
    return next();
  }
  void skip_newlines() {
    while (peek().kind == Tok::newline) next();
  }

  [[noreturn]] static void fail(const Token& t, const std::string& msg) {
    throw Error(msg, t.line, t.column);
  }
  static std::string describe(const Token& t) {
    if (t.kind == Tok::ident || t.kind == Tok::number) {
      return std::string(token_label(t.kind)) + " '" + std::string(t.text) +
             "'";
    }
    return std::string(token_label(t.kind));
  }
  static SourceLoc loc(const Token& t) { return SourceLoc{t.line, t.column}; }

  void read_header(Circuit* c) {
    size_t k = 0;
    while (k < toks_.size()) {
      if (toks_[k].kind == Tok::comment) {
        c->header.emplace_back(toks_[k].text.substr(1));
      } else if (toks_[k].kind != Tok::newline) {
        break;
      }
      ++k;
    }
    strip_comments();
  }

  void strip_comments() {
    std::vector<Token> kept;
    kept.reserve(toks_.size());
    for (const auto& t : toks_) {
      if (t.kind != Tok::comment) kept.push_back(t);
    }
    toks_ = std::move(kept);
    pos_ = 0;
  }

  // Statements.

  void parse_line(Circuit* c) {
    const Token& t = peek();
    if (t.kind == Tok::ident) {
      if (t.text == "param") return parse_param(c);
      if (t.text == "mode") return parse_mode(c);
      if (t.text == "output") return parse_output(c);
      if (t.text == "expect") return parse_expect(c);
      if (t.text == "target") return parse_target(c);
      if (t.text == "protocol") return parse_protocol(c);
      if (peek(1).kind == Tok::equals) return parse_element(c);
    }
    if (t.kind == Tok::lparen) return parse_element(c);
    fail(t, "expected a statement, found " + describe(t));
  }

  std::string parse_new_name(std::string_view what) {
    const Token& t = expect(Tok::ident, std::string(what) + " name");
    if (is_reserved_word(t.text)) {
      fail(t, "'" + std::string(t.text) + "' is a reserved word");
    }
    return std::string(t.text);
  }

  void require_no_protocol(const Circuit& c, const Token& t) {
    if (c.protocol) {
      fail(t, "a protocol invocation must be the only element statement");
    }
  }

  void parse_param(Circuit* c) {
    const Token& kw = next();
    const Token& name_tok = peek();
    ParamDecl p;
    p.name = parse_new_name("parameter");
    p.loc = loc(kw);
    if (params_.count(p.name) > 0) {
      fail(name_tok, "parameter '" + p.name + "' is already declared");
    }
    expect(Tok::equals, "'='");
    if (peek().kind == Tok::ident && peek().text == "infinity") {
      next();
      p.infinite = true;
    } else {
      p.value = parse_expr();
    }
    params_.insert(p.name);
    c->params.push_back(std::move(p));
  }

  int parse_int(std::string_view what) {
    const Token& t = peek();
    if (t.kind != Tok::number) {
      fail(t, "expected integer " + std::string(what) + ", found " +
                  describe(t));
    }
    int value = 0;
    auto [ptr, ec] =
        std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
      fail(t, "expected integer " + std::string(what) + ", found " +
                  describe(t));
    }
    next();
    return value;
  }

  void parse_mode(Circuit* c) {
    const Token& kw = next();
    require_no_protocol(*c, kw);
    const Token& kind_tok = expect(Tok::ident, "mode kind");
    ModeDecl m;
    if (!kind_from_name(kind_tok.text, &m.kind)) {
      fail(kind_tok, "unknown mode kind '" + std::string(kind_tok.text) +
                         "' (expected vacuum, seed, signal or lo)");
    }
    const Token& name_tok = peek();
    m.name = parse_new_name("mode");
    m.loc = loc(kw);
    if (wires_.count(m.name) > 0) {
      fail(name_tok, "'" + m.name + "' is already defined");
    }
    bool have_rail = false;
    bool have_bin = false;
    while (peek().kind == Tok::ident) {
      const Token& key = next();
      expect(Tok::equals, "'='");
      if (key.text == "rail" && !have_rail) {
        m.rail = std::string(expect(Tok::ident, "rail name").text);
        have_rail = true;
      } else if (key.text == "bin" && !have_bin) {
        m.bin = parse_int("time bin");
        have_bin = true;
      } else if (key.text == "perp" && m.perp_label.empty()) {
        m.perp_label = parse_new_name("perp label");
      } else {
        fail(key, "unexpected mode attribute '" + std::string(key.text) + "'");
      }
    }
    if (!have_rail) fail(peek(), "mode '" + m.name + "' needs rail=");
    if (!have_bin) fail(peek(), "mode '" + m.name + "' needs bin=");
    std::string perp = m.perp_id();
    if (mode_ids_.count(m.name) > 0 || mode_ids_.count(perp) > 0) {
      fail(name_tok, "mode identifier for '" + m.name + "' collides with an "
                     "existing mode");
    }
    mode_ids_.insert(m.name);
    mode_ids_.insert(perp);
    wires_[m.name] = WireInfo{};
    c->modes.push_back(std::move(m));
  }

  void parse_output(Circuit* c) {
    const Token& kw = next();
    require_no_protocol(*c, kw);
    OutputDecl o;
    const Token& name_tok = peek();
    o.name = parse_new_name("output");
    o.loc = loc(kw);
    if (!outputs_.insert(o.name).second) {
      fail(name_tok, "output '" + o.name + "' is already declared");
    }
    expect(Tok::equals, "'='");
    const Token& wire_tok = expect(Tok::ident, "wire name");
    o.wire = std::string(wire_tok.text);
    auto it = wires_.find(o.wire);
    if (it == wires_.end()) {
      fail(wire_tok, "undefined wire '" + o.wire + "'");
    }
    if (it->second.classical) {
      fail(wire_tok, "output '" + o.name + "' refers to classical wire '" +
                         o.wire + "'");
    }
    if (accept(Tok::dot)) {
      expect_word("perp");
      o.perp = true;
    }
    bool have_role = false;
    while (peek().kind == Tok::ident) {
      const Token& key = next();
      expect(Tok::equals, "'='");
      if (key.text == "role" && !have_role) {
        const Token& r = expect(Tok::ident, "role");
        if (!role_from_name(r.text, &o.role)) {
          fail(r, "unknown role '" + std::string(r.text) + "'");
        }
        have_role = true;
      } else if (key.text == "slot" && !o.slot) {
        o.slot = parse_int("slot");
      } else {
        fail(key, "unexpected output attribute '" + std::string(key.text) +
                      "'");
      }
    }
    c->outputs.push_back(std::move(o));
  }

  std::string parse_mode_ref() {
    const Token& t = expect(Tok::ident, "mode name");
    std::string id(t.text);
    if (accept(Tok::dot)) {
      expect_word("perp");
      id += ".perp";
    }
    if (mode_ids_.count(id) == 0) fail(t, "unknown mode '" + id + "'");
    return id;
  }

  ExprTerm parse_term_body() {
    ExprTerm term;
    term.coef = CoefExpr(1.0);
    if (peek().kind == Tok::lparen) {
      next();
      term.coef = parse_expr();
      expect(Tok::rparen, "')'");
      expect(Tok::star, "'*'");
    } else if (peek().kind == Tok::number) {
      term.coef = parse_number(next());
      expect(Tok::star, "'*'");
    }
    if (peek().kind == Tok::ident && peek().text == "dag") {
      next();
      expect(Tok::lparen, "'('");
      term.mode = parse_mode_ref();
      term.dag = true;
      expect(Tok::rparen, "')'");
    } else {
      term.mode = parse_mode_ref();
    }
    return term;
  }

  std::vector<ExprTerm> parse_terms() {
    std::vector<ExprTerm> terms;
    if (peek().kind == Tok::number && peek().text == "0" &&
        (peek(1).kind == Tok::newline || peek(1).kind == Tok::end)) {
      next();
      return terms;
    }
    bool negate = false;
    if (accept(Tok::minus)) {
      negate = true;
    } else {
      accept(Tok::plus);
    }
    while (true) {
      ExprTerm t = parse_term_body();
      if (negate) t.coef = -t.coef;
      terms.push_back(std::move(t));
      if (accept(Tok::plus)) {
        negate = false;
      } else if (accept(Tok::minus)) {
        negate = true;
      } else {
        break;
      }
    }
    return terms;
  }

  void parse_expect(Circuit* c) {
    const Token& kw = next();
    require_no_protocol(*c, kw);
    ExpectDecl e;
    const Token& name_tok = expect(Tok::ident, "output name");
    e.name = std::string(name_tok.text);
    e.loc = loc(kw);
    if (outputs_.count(e.name) == 0) {
      fail(name_tok, "expect refers to undeclared output '" + e.name + "'");
    }
    if (!expects_.insert(e.name).second) {
      fail(name_tok, "duplicate expect for output '" + e.name + "'");
    }
    expect(Tok::equals, "'='");
    e.terms = parse_terms();
    c->expects.push_back(std::move(e));
  }

  void parse_target(Circuit* c) {
    const Token& kw = next();
    require_no_protocol(*c, kw);
    if (c->target) fail(kw, "target is already declared");
    expect(Tok::equals, "'='");
    c->target = parse_terms();
  }

  void parse_protocol(Circuit* c) {
    const Token& kw = next();
    if (c->protocol || !c->modes.empty() || !c->statements.empty() ||
        !c->outputs.empty() || !c->expects.empty() || c->target) {
      fail(kw, "a protocol invocation must be the only element statement");
    }
    ProtocolCall call;
    call.loc = loc(kw);
    call.name = std::string(expect(Tok::ident, "protocol name").text);
    expect(Tok::lparen, "'('");
    std::set<std::string> seen;
    if (!accept(Tok::rparen)) {
      while (true) {
        const Token& key = expect(Tok::ident, "argument name");
        if (!seen.insert(std::string(key.text)).second) {
          fail(key, "duplicate argument '" + std::string(key.text) + "'");
        }
        expect(Tok::equals, "'='");
        const Token& first = peek();
        int depth = 0;
        size_t end = first.offset;
        while (true) {
          const Token& t = peek();
          if (t.kind == Tok::newline || t.kind == Tok::end) {
            fail(t, "unterminated protocol argument list");
          }
          if (depth == 0 && (t.kind == Tok::comma || t.kind == Tok::rparen)) {
            break;
          }
          if (t.kind == Tok::lparen || t.kind == Tok::lbracket) ++depth;
          if (t.kind == Tok::rparen || t.kind == Tok::rbracket) {
            if (--depth < 0) fail(t, "unbalanced brackets");
          }
          end = t.offset + t.text.size();
          next();
        }
        if (end <= first.offset) fail(first, "empty argument value");
        call.args.emplace_back(std::string(key.text),
                               std::string(src_.substr(first.offset,
                                                       end - first.offset)));
        if (accept(Tok::rparen)) break;
        expect(Tok::comma, "',' or ')'");
      }
    }
    c->protocol = std::move(call);
  }

  const WireInfo& use_wire(const Token& t, bool classical, bool consume) {
    std::string name(t.text);
    auto it = wires_.find(name);
    if (it == wires_.end()) fail(t, "undefined wire '" + name + "'");
    if (it->second.classical != classical) {
      fail(t, "wire '" + name + "' is " +
                  (it->second.classical ? "classical" : "quantum") +
                  " but a " + (classical ? "classical" : "quantum") +
                  " wire is required here");
    }
    if (consume) {
      if (it->second.consumed) {
        fail(t, "quantum wire '" + name + "' is consumed more than once");
      }
      it->second.consumed = true;
    }
    return it->second;
  }

  void parse_element(Circuit* c) {
    const Token& first = peek();
    require_no_protocol(*c, first);
    Statement st;
    st.loc = loc(first);
    std::vector<const Token*> out_toks;
    if (accept(Tok::lparen)) {
      while (true) {
        out_toks.push_back(&expect(Tok::ident, "wire name"));
        if (accept(Tok::rparen)) break;
        expect(Tok::comma, "',' or ')'");
      }
    } else {
      out_toks.push_back(&expect(Tok::ident, "wire name"));
    }
    expect(Tok::equals, "'='");
    const Token& op_tok = expect(Tok::ident, "element name");
    const OpSignature* sig = find_signature(op_tok.text);
    if (sig == nullptr) {
      fail(op_tok, "unknown element '" + std::string(op_tok.text) + "'");
    }
    st.op = sig->op;
    if (static_cast<int>(out_toks.size()) != sig->outputs) {
      fail(first, std::string(op_name(sig->op)) + " produces " +
                      std::to_string(sig->outputs) + " wire(s), but " +
                      std::to_string(out_toks.size()) + " are bound");
    }
    expect(Tok::lparen, "'('");
    std::vector<const Token*> in_toks;
    bool done = accept(Tok::rparen);
    // Positional inputs.
    while (!done) {
      const Token& t = peek();
      bool is_kwarg = t.kind == Tok::ident && peek(1).kind == Tok::equals;
      if (is_kwarg) break;
      if (sig->op == Op::combine) {
        ExprTerm term;
        term.coef = CoefExpr(1.0);
        if (t.kind == Tok::lparen) {
          next();
          term.coef = parse_expr();
          expect(Tok::rparen, "')'");
          expect(Tok::star, "'*'");
        } else if (t.kind == Tok::number) {
          term.coef = parse_number(next());
          expect(Tok::star, "'*'");
        }
        const Token& w = expect(Tok::ident, "classical wire name");
        in_toks.push_back(&w);
        st.weights.push_back(term.coef);
      } else {
        in_toks.push_back(&expect(Tok::ident, "wire name"));
      }
      if (accept(Tok::rparen)) {
        done = true;
      } else {
        expect(Tok::comma, "',' or ')'");
      }
    }
    // Keyword arguments.
    while (!done) {
      const Token& key = expect(Tok::ident, "argument name");
      expect(Tok::equals, "'='");
      std::string k(key.text);
      if (k == "match") {
        if (!sig->allows_match) {
          fail(key, std::string(op_name(sig->op)) + " does not accept match=");
        }
        const Token& v = expect(Tok::ident, "'zero' or 'all'");
        if (v.text == "zero") {
          st.match = Match::zero;
        } else if (v.text != "all") {
          fail(v, "match must be 'zero' or 'all'");
        }
      } else if (k == "at") {
        if (st.at) fail(key, "duplicate argument 'at'");
        st.at = parse_int("time bin");
      } else {
        bool known = false;
        for (auto n : sig->required) known = known || n == k;
        for (auto n : sig->optional) known = known || n == k;
        if (!known) {
          fail(key, "unknown argument '" + k + "' for " +
                        std::string(op_name(sig->op)));
        }
        if (st.args.count(k) > 0) fail(key, "duplicate argument '" + k + "'");
        st.args.emplace(k, parse_expr());
      }
      if (accept(Tok::rparen)) break;
      expect(Tok::comma, "',' or ')'");
    }
    for (auto n : sig->required) {
      if (st.args.count(std::string(n)) == 0) {
        fail(op_tok, std::string(op_name(sig->op)) + " requires argument '" +
                         std::string(n) + "'");
      }
    }
    if (sig->inputs >= 0 && static_cast<int>(in_toks.size()) != sig->inputs) {
      fail(op_tok, std::string(op_name(sig->op)) + " takes " +
                       std::to_string(sig->inputs) + " wire input(s), got " +
                       std::to_string(in_toks.size()));
    }
    if (sig->inputs < 0 && in_toks.empty()) {
      fail(op_tok, "combine needs at least one signal");
    }
    // Resolve inputs.
    for (size_t k = 0; k < in_toks.size(); ++k) {
      bool classical = st.op == Op::combine || (st.op == Op::displace && k == 1);
      use_wire(*in_toks[k], classical, !classical);
      st.inputs.emplace_back(in_toks[k]->text);
    }
    if (st.inputs.size() == 2 && st.inputs[0] == st.inputs[1] &&
        st.op != Op::combine) {
      fail(*in_toks[1], "an element cannot take the same wire twice");
    }
    // Define outputs.
    bool classical_out = st.op == Op::homodyne || st.op == Op::combine;
    for (const Token* t : out_toks) {
      std::string name(t->text);
      if (is_reserved_word(name)) {
        fail(*t, "'" + name + "' is a reserved word");
      }
      if (wires_.count(name) > 0) {
        fail(*t, "wire '" + name + "' is already assigned");
      }
      wires_[name] = WireInfo{classical_out, false};
      st.outputs.push_back(name);
    }
    if (st.outputs.size() == 2 && st.outputs[0] == st.outputs[1]) {
      fail(*out_toks[1], "wire '" + st.outputs[1] + "' is already assigned");
    }
    c->statements.push_back(std::move(st));
  }

  // Expressions.

  CoefExpr parse_number(const Token& t) {
    double value = 0.0;
    auto [ptr, ec] =
        std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
      fail(t, "number '" + std::string(t.text) + "' is out of range");
    }
    return CoefExpr(value);
  }

  struct DepthGuard {
    int* depth;
    DepthGuard(int* d, const Token& t) : depth(d) {
      if (++*depth > kMaxDepth) {
        --*depth;
        fail(t, "expression nested too deeply");
      }
    }
    ~DepthGuard() { --*depth; }
  };

  CoefExpr parse_expr() {
    DepthGuard guard(&depth_, peek());
    CoefExpr lhs = parse_product();
    while (true) {
      if (accept(Tok::plus)) {
        lhs = lhs + parse_product();
      } else if (accept(Tok::minus)) {
        lhs = lhs - parse_product();
      } else {
        return lhs;
      }
    }
  }

  CoefExpr parse_product() {
    CoefExpr lhs = parse_unary();
    while (true) {
      if (accept(Tok::star)) {
        lhs = lhs * parse_unary();
      } else if (peek().kind == Tok::slash) {
        next();
        lhs = lhs / parse_unary();
      } else {
        return lhs;
      }
    }
  }

  CoefExpr parse_unary() {
    DepthGuard guard(&depth_, peek());
    if (accept(Tok::minus)) return -parse_unary();
    if (accept(Tok::plus)) return parse_unary();
    return parse_primary();
  }

  CoefExpr parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::number:
        return parse_number(next());
      case Tok::lparen: {
        next();
        CoefExpr e = parse_expr();
        expect(Tok::rparen, "')'");
        return e;
      }
      case Tok::ident: {
        next();
        if (t.text == "pi") return CoefExpr::pi();
        if (t.text == "i") return CoefExpr::i();
        Fn f;
        if (fn_from_name(t.text, &f)) {
          expect(Tok::lparen, "'(' after function name");
          CoefExpr arg = parse_expr();
          expect(Tok::rparen, "')'");
          return CoefExpr::call(f, arg);
        }
        std::string name(t.text);
        if (check_params_ && params_.count(name) == 0) {
          fail(t, "unknown parameter '" + name + "'");
        }
        return CoefExpr::param(name);
      }
      default:
        fail(t, "expected an expression, found " + describe(t));
    }
  }

  std::string_view src_;
  std::vector<Token> toks_;
  size_t pos_ = 0;
  int depth_ = 0;
  bool check_params_ = true;
  std::set<std::string> params_;
  std::set<std::string> mode_ids_;
  std::set<std::string> outputs_;
  std::set<std::string> expects_;
  std::map<std::string, WireInfo> wires_;
};

inline Circuit parse_circuit(std::string_view text) {
  return Parser(text).parse_circuit();
}

inline CoefExpr parse_expression(std::string_view text) {
  return Parser(text).parse_standalone_expression();
}

}  // namespace telesim::dsl

#endif  // TELESIM_DSL_PARSER_HPP_
