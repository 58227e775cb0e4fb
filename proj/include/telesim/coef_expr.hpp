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

#ifndef TELESIM_COEF_EXPR_HPP_
#define TELESIM_COEF_EXPR_HPP_

#include <charconv>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>

#include "telesim/scalar.hpp"

namespace telesim {

enum class Fn { cosh, sinh, tanh, sech, exp, sqrt, ln, arccosh, cos, sin, conj };

inline std::string_view fn_name(Fn f) {
  switch (f) {
    case Fn::cosh: return "cosh";
    case Fn::sinh: return "sinh";
    case Fn::tanh: return "tanh";
    case Fn::sech: return "sech";
    case Fn::exp: return "exp";
    case Fn::sqrt: return "sqrt";
    case Fn::ln: return "ln";
    case Fn::arccosh: return "arccosh";
    case Fn::cos: return "cos";
    case Fn::sin: return "sin";
    case Fn::conj: return "conj";
  }
  return "?";
}

inline bool fn_from_name(std::string_view name, Fn* out) {
  static constexpr Fn all[] = {Fn::cosh, Fn::sinh, Fn::tanh,    Fn::sech,
                               Fn::exp,  Fn::sqrt, Fn::ln,      Fn::arccosh,
                               Fn::cos,  Fn::sin,  Fn::conj};
  for (Fn f : all) {
    if (fn_name(f) == name) {
      *out = f;
      return true;
    }
  }
  return false;
}

// Immutable scalar expression over named real parameters.
class CoefExpr {
 public:
  enum class Kind { constant, param, pi, neg, add, sub, mul, div, call };

  struct Node {
    Kind kind = Kind::constant;
    double re = 0.0;
    double im = 0.0;
    std::string name;
    Fn fn = Fn::exp;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
    bool real = true;
    bool parametric = false;
  };

  CoefExpr() : CoefExpr(0.0) {}
  CoefExpr(double value) : CoefExpr(make_constant(value, 0.0)) {}
  CoefExpr(int value) : CoefExpr(static_cast<double>(value)) {}

  static CoefExpr constant(double re, double im = 0.0) {
    return CoefExpr(make_constant(re, im));
  }
  static CoefExpr param(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::param;
    n->name = std::move(name);
    n->parametric = true;
    return CoefExpr(std::move(n));
  }
  static CoefExpr pi() {
    auto n = std::make_shared<Node>();
    n->kind = Kind::pi;
    return CoefExpr(std::move(n));
  }
  static CoefExpr i() { return constant(0.0, 1.0); }

  const Node& node() const { return *node_; }
  const Node* id() const { return node_.get(); }
  std::shared_ptr<const Node> handle() const { return node_; }
  Kind kind() const { return node_->kind; }
  bool is_real() const { return node_->real; }
  bool is_parametric() const { return node_->parametric; }
  CoefExpr lhs() const { return CoefExpr(node_->lhs); }
  CoefExpr rhs() const { return CoefExpr(node_->rhs); }

  bool is_constant_value(double re, double im = 0.0) const {
    return node_->kind == Kind::constant && node_->re == re && node_->im == im;
  }
  bool is_zero() const { return is_constant_value(0.0); }
  bool is_one() const { return is_constant_value(1.0); }

  friend CoefExpr operator-(const CoefExpr& a) {
    if (a.kind() == Kind::constant) {
      return constant(-a.node_->re, -a.node_->im);
    }
    if (a.kind() == Kind::neg) return a.lhs();
    return binary(Kind::neg, a, CoefExpr());
  }
  friend CoefExpr operator+(const CoefExpr& a, const CoefExpr& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return binary(Kind::add, a, b);
  }
  friend CoefExpr operator-(const CoefExpr& a, const CoefExpr& b) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return -b;
    return binary(Kind::sub, a, b);
  }
  friend CoefExpr operator*(const CoefExpr& a, const CoefExpr& b) {
    if (a.is_zero() || b.is_zero()) return CoefExpr();
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    if (a.is_constant_value(-1.0)) return -b;
    if (b.is_constant_value(-1.0)) return -a;
    return binary(Kind::mul, a, b);
  }
  friend CoefExpr operator/(const CoefExpr& a, const CoefExpr& b) {
    if (a.is_zero() && !b.is_zero()) return CoefExpr();
    if (b.is_one()) return a;
    return binary(Kind::div, a, b);
  }
  CoefExpr& operator+=(const CoefExpr& b) { return *this = *this + b; }
  CoefExpr& operator-=(const CoefExpr& b) { return *this = *this - b; }
  CoefExpr& operator*=(const CoefExpr& b) { return *this = *this * b; }

  static CoefExpr call(Fn f, const CoefExpr& arg) {
    if (f == Fn::conj) return conjugate(arg);
    auto n = std::make_shared<Node>();
    n->kind = Kind::call;
    n->fn = f;
    n->lhs = arg.node_;
    n->real = arg.is_real();
    n->parametric = arg.is_parametric();
    return CoefExpr(std::move(n));
  }

  static CoefExpr conjugate(const CoefExpr& a) {
    if (a.is_real()) return a;
    switch (a.kind()) {
      case Kind::constant:
        return constant(a.node_->re, -a.node_->im);
      case Kind::neg:
        return -conjugate(a.lhs());
      case Kind::add:
        return conjugate(a.lhs()) + conjugate(a.rhs());
      case Kind::sub:
        return conjugate(a.lhs()) - conjugate(a.rhs());
      case Kind::mul:
        return conjugate(a.lhs()) * conjugate(a.rhs());
      case Kind::div:
        return conjugate(a.lhs()) / conjugate(a.rhs());
      case Kind::call:
        switch (a.node_->fn) {
          case Fn::sqrt:
          case Fn::ln:
          case Fn::arccosh:
            break;
          case Fn::conj:
            return a.lhs();
          default:
            return call(a.node_->fn, conjugate(a.lhs()));
        }
        break;
      default:
        break;
    }
    auto n = std::make_shared<Node>();
    n->kind = Kind::call;
    n->fn = Fn::conj;
    n->lhs = a.node_;
    n->real = false;
    n->parametric = a.is_parametric();
    return CoefExpr(std::move(n));
  }

  void collect_params(std::set<std::string>* out) const {
    collect(node_.get(), out);
  }

  friend bool structurally_equal(const CoefExpr& a, const CoefExpr& b) {
    return equal_nodes(a.node_.get(), b.node_.get());
  }

 private:
  explicit CoefExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static std::shared_ptr<const Node> make_constant(double re, double im) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::constant;
    n->re = normalize_zero(re);
    n->im = normalize_zero(im);
    n->real = n->im == 0.0;
    return n;
  }

  static CoefExpr binary(Kind k, const CoefExpr& a, const CoefExpr& b) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->lhs = a.node_;
    if (k != Kind::neg) n->rhs = b.node_;
    n->real = a.is_real() && (k == Kind::neg || b.is_real());
    n->parametric = a.is_parametric() || (k != Kind::neg && b.is_parametric());
    return CoefExpr(std::move(n));
  }

  static void collect(const Node* n, std::set<std::string>* out) {
    if (n == nullptr || !n->parametric) return;
    if (n->kind == Kind::param) out->insert(n->name);
    collect(n->lhs.get(), out);
    collect(n->rhs.get(), out);
  }

  static bool equal_nodes(const Node* a, const Node* b) {
    if (a == b) return true;
    if (a == nullptr || b == nullptr) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
      case Kind::constant:
        return a->re == b->re && a->im == b->im;
      case Kind::param:
        return a->name == b->name;
      case Kind::pi:
        return true;
      case Kind::call:
        return a->fn == b->fn && equal_nodes(a->lhs.get(), b->lhs.get());
      default:
        return equal_nodes(a->lhs.get(), b->lhs.get()) &&
               equal_nodes(a->rhs.get(), b->rhs.get());
    }
  }

  std::shared_ptr<const Node> node_;
};

inline CoefExpr cosh(const CoefExpr& x) { return CoefExpr::call(Fn::cosh, x); }
inline CoefExpr sinh(const CoefExpr& x) { return CoefExpr::call(Fn::sinh, x); }
inline CoefExpr tanh(const CoefExpr& x) { return CoefExpr::call(Fn::tanh, x); }
inline CoefExpr sech(const CoefExpr& x) { return CoefExpr::call(Fn::sech, x); }
inline CoefExpr exp(const CoefExpr& x) {
  if (x.is_zero()) return CoefExpr(1.0);
  return CoefExpr::call(Fn::exp, x);
}
inline CoefExpr sqrt(const CoefExpr& x) {
  if (x.is_zero() || x.is_one()) return x;
  return CoefExpr::call(Fn::sqrt, x);
}
inline CoefExpr ln(const CoefExpr& x) { return CoefExpr::call(Fn::ln, x); }
inline CoefExpr arccosh(const CoefExpr& x) {
  return CoefExpr::call(Fn::arccosh, x);
}
inline CoefExpr cos(const CoefExpr& x) { return CoefExpr::call(Fn::cos, x); }
inline CoefExpr sin(const CoefExpr& x) { return CoefExpr::call(Fn::sin, x); }
inline CoefExpr conj(const CoefExpr& x) { return CoefExpr::conjugate(x); }

// e^{i x}
inline CoefExpr expi(const CoefExpr& x) {
  if (x.is_zero()) return CoefExpr(1.0);
  return exp(CoefExpr::i() * x);
}

inline std::string format_number(double x) {
  x = normalize_zero(x);
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

namespace detail {

inline int precedence(const CoefExpr& e) {
  using K = CoefExpr::Kind;
  const auto& n = e.node();
  switch (n.kind) {
    case K::add:
    case K::sub:
      return 1;
    case K::mul:
    case K::div:
      return 2;
    case K::neg:
      return 3;
    case K::constant:
      if (n.re != 0.0 && n.im != 0.0) return 1;
      if (n.im != 0.0 && n.im != 1.0) return n.im == -1.0 ? 3 : 2;
      if (n.re < 0.0 || (n.re == 0.0 && n.im < 0.0)) return 3;
      return 4;
    default:
      return 4;
  }
}

inline void print(const CoefExpr& e, std::string* out);

inline void print_operand(const CoefExpr& e, int min_prec, std::string* out) {
  if (precedence(e) < min_prec) {
    out->push_back('(');
    print(e, out);
    out->push_back(')');
  } else {
    print(e, out);
  }
}

inline void print_imag(double im, std::string* out) {
  if (im == 1.0) {
    *out += "i";
  } else if (im == -1.0) {
    *out += "-i";
  } else {
    *out += format_number(im);
    *out += "*i";
  }
}

inline void print(const CoefExpr& e, std::string* out) {
  using K = CoefExpr::Kind;
  const auto& n = e.node();
  switch (n.kind) {
    case K::constant:
      if (n.im == 0.0) {
        *out += format_number(n.re);
      } else if (n.re == 0.0) {
        print_imag(n.im, out);
      } else {
        *out += format_number(n.re);
        if (n.im > 0.0) {
          *out += " + ";
          print_imag(n.im, out);
        } else {
          *out += " - ";
          print_imag(-n.im, out);
        }
      }
      return;
    case K::param:
      *out += n.name;
      return;
    case K::pi:
      *out += "pi";
      return;
    case K::neg:
      out->push_back('-');
      print_operand(e.lhs(), 4, out);
      return;
    case K::add:
    case K::sub:
      print_operand(e.lhs(), 1, out);
      *out += n.kind == K::add ? " + " : " - ";
      print_operand(e.rhs(), 2, out);
      return;
    case K::mul:
    case K::div:
      print_operand(e.lhs(), 2, out);
      *out += n.kind == K::mul ? "*" : "/";
      print_operand(e.rhs(), 3, out);
      return;
    case K::call:
      *out += fn_name(n.fn);
      out->push_back('(');
      print(e.lhs(), out);
      out->push_back(')');
      return;
  }
}

}  // namespace detail

inline std::string to_string(const CoefExpr& e) {
  std::string out;
  detail::print(e, &out);
  return out;
}

}  // namespace telesim

#endif  // TELESIM_COEF_EXPR_HPP_
