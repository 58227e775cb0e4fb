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

#ifndef TELESIM_EVALUATOR_HPP_
#define TELESIM_EVALUATOR_HPP_

#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "telesim/coef_expr.hpp"
#include "telesim/scalar.hpp"

namespace telesim {

inline constexpr double kDefaultLimitScale = 20.0;

// Reads TELESIM_LIMIT_SCALE, falling back to the default.
inline double limit_scale_from_environment() {
  const char* raw = std::getenv("TELESIM_LIMIT_SCALE");
  if (raw == nullptr || *raw == '\0') return kDefaultLimitScale;
  char* end = nullptr;
  double value = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(value > 0.0)) {
    throw Error(std::string("invalid TELESIM_LIMIT_SCALE value '") + raw + "'");
  }
  return value;
}

class ParamEnv {
 public:
  ParamEnv() = default;

  void set(const std::string& name, CoefExpr value) {
    infinite_.erase(name);
    values_[name] = std::move(value);
  }
  void set(const std::string& name, double value) {
    set(name, CoefExpr(value));
  }
  void set_infinite(const std::string& name) {
    values_.erase(name);
    infinite_.insert(name);
  }

  bool has(const std::string& name) const {
    return values_.count(name) > 0 || infinite_.count(name) > 0;
  }
  bool is_infinite(const std::string& name) const {
    return infinite_.count(name) > 0;
  }
  const CoefExpr* lookup(const std::string& name) const {
    auto it = values_.find(name);
    return it == values_.end() ? nullptr : &it->second;
  }
  const std::set<std::string>& infinite_params() const { return infinite_; }
  const std::map<std::string, CoefExpr>& values() const { return values_; }

  double limit_scale() const { return limit_scale_; }
  void set_limit_scale(double scale) { limit_scale_ = scale; }

  // Copy with every infinite parameter pinned to the given finite value.
  ParamEnv with_infinite_as(double value) const {
    ParamEnv out = *this;
    for (const auto& name : infinite_) out.set(name, value);
    return out;
  }

 private:
  std::map<std::string, CoefExpr> values_;
  std::set<std::string> infinite_;
  double limit_scale_ = kDefaultLimitScale;
};

namespace detail {

template <class Cx>
Cx apply_fn(Fn f, const Cx& z, bool real_arg);

template <>
inline cdouble apply_fn<cdouble>(Fn f, const cdouble& z, bool real_arg) {
  if (real_arg) {
    double x = z.real();
    switch (f) {
      case Fn::cosh: return std::cosh(x);
      case Fn::sinh: return std::sinh(x);
      case Fn::tanh: return std::tanh(x);
      case Fn::sech: return 1.0 / std::cosh(x);
      case Fn::exp: return std::exp(x);
      case Fn::cos: return std::cos(x);
      case Fn::sin: return std::sin(x);
      case Fn::conj: return x;
      case Fn::sqrt:
        if (x < 0.0) throw Error("sqrt of negative real argument");
        return std::sqrt(x);
      case Fn::ln:
        if (x <= 0.0) throw Error("ln of non-positive real argument");
        return std::log(x);
      case Fn::arccosh:
        if (x < 1.0) throw Error("arccosh of real argument below 1");
        return std::acosh(x);
    }
  }
  switch (f) {
    case Fn::cosh: return std::cosh(z);
    case Fn::sinh: return std::sinh(z);
    case Fn::tanh: return std::tanh(z);
    case Fn::sech: return 1.0 / std::cosh(z);
    case Fn::exp: return std::exp(z);
    case Fn::sqrt: return std::sqrt(z);
    case Fn::ln:
      if (z == 0.0) throw Error("ln of zero");
      return std::log(z);
    case Fn::arccosh: return std::acosh(z);
    case Fn::cos: return std::cos(z);
    case Fn::sin: return std::sin(z);
    case Fn::conj: return std::conj(z);
  }
  return z;
}

template <>
inline hp_complex apply_fn<hp_complex>(Fn f, const hp_complex& z,
                                       bool real_arg) {
  namespace mp = boost::multiprecision;
  if (real_arg) {
    hp_real x = mp::real(z);
    hp_real out;
    switch (f) {
      case Fn::cosh: out = mp::cosh(x); break;
      case Fn::sinh: out = mp::sinh(x); break;
      case Fn::tanh: out = mp::tanh(x); break;
      case Fn::sech: out = 1 / mp::cosh(x); break;
      case Fn::exp: out = mp::exp(x); break;
      case Fn::cos: out = mp::cos(x); break;
      case Fn::sin: out = mp::sin(x); break;
      case Fn::conj: out = x; break;
      case Fn::sqrt:
        if (x < 0) throw Error("sqrt of negative real argument");
        out = mp::sqrt(x);
        break;
      case Fn::ln:
        if (x <= 0) throw Error("ln of non-positive real argument");
        out = mp::log(x);
        break;
      case Fn::arccosh:
        if (x < 1) throw Error("arccosh of real argument below 1");
        out = mp::acosh(x);
        break;
    }
    return hp_complex(out, hp_real(0));
  }
  switch (f) {
    case Fn::cosh: return mp::cosh(z);
    case Fn::sinh: return mp::sinh(z);
    case Fn::tanh: return mp::tanh(z);
    case Fn::sech: return hp_complex(1) / mp::cosh(z);
    case Fn::exp: return mp::exp(z);
    case Fn::sqrt: return mp::sqrt(z);
    case Fn::ln:
      if (z == hp_complex(0)) throw Error("ln of zero");
      return mp::log(z);
    case Fn::arccosh: return mp::acosh(z);
    case Fn::cos: return mp::cos(z);
    case Fn::sin: return mp::sin(z);
    case Fn::conj: return mp::conj(z);
  }
  return z;
}

}  // namespace detail

// Memoizing evaluator of CoefExpr values under a ParamEnv.
template <class Cx>
class Evaluator {
 public:
  using traits = scalar_traits<Cx>;

  explicit Evaluator(const ParamEnv& env, double infinity_scale = 1.0)
      : env_(env), infinity_value_(env.limit_scale() * infinity_scale) {}

  const ParamEnv& env() const { return env_; }

  Cx operator()(const CoefExpr& e) {
    roots_.push_back(e.handle());
    return eval(e.id());
  }

  Cx param(const std::string& name) {
    auto it = params_.find(name);
    if (it != params_.end()) return it->second;
    if (env_.is_infinite(name)) {
      Cx v = traits::make(traits::from_double(infinity_value_), 0);
      params_.emplace(name, v);
      return v;
    }
    const CoefExpr* bound = env_.lookup(name);
    if (bound == nullptr) {
      throw Error("unbound parameter '" + name + "'");
    }
    if (!active_.insert(name).second) {
      throw Error("parameter '" + name + "' is defined in terms of itself");
    }
    Cx v = eval(bound->id());
    active_.erase(name);
    params_.emplace(name, v);
    return v;
  }

 private:
  using Node = CoefExpr::Node;
  using Kind = CoefExpr::Kind;

  Cx eval(const Node* n) {
    auto it = memo_.find(n);
    if (it != memo_.end()) return it->second;
    Cx v = compute(*n);
    memo_.emplace(n, v);
    return v;
  }

  Cx compute(const Node& n) {
    switch (n.kind) {
      case Kind::constant:
        return traits::make(traits::from_double(n.re),
                            traits::from_double(n.im));
      case Kind::param:
        return param(n.name);
      case Kind::pi:
        return traits::make(traits::pi(), 0);
      case Kind::neg:
        return -eval(n.lhs.get());
      case Kind::add:
        return eval(n.lhs.get()) + eval(n.rhs.get());
      case Kind::sub:
        return eval(n.lhs.get()) - eval(n.rhs.get());
      case Kind::mul:
        return eval(n.lhs.get()) * eval(n.rhs.get());
      case Kind::div: {
        Cx den = eval(n.rhs.get());
        if (den == Cx(0)) throw Error("division by zero");
        return eval(n.lhs.get()) / den;
      }
      case Kind::call:
        return detail::apply_fn<Cx>(n.fn, eval(n.lhs.get()), n.lhs->real);
    }
    return Cx(0);
  }

  const ParamEnv& env_;
  double infinity_value_;
  std::unordered_map<const Node*, Cx> memo_;
  std::vector<std::shared_ptr<const Node>> roots_;
  std::map<std::string, Cx> params_;
  std::set<std::string> active_;
};

inline cdouble evaluate(const CoefExpr& e, const ParamEnv& env) {
  Evaluator<hp_complex> ev(env);
  return to_cdouble(ev(e));
}

}  // namespace telesim

#endif  // TELESIM_EVALUATOR_HPP_
