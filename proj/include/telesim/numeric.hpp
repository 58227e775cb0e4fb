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

#ifndef TELESIM_NUMERIC_HPP_
#define TELESIM_NUMERIC_HPP_

#include <cmath>
#include <map>
#include <string>

#include "telesim/evaluator.hpp"
#include "telesim/mode_expr.hpp"

namespace telesim {

template <class Cx>
struct NumericTerm {
  Cx c;
  Cx d;
};

template <class Cx>
using NumericExpr = std::map<std::string, NumericTerm<Cx>>;

using HpExpr = NumericExpr<hp_complex>;
using DoubleExpr = NumericExpr<cdouble>;

template <class Cx>
NumericExpr<Cx> evaluate_expr(const ModeExpr& a, Evaluator<Cx>& ev) {
  NumericExpr<Cx> out;
  for (const auto& [mode, t] : a.terms()) {
    out.emplace(mode, NumericTerm<Cx>{ev(t.c), ev(t.d)});
  }
  return out;
}

inline DoubleExpr to_double_expr(const HpExpr& a) {
  DoubleExpr out;
  for (const auto& [mode, t] : a) {
    out.emplace(mode, NumericTerm<cdouble>{to_cdouble(t.c), to_cdouble(t.d)});
  }
  return out;
}

inline DoubleExpr evaluate_double(const ModeExpr& a, const ParamEnv& env) {
  Evaluator<hp_complex> ev(env);
  return to_double_expr(evaluate_expr(a, ev));
}

template <class Cx>
Cx commutator_of(const NumericExpr<Cx>& a, const NumericExpr<Cx>& b) {
  Cx sum(0);
  for (const auto& [mode, ta] : a) {
    auto it = b.find(mode);
    if (it == b.end()) continue;
    sum += ta.c * it->second.d - ta.d * it->second.c;
  }
  return sum;
}

template <class Cx>
NumericExpr<Cx> dagger_of(const NumericExpr<Cx>& a) {
  using std::conj;
  using boost::multiprecision::conj;
  NumericExpr<Cx> out;
  for (const auto& [mode, t] : a) {
    out.emplace(mode, NumericTerm<Cx>{conj(t.d), conj(t.c)});
  }
  return out;
}

template <class Cx>
typename scalar_traits<Cx>::real variance_of(const NumericExpr<Cx>& a,
                                             const Cx& phase) {
  using std::conj;
  using std::exp;
  using std::norm;
  using boost::multiprecision::conj;
  using boost::multiprecision::exp;
  using boost::multiprecision::norm;
  const Cx i = scalar_traits<Cx>::make(0, 1);
  const Cx rot = exp(-i * phase);
  const Cx rot_conj = conj(rot);
  typename scalar_traits<Cx>::real sum(0);
  for (const auto& [mode, t] : a) {
    sum += norm(rot * t.c + rot_conj * conj(t.d));
  }
  return sum;
}

inline cdouble commutator(const ModeExpr& a, const ModeExpr& b,
                          const ParamEnv& env) {
  Evaluator<hp_complex> ev(env);
  return to_cdouble(commutator_of(evaluate_expr(a, ev), evaluate_expr(b, ev)));
}

inline double quadrature_variance(const ModeExpr& a, const CoefExpr& phase,
                                  const ParamEnv& env) {
  Evaluator<hp_complex> ev(env);
  return variance_of(evaluate_expr(a, ev), ev(phase)).convert_to<double>();
}

inline double quadrature_variance(const ModeExpr& a, double phase,
                                  const ParamEnv& env) {
  return quadrature_variance(a, CoefExpr(phase), env);
}

inline bool is_proper_mode(const ModeExpr& a, const ParamEnv& env,
                           double tol = 1e-10) {
  Evaluator<hp_complex> ev(env);
  HpExpr n = evaluate_expr(a, ev);
  cdouble norm = to_cdouble(commutator_of(n, dagger_of(n)));
  return std::abs(norm - 1.0) <= tol;
}

inline cdouble overlap_with(const ModeExpr& a, const ModeExpr& target,
                            const ParamEnv& env, double tol = 1e-10) {
  if (!is_proper_mode(target, env, tol)) {
    throw Error("overlap target is not a proper mode");
  }
  return commutator(a, dagger(target), env);
}

// Largest coefficient magnitude of the difference of two expressions.
template <class Cx>
double max_abs_difference(const NumericExpr<Cx>& a, const NumericExpr<Cx>& b) {
  double worst = 0.0;
  auto visit = [&](const std::string& mode) {
    Cx ac(0), ad(0), bc(0), bd(0);
    if (auto it = a.find(mode); it != a.end()) {
      ac = it->second.c;
      ad = it->second.d;
    }
    if (auto it = b.find(mode); it != b.end()) {
      bc = it->second.c;
      bd = it->second.d;
    }
    worst = std::max(worst, abs_double(Cx(ac - bc)));
    worst = std::max(worst, abs_double(Cx(ad - bd)));
  };
  for (const auto& [mode, t] : a) visit(mode);
  for (const auto& [mode, t] : b) visit(mode);
  return worst;
}

inline double max_abs_difference(const ModeExpr& a, const ModeExpr& b,
                                 const ParamEnv& env) {
  Evaluator<hp_complex> ev(env);
  return max_abs_difference(evaluate_expr(a, ev), evaluate_expr(b, ev));
}

}  // namespace telesim

#endif  // TELESIM_NUMERIC_HPP_
