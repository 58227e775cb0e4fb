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

#ifndef TELESIM_ELEMENTS_HPP_
#define TELESIM_ELEMENTS_HPP_

#include <utility>
#include <vector>

#include "telesim/mode_expr.hpp"

namespace telesim {

// The '0' component and its co-propagating orthogonal '⊥' component.
struct RailState {
  ModeExpr zero;
  ModeExpr perp;
};

struct ClassicalSignal {
  ModeExpr expr;
  bool beta_normalized = true;
};

// Which components of a rail an element acts on. Untouched components pass
// straight through.
enum class Match { all, zero };

inline CoefExpr inv_sqrt2() { return CoefExpr(1.0) / sqrt(CoefExpr(2.0)); }

// Returns (out_minus, out_plus).
inline std::pair<ModeExpr, ModeExpr> beamsplitter(const ModeExpr& in_t,
                                                  const ModeExpr& in_r,
                                                  const CoefExpr& alpha,
                                                  const CoefExpr& phi) {
  const CoefExpr t = sqrt(alpha);
  const CoefExpr r = sqrt(CoefExpr(1.0) - alpha);
  const CoefExpr mi = CoefExpr::constant(0.0, -1.0);
  ModeExpr minus = t * in_r + (mi * expi(-phi) * r) * in_t;
  ModeExpr plus = t * in_t + (mi * expi(phi) * r) * in_r;
  return {std::move(minus), std::move(plus)};
}

inline std::pair<RailState, RailState> apply_beamsplitter(
    const RailState& in_t, const RailState& in_r, const CoefExpr& alpha,
    const CoefExpr& phi, Match match = Match::all) {
  auto [zm, zp] = beamsplitter(in_t.zero, in_r.zero, alpha, phi);
  if (match == Match::zero) {
    return {RailState{std::move(zm), in_r.perp},
            RailState{std::move(zp), in_t.perp}};
  }
  auto [pm, pp] = beamsplitter(in_t.perp, in_r.perp, alpha, phi);
  return {RailState{std::move(zm), std::move(pm)},
          RailState{std::move(zp), std::move(pp)}};
}

// Returns (sum_out, diff_out).
inline std::pair<ModeExpr, ModeExpr> apply_balanced_bs(const ModeExpr& in1,
                                                       const ModeExpr& in2) {
  const CoefExpr h = inv_sqrt2();
  return {h * (in2 + in1), h * (in1 - in2)};
}

inline std::pair<ModeExpr, ModeExpr> two_mode_squeezer(const ModeExpr& in1,
                                                       const ModeExpr& in2,
                                                       const CoefExpr& gain,
                                                       const CoefExpr& theta) {
  const CoefExpr ch = cosh(gain);
  const CoefExpr sh = expi(theta) * sinh(gain);
  return {ch * in1 + sh * dagger(in2), ch * in2 + sh * dagger(in1)};
}

inline std::pair<RailState, RailState> apply_two_mode_squeezer(
    const RailState& in1, const RailState& in2, const CoefExpr& gain,
    const CoefExpr& theta = CoefExpr(0.0)) {
  auto [o1, o2] = two_mode_squeezer(in1.zero, in2.zero, gain, theta);
  return {RailState{std::move(o1), in1.perp},
          RailState{std::move(o2), in2.perp}};
}

inline std::pair<RailState, RailState> apply_inverse_squeezer(
    const RailState& in1, const RailState& in2, const CoefExpr& gain,
    const CoefExpr& theta = CoefExpr(0.0)) {
  return apply_two_mode_squeezer(in1, in2, -gain, theta);
}

inline RailState apply_phase_shift(const RailState& in, const CoefExpr& phi,
                                   Match match = Match::all) {
  const CoefExpr k = expi(phi);
  return RailState{k * in.zero, match == Match::zero ? in.perp : k * in.perp};
}

// Quadrature operator X(φ) = e^{-iφ}A + e^{iφ}A†.
inline ModeExpr quadrature(const ModeExpr& a, const CoefExpr& phi) {
  return expi(-phi) * a + expi(phi) * dagger(a);
}

// Dual homodyne: M = X_diff(φx) + i X_sum(φp) with diff = (sig − res)/√2 and
// sum = (sig + res)/√2.
inline ClassicalSignal dual_homodyne(const ModeExpr& signal,
                                     const ModeExpr& resource,
                                     const CoefExpr& phase_x,
                                     const CoefExpr& phase_p) {
  auto [sum, diff] = apply_balanced_bs(signal, resource);
  ModeExpr m =
      quadrature(diff, phase_x) + CoefExpr::i() * quadrature(sum, phase_p);
  return ClassicalSignal{std::move(m), true};
}

inline ClassicalSignal classical_combine(
    const std::vector<std::pair<CoefExpr, ClassicalSignal>>& signals) {
  ClassicalSignal out;
  for (const auto& [w, s] : signals) {
    out.expr = out.expr + w * s.expr;
    out.beta_normalized = out.beta_normalized && s.beta_normalized;
  }
  return out;
}

inline RailState displace(const RailState& resource_half,
                          const ClassicalSignal& m, const CoefExpr& zeta) {
  return RailState{resource_half.zero + zeta * m.expr, resource_half.perp};
}

}  // namespace telesim

#endif  // TELESIM_ELEMENTS_HPP_
