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

#ifndef TELESIM_VERIFY_LIMITS_HPP_
#define TELESIM_VERIFY_LIMITS_HPP_

#include <algorithm>
#include <string>
#include <vector>

#include "telesim/numeric.hpp"

namespace telesim {

inline constexpr double kLimitTolerance = 1e-8;
inline constexpr double kDivergenceBound = 1e6;

struct LimitResult {
  DoubleExpr at_scale;
  DoubleExpr at_double_scale;
  double max_difference = 0.0;
  bool converged = false;
  bool divergent = false;
  // Coefficients at twice the limit scale, meaningful when converged.
  DoubleExpr limit;
};

// Evaluates the expression with the given parameters sent to infinity, at the
// environment's limit scale L and at 2L.
inline LimitResult limit_coefficients(
    const ModeExpr& expr, const std::vector<std::string>& params_to_infinity,
    const ParamEnv& env, double tol = kLimitTolerance) {
  ParamEnv e = env;
  for (const auto& name : params_to_infinity) e.set_infinite(name);
  Evaluator<hp_complex> near(e, 1.0);
  Evaluator<hp_complex> far(e, 2.0);
  HpExpr a = evaluate_expr(expr, near);
  HpExpr b = evaluate_expr(expr, far);
  LimitResult r;
  r.at_scale = to_double_expr(a);
  r.at_double_scale = to_double_expr(b);
  r.max_difference = max_abs_difference(a, b);
  for (const auto& [mode, t] : b) {
    double grow = std::max(abs_double(t.c), abs_double(t.d));
    double base = 0.0;
    if (auto it = a.find(mode); it != a.end()) {
      base = std::max(abs_double(it->second.c), abs_double(it->second.d));
    }
    if (grow > kDivergenceBound && grow > base) r.divergent = true;
  }
  r.converged = !r.divergent && r.max_difference <= tol;
  if (r.converged) r.limit = r.at_double_scale;
  return r;
}

}  // namespace telesim

#endif  // TELESIM_VERIFY_LIMITS_HPP_
