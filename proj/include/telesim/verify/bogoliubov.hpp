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

#ifndef TELESIM_VERIFY_BOGOLIUBOV_HPP_
#define TELESIM_VERIFY_BOGOLIUBOV_HPP_

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "telesim/lower.hpp"
#include "telesim/numeric.hpp"

namespace telesim {

struct BogoliubovReport {
  bool pass = true;
  int modes = 0;
  double max_error = 0.0;
  // Pair with the largest deviation, as "[A, B]" or "[A, B†]".
  std::string worst;
};

// Checks [A_i, A_j†] = δ_ij and [A_i, A_j] = 0 over the given mode set.
inline BogoliubovReport check_bogoliubov(
    const std::vector<std::pair<std::string, ModeExpr>>& outputs,
    const ParamEnv& env, double tol = 1e-10) {
  Evaluator<hp_complex> ev(env);
  std::vector<HpExpr> num;
  std::vector<HpExpr> dag;
  num.reserve(outputs.size());
  for (const auto& [name, e] : outputs) {
    num.push_back(evaluate_expr(e, ev));
    dag.push_back(dagger_of(num.back()));
  }
  BogoliubovReport r;
  r.modes = static_cast<int>(outputs.size());
  auto note = [&](double err, const std::string& what) {
    if (err > r.max_error || r.worst.empty()) {
      r.max_error = err;
      r.worst = what;
    }
  };
  for (size_t a = 0; a < num.size(); ++a) {
    for (size_t b = a; b < num.size(); ++b) {
      const std::string& na = outputs[a].first;
      const std::string& nb = outputs[b].first;
      hp_complex mixed = commutator_of(num[a], dag[b]);
      if (a == b) mixed -= hp_complex(1);
      note(abs_double(mixed), "[" + na + ", " + nb + "†]");
      if (a != b) {
        note(abs_double(commutator_of(num[a], num[b])),
             "[" + na + ", " + nb + "]");
      }
    }
  }
  r.pass = r.max_error <= tol;
  return r;
}

inline BogoliubovReport check_bogoliubov(const std::vector<ModeExpr>& outputs,
                                         const ParamEnv& env,
                                         double tol = 1e-10) {
  std::vector<std::pair<std::string, ModeExpr>> named;
  for (size_t k = 0; k < outputs.size(); ++k) {
    named.emplace_back("#" + std::to_string(k), outputs[k]);
  }
  return check_bogoliubov(named, env, tol);
}

// The transmitted and reflected outputs of a protocol, in declaration order.
inline std::vector<std::pair<std::string, ModeExpr>> full_output_set(
    const ProtocolOutput& p) {
  std::vector<std::pair<std::string, ModeExpr>> out;
  for (const auto& o : p.outputs) {
    if (o.role == Role::transmitted || o.role == Role::reflected) {
      out.emplace_back(o.name, o.expr);
    }
  }
  return out;
}

}  // namespace telesim

#endif  // TELESIM_VERIFY_BOGOLIUBOV_HPP_
