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

#ifndef TELESIM_VERIFY_SELECTIVITY_HPP_
#define TELESIM_VERIFY_SELECTIVITY_HPP_

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "telesim/lower.hpp"
#include "telesim/numeric.hpp"

namespace telesim {

inline constexpr double kSelectivityTolerance = 1e-6;
inline constexpr double kNoiseThreshold = 0.5;

enum class Selectivity { mode_selective, mode_discriminating, neither };

inline std::string_view selectivity_name(Selectivity s) {
  switch (s) {
    case Selectivity::mode_selective: return "mode_selective";
    case Selectivity::mode_discriminating: return "mode_discriminating";
    case Selectivity::neither: return "neither";
  }
  return "neither";
}

struct PortSelectivity {
  cdouble overlap;
  // Norm of the signal content orthogonal to the target.
  double leakage = 0.0;
  // max(Var X, Var P) − 1.
  double noise_excess = 0.0;
};

struct SelectivityReport {
  std::string target_port;
  cdouble target_overlap;
  double orthogonal_leakage = 0.0;
  std::map<std::string, PortSelectivity> ports;
  Selectivity verdict = Selectivity::neither;
};

inline SelectivityReport selectivity_report(
    const ProtocolOutput& p, const ModeExpr& target, const ParamEnv& env,
    double tol = kSelectivityTolerance) {
  std::set<std::string> signal_ids;
  for (const auto& m : p.inputs) {
    if (m.kind == ModeKind::signal) signal_ids.insert(m.name);
  }
  Evaluator<hp_complex> ev(env);
  HpExpr tgt = evaluate_expr(target, ev);
  hp_complex tnorm = commutator_of(tgt, dagger_of(tgt));
  if (std::abs(to_cdouble(tnorm) - 1.0) > 1e-10) {
    throw Error("selectivity target is not a proper mode");
  }
  HpExpr tgt_dag = dagger_of(tgt);
  SelectivityReport r;
  double best = -1.0;
  for (const auto& o : p.outputs) {
    if (o.role != Role::transmitted) continue;
    HpExpr port = evaluate_expr(o.expr, ev);
    PortSelectivity ps;
    ps.overlap = to_cdouble(commutator_of(port, tgt_dag));
    double signal_norm = 0.0;
    for (const auto& [mode, t] : port) {
      if (signal_ids.count(mode) == 0) continue;
      signal_norm += std::norm(to_cdouble(t.c)) + std::norm(to_cdouble(t.d));
    }
    ps.leakage = std::sqrt(std::max(0.0, signal_norm - std::norm(ps.overlap)));
    const hp_complex half_pi = scalar_traits<hp_complex>::make(
        scalar_traits<hp_complex>::pi() / 2, 0);
    double vx = variance_of(port, hp_complex(0)).convert_to<double>();
    double vp = variance_of(port, half_pi).convert_to<double>();
    ps.noise_excess = std::max(vx, vp) - 1.0;
    if (std::abs(ps.overlap) > best) {
      best = std::abs(ps.overlap);
      r.target_port = o.name;
      r.target_overlap = ps.overlap;
    }
    r.orthogonal_leakage = std::max(r.orthogonal_leakage, ps.leakage);
    r.ports.emplace(o.name, ps);
  }
  if (r.ports.empty()) return r;
  const PortSelectivity& t = r.ports.at(r.target_port);
  const bool target_clean = std::abs(std::abs(t.overlap) - 1.0) <= tol &&
                            t.leakage <= tol &&
                            t.noise_excess <= kNoiseThreshold;
  if (target_clean && r.orthogonal_leakage <= tol) {
    r.verdict = Selectivity::mode_selective;
  } else if (target_clean) {
    bool noisy = true;
    for (const auto& [name, ps] : r.ports) {
      if (ps.leakage > tol && ps.noise_excess <= kNoiseThreshold) noisy = false;
    }
    r.verdict =
        noisy ? Selectivity::mode_discriminating : Selectivity::neither;
  }
  return r;
}

}  // namespace telesim

#endif  // TELESIM_VERIFY_SELECTIVITY_HPP_
