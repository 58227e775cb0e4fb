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

#ifndef TELESIM_VERIFY_CAUSALITY_HPP_
#define TELESIM_VERIFY_CAUSALITY_HPP_

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "telesim/lower.hpp"
#include "telesim/numeric.hpp"

namespace telesim {

// Coefficients below this are treated as absent. Working precision is far
// finer, so only genuine cancellations fall under it.
inline constexpr double kDependencyThreshold = 1e-40;

enum class CausalVerdict { causal, acausal };

inline std::string_view verdict_name(CausalVerdict v) {
  return v == CausalVerdict::causal ? "causal" : "acausal";
}

struct OutputDependencies {
  std::set<std::pair<std::string, int>> modes;
  int earliest_emission_bin = 0;
  int max_dependency_bin = 0;
  std::optional<int> slot;
};

struct DependencyReport {
  std::map<std::string, OutputDependencies> outputs;
  CausalVerdict verdict = CausalVerdict::causal;
  // Largest lag of a slotted output behind its slot.
  int mandatory_delay = 0;
  // Max minus min bin over signal inputs.
  int input_bin_span = 0;
  // Every slotted output depends only on signal bins up to its slot.
  bool lower_triangular = true;
  std::vector<TimingViolation> timing_violations;
};

inline DependencyReport causality_report(const ProtocolOutput& p) {
  DependencyReport r;
  std::map<std::string, const ModeId*> by_id;
  int lo = 0;
  int hi = 0;
  bool any_signal = false;
  for (const auto& m : p.inputs) {
    by_id[m.name] = &m;
    if (m.kind == ModeKind::signal) {
      lo = any_signal ? std::min(lo, m.time_bin) : m.time_bin;
      hi = any_signal ? std::max(hi, m.time_bin) : m.time_bin;
      any_signal = true;
    }
  }
  r.input_bin_span = hi - lo;
  Evaluator<hp_complex> ev(p.env);
  for (const auto& o : p.outputs) {
    OutputDependencies d;
    d.earliest_emission_bin = o.emission_bin;
    d.slot = o.slot;
    int signal_max = 0;
    for (const auto& [mode, t] : o.expr.terms()) {
      double mag = std::max(abs_double(ev(t.c)), abs_double(ev(t.d)));
      if (mag <= kDependencyThreshold) continue;
      auto it = by_id.find(mode);
      int bin = it == by_id.end() ? 0 : it->second->time_bin;
      d.modes.emplace(mode, bin);
      d.max_dependency_bin = std::max(d.max_dependency_bin, bin);
      if (it != by_id.end() && it->second->kind == ModeKind::signal) {
        signal_max = std::max(signal_max, bin);
      }
    }
    if (d.earliest_emission_bin < d.max_dependency_bin) {
      r.verdict = CausalVerdict::acausal;
    }
    if (o.slot) {
      r.mandatory_delay =
          std::max(r.mandatory_delay, o.emission_bin - *o.slot);
      if (signal_max > *o.slot) r.lower_triangular = false;
    }
    r.outputs.emplace(o.name, std::move(d));
  }
  r.timing_violations = p.timing_violations;
  if (!r.timing_violations.empty()) r.verdict = CausalVerdict::acausal;
  return r;
}

struct SignalingResult {
  bool applicable = false;
  double max_coefficient = 0.0;
  // Outputs emitted strictly before the prepared bin.
  std::vector<std::string> earlier_outputs;
};

// Largest coefficient of a signal prepared in the given bin on any output
// emitted strictly before that bin.
inline SignalingResult signaling_test(const ProtocolOutput& p,
                                      int prepared_bin) {
  std::set<std::string> prepared;
  for (const auto& m : p.inputs) {
    if (m.kind == ModeKind::signal && m.time_bin == prepared_bin) {
      prepared.insert(m.name);
    }
  }
  SignalingResult r;
  Evaluator<hp_complex> ev(p.env);
  for (const auto& o : p.outputs) {
    if (o.emission_bin >= prepared_bin) continue;
    r.applicable = true;
    r.earlier_outputs.push_back(o.name);
    for (const auto& [mode, t] : o.expr.terms()) {
      if (prepared.count(mode) == 0) continue;
      r.max_coefficient = std::max(
          {r.max_coefficient, abs_double(ev(t.c)), abs_double(ev(t.d))});
    }
  }
  return r;
}

}  // namespace telesim

#endif  // TELESIM_VERIFY_CAUSALITY_HPP_
