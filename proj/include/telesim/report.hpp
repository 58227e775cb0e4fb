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

#ifndef TELESIM_REPORT_HPP_
#define TELESIM_REPORT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "telesim/lower.hpp"
#include "telesim/numeric.hpp"
#include "telesim/verify/bogoliubov.hpp"
#include "telesim/verify/causality.hpp"
#include "telesim/verify/limits.hpp"
#include "telesim/verify/selectivity.hpp"

namespace telesim {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr double kDisplayThreshold = 1e-14;
inline constexpr double kBogoliubovTolerance = 1e-10;

struct ExpectationCheck {
  double max_difference = 0.0;
  bool pass = false;
};

struct Analyses {
  std::map<std::string, ExpectationCheck> expectations;
  std::map<std::string, LimitResult> limits;
  std::optional<BogoliubovReport> bogoliubov;
  std::optional<DependencyReport> causality;
  std::optional<SignalingResult> signaling;
  int signaling_bin = 0;
  std::optional<SelectivityReport> selectivity;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

// Runs the full verification suite on a lowered protocol.
inline Analyses analyze(const ProtocolOutput& p) {
  Analyses a;
  std::vector<std::string> infinite(p.env.infinite_params().begin(),
                                    p.env.infinite_params().end());
  for (const auto& [name, expected] : p.expected_limit) {
    ExpectationCheck c;
    c.max_difference = max_abs_difference(p.output(name), expected, p.env);
    c.pass = c.max_difference <= kLimitTolerance;
    if (!c.pass) a.failures.push_back("expectation " + name);
    a.expectations.emplace(name, c);
  }
  for (const auto& o : p.outputs) {
    LimitResult l = limit_coefficients(o.expr, infinite, p.env);
    if (!l.converged && p.expected_limit.count(o.name) > 0) {
      a.failures.push_back("limit " + o.name);
    }
    a.limits.emplace(o.name, std::move(l));
  }
  auto full = full_output_set(p);
  if (!full.empty()) {
    a.bogoliubov = check_bogoliubov(full, p.env, kBogoliubovTolerance);
    if (!a.bogoliubov->pass) a.failures.push_back("bogoliubov");
  }
  a.causality = causality_report(p);
  if (a.causality->verdict != CausalVerdict::causal) {
    a.failures.push_back("causality");
  }
  for (const auto& m : p.inputs) {
    if (m.kind == ModeKind::signal) {
      a.signaling_bin = std::max(a.signaling_bin, m.time_bin);
    }
  }
  a.signaling = signaling_test(p, a.signaling_bin);
  if (a.signaling->applicable && a.signaling->max_coefficient != 0.0) {
    a.failures.push_back("signaling");
  }
  if (p.target) a.selectivity = selectivity_report(p, *p.target, p.env);
  return a;
}

namespace detail {

// 12 significant digits, negative zero folded to zero.
inline double rounded(double x) {
  if (!std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  double v = std::strtod(buf, nullptr);
  return v == 0.0 ? 0.0 : v;
}

inline nlohmann::json number(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  return rounded(x);
}

inline nlohmann::json coefficient_table(const DoubleExpr& e) {
  nlohmann::json t = nlohmann::json::object();
  for (const auto& [mode, term] : e) {
    if (std::abs(term.c) < kDisplayThreshold &&
        std::abs(term.d) < kDisplayThreshold) {
      continue;
    }
    t[mode] = {number(term.c.real()), number(term.c.imag()),
               number(term.d.real()), number(term.d.imag())};
  }
  return t;
}

inline std::string text_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", rounded(x));
  return buf;
}

inline std::string complex_text(cdouble z) {
  double re = rounded(z.real());
  double im = rounded(z.imag());
  if (im == 0.0) return text_number(re);
  if (re == 0.0) return text_number(im) + "i";
  return text_number(re) + (im < 0 ? "-" : "+") + text_number(std::abs(im)) +
         "i";
}

inline std::string pad(const std::string& s, size_t w) {
  return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
}

// Renders rows as left-aligned columns separated by two spaces.
inline std::string table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<size_t> width;
  for (const auto& r : rows) {
    width.resize(std::max(width.size(), r.size()), 0);
    for (size_t k = 0; k < r.size(); ++k) {
      width[k] = std::max(width[k], r[k].size());
    }
  }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (size_t k = 0; k < r.size(); ++k) {
      line += k + 1 == r.size() ? r[k] : pad(r[k], width[k]) + "  ";
    }
    out += "  " + line + "\n";
  }
  return out;
}

}  // namespace detail

inline nlohmann::json report_json(const ProtocolOutput& p, const Analyses& a) {
  using detail::number;
  nlohmann::json doc;
  doc["tool"] = {{"name", "telesim"}, {"version", kToolVersion}};
  doc["protocol"] = p.protocol;
  doc["limit_scale"] = number(p.env.limit_scale());
  nlohmann::json params = nlohmann::json::object();
  Evaluator<hp_complex> ev(p.env);
  for (const auto& name : p.env.infinite_params()) {
    params[name] = {{"value", "infinity"}};
  }
  for (const auto& [name, value] : p.env.values()) {
    cdouble v = to_cdouble(ev.param(name));
    params[name] = {{"expr", to_string(value)}, {"value", number(v.real())}};
  }
  doc["parameters"] = params;

  nlohmann::json outs = nlohmann::json::object();
  for (const auto& o : p.outputs) {
    HpExpr n = evaluate_expr(o.expr, ev);
    nlohmann::json j;
    j["role"] = std::string(role_name(o.role));
    j["wire"] = o.wire + (o.perp ? ".perp" : "");
    j["emission_bin"] = o.emission_bin;
    j["slot"] = o.slot ? nlohmann::json(*o.slot) : nlohmann::json(nullptr);
    j["coefficients"] = detail::coefficient_table(to_double_expr(n));
    const hp_complex half_pi = scalar_traits<hp_complex>::make(
        scalar_traits<hp_complex>::pi() / 2, hp_real(0));
    j["var_x"] = number(variance_of(n, hp_complex(0)).convert_to<double>());
    j["var_p"] = number(variance_of(n, half_pi).convert_to<double>());
    outs[o.name] = j;
  }
  doc["outputs"] = outs;

  nlohmann::json limits = nlohmann::json::object();
  for (const auto& [name, l] : a.limits) {
    limits[name] = {{"converged", l.converged},
                    {"divergent", l.divergent},
                    {"max_difference", number(l.max_difference)}};
  }
  doc["limits"] = limits;

  nlohmann::json ex = nlohmann::json::object();
  for (const auto& [name, c] : a.expectations) {
    ex[name] = {{"max_difference", number(c.max_difference)},
                {"pass", c.pass}};
  }
  doc["expectations"] = ex;

  if (a.bogoliubov) {
    doc["bogoliubov"] = {{"pass", a.bogoliubov->pass},
                         {"modes", a.bogoliubov->modes},
                         {"max_error", number(a.bogoliubov->max_error)},
                         {"worst", a.bogoliubov->worst}};
  } else {
    doc["bogoliubov"] = nullptr;
  }

  if (a.causality) {
    const DependencyReport& c = *a.causality;
    nlohmann::json deps = nlohmann::json::object();
    for (const auto& [name, d] : c.outputs) {
      nlohmann::json modes = nlohmann::json::array();
      for (const auto& [mode, bin] : d.modes) modes.push_back({mode, bin});
      deps[name] = {{"modes", modes},
                    {"earliest_emission_bin", d.earliest_emission_bin},
                    {"max_dependency_bin", d.max_dependency_bin}};
    }
    nlohmann::json viol = nlohmann::json::array();
    for (const auto& v : c.timing_violations) {
      viol.push_back({{"wire", v.wire},
                      {"scheduled_bin", v.scheduled_bin},
                      {"input_bin", v.input_bin},
                      {"line", v.loc.line}});
    }
    doc["causality"] = {{"verdict", std::string(verdict_name(c.verdict))},
                        {"mandatory_delay", c.mandatory_delay},
                        {"input_bin_span", c.input_bin_span},
                        {"lower_triangular", c.lower_triangular},
                        {"dependencies", deps},
                        {"timing_violations", viol}};
  }

  if (a.signaling) {
    doc["signaling"] = {
        {"prepared_bin", a.signaling_bin},
        {"applicable", a.signaling->applicable},
        {"max_coefficient", number(a.signaling->max_coefficient)}};
  }

  if (a.selectivity) {
    const SelectivityReport& s = *a.selectivity;
    nlohmann::json ports = nlohmann::json::object();
    for (const auto& [name, ps] : s.ports) {
      ports[name] = {{"overlap", {number(ps.overlap.real()),
                                  number(ps.overlap.imag())}},
                     {"leakage", number(ps.leakage)},
                     {"noise_variance_excess", number(ps.noise_excess)}};
    }
    doc["selectivity"] = {
        {"verdict", std::string(selectivity_name(s.verdict))},
        {"target_port", s.target_port},
        {"target_overlap",
         {number(s.target_overlap.real()), number(s.target_overlap.imag())}},
        {"orthogonal_leakage", number(s.orthogonal_leakage)},
        {"ports", ports}};
  } else {
    doc["selectivity"] = {{"verdict", "not_applicable"}};
  }

  doc["flags"] = p.flags;
  doc["checks"] = {{"passed", a.passed()}, {"failures", a.failures}};
  return doc;
}

enum class ReportFormat { text, machine };

inline std::string report_text(const ProtocolOutput& p, const Analyses& a) {
  using detail::complex_text;
  using detail::text_number;
  std::string out;
  out += "protocol: " + (p.protocol.empty() ? std::string("(circuit)")
                                            : p.protocol) +
         "\n";
  out += "limit scale: " + text_number(p.env.limit_scale()) + "\n\n";

  out += "outputs\n";
  Evaluator<hp_complex> ev(p.env);
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"output", "role", "bin", "slot", "mode", "c", "d"});
  for (const auto& o : p.outputs) {
    DoubleExpr n = to_double_expr(evaluate_expr(o.expr, ev));
    bool first = true;
    for (const auto& [mode, t] : n) {
      if (std::abs(t.c) < kDisplayThreshold &&
          std::abs(t.d) < kDisplayThreshold) {
        continue;
      }
      rows.push_back({first ? o.name : "",
                      first ? std::string(role_name(o.role)) : "",
                      first ? std::to_string(o.emission_bin) : "",
                      first && o.slot ? std::to_string(*o.slot) : "", mode,
                      complex_text(t.c), complex_text(t.d)});
      first = false;
    }
    if (first) {
      rows.push_back({o.name, std::string(role_name(o.role)),
                      std::to_string(o.emission_bin),
                      o.slot ? std::to_string(*o.slot) : "", "-", "0", "0"});
    }
  }
  out += detail::table(rows) + "\n";

  if (!a.expectations.empty()) {
    out += "expectations\n";
    rows.assign(1, {"output", "max |diff|", "result"});
    for (const auto& [name, c] : a.expectations) {
      rows.push_back({name, text_number(c.max_difference),
                      c.pass ? "pass" : "FAIL"});
    }
    out += detail::table(rows) + "\n";
  }

  out += "limits\n";
  rows.assign(1, {"output", "L vs 2L", "status"});
  for (const auto& [name, l] : a.limits) {
    rows.push_back({name, text_number(l.max_difference),
                    l.divergent ? "divergent"
                                : (l.converged ? "converged" : "unsettled")});
  }
  out += detail::table(rows) + "\n";

  if (a.bogoliubov) {
    out += "bogoliubov: " + std::string(a.bogoliubov->pass ? "pass" : "FAIL") +
           " (" + std::to_string(a.bogoliubov->modes) +
           " modes, max error " + text_number(a.bogoliubov->max_error) +
           ")\n";
  }
  if (a.causality) {
    const DependencyReport& c = *a.causality;
    out += "causality: " + std::string(verdict_name(c.verdict)) +
           ", mandatory delay " + std::to_string(c.mandatory_delay) +
           " bin(s), input span " + std::to_string(c.input_bin_span) +
           ", lower triangular " + (c.lower_triangular ? "yes" : "no") + "\n";
    for (const auto& v : c.timing_violations) {
      out += "  timing violation: " + v.wire + " scheduled at bin " +
             std::to_string(v.scheduled_bin) + " before input bin " +
             std::to_string(v.input_bin) + " (line " +
             std::to_string(v.loc.line) + ")\n";
    }
  }
  if (a.signaling) {
    out += "signaling from bin " + std::to_string(a.signaling_bin) + ": ";
    out += a.signaling->applicable
               ? text_number(a.signaling->max_coefficient)
               : std::string("not applicable (no earlier outputs)");
    out += "\n";
  }
  if (a.selectivity) {
    const SelectivityReport& s = *a.selectivity;
    out += "selectivity: " + std::string(selectivity_name(s.verdict)) +
           " (target port " + s.target_port + ", overlap " +
           complex_text(s.target_overlap) + ")\n";
    rows.assign(1, {"port", "overlap", "leakage", "noise excess"});
    for (const auto& [name, ps] : s.ports) {
      rows.push_back({name, complex_text(ps.overlap), text_number(ps.leakage),
                      text_number(ps.noise_excess)});
    }
    out += detail::table(rows);
  } else {
    out += "selectivity: not applicable (no target)\n";
  }
  for (const auto& f : p.flags) out += "flag: " + f + "\n";
  out += "\nchecks: ";
  if (a.passed()) {
    out += "all passed\n";
  } else {
    out += "FAILED";
    for (const auto& f : a.failures) out += " [" + f + "]";
    out += "\n";
  }
  return out;
}

inline std::string emit_report(const ProtocolOutput& p, const Analyses& a,
                               ReportFormat format) {
  if (format == ReportFormat::machine) return report_json(p, a).dump(2) + "\n";
  return report_text(p, a);
}

}  // namespace telesim

#endif  // TELESIM_REPORT_HPP_
