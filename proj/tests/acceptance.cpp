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

// Acceptance checks: one line per criterion, nonzero exit if any fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "test_support.hpp"

namespace {

using namespace telesim;
using testing::cd;
using testing::kI;
using testing::kPi;

// Residual of an identity that holds exactly in real arithmetic, evaluated
// with 110 significant digits.
constexpr double kWorkingPrecisionZero = 1e-90;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

using Table = std::map<std::string, std::pair<cd, cd>>;

double diff_to(const ProtocolOutput& p, const std::string& out,
               const Table& ref) {
  return testing::table_distance(testing::coefficients(p, out), ref);
}

// Noise coefficients of (b − a†) for the two-mode squeezed resource built
// from seeds (e1, e2): a = cosh s e1 + sinh s e2†, b = cosh s e2 + sinh s e1†.
Table resource_noise(double s, cd scale, const std::string& e1 = "e1",
                     const std::string& e2 = "e2") {
  const double ch = std::cosh(s);
  const double sh = std::sinh(s);
  // b − a† = (ch − sh) e2 + (sh − ch) e1†
  return {{e2, {scale * (ch - sh), 0.0}}, {e1, {0.0, scale * (sh - ch)}}};
}

Table merge(Table a, const Table& b) {
  for (const auto& [m, cdp] : b) {
    auto& t = a[m];
    t.first += cdp.first;
    t.second += cdp.second;
  }
  return a;
}

// Worst deviation over every expect of a protocol.
double expect_residual(const ProtocolOutput& p) {
  double worst = 0.0;
  for (const auto& [name, e] : p.expected_limit) {
    worst = std::max(worst, max_abs_difference(p.output(name), e, p.env));
  }
  return worst;
}

// Limiting coefficients (at twice the limit scale) against a claim, the
// convergence itself being required.
bool limit_matches(const ProtocolOutput& p, const std::string& out,
                   const Table& ref, double tol, double* err) {
  std::vector<std::string> inf(p.env.infinite_params().begin(),
                               p.env.infinite_params().end());
  LimitResult l = limit_coefficients(p.output(out), inf, p.env);
  *err = testing::table_distance(l.at_double_scale, ref);
  return l.converged && *err <= tol;
}

// Same output of two separately lowered protocols, each in its own
// environment, compared at working precision.
double cross_difference(const ProtocolOutput& a, const ProtocolOutput& b,
                        const std::string& out) {
  Evaluator<hp_complex> ea(a.env);
  Evaluator<hp_complex> eb(b.env);
  return max_abs_difference(evaluate_expr(a.output(out), ea),
                            evaluate_expr(b.output(out), eb));
}

ParamEnv finite(const std::map<std::string, double>& v) {
  return testing::env_of(v);
}

Outcome criterion1() {
  Outcome o;
  ProtocolOutput p = run_protocol("atemporal_telefilter");
  double err = diff_to(p, "out", {{"j", {1.0, 0.0}}});
  o.require(err <= 1e-8, "residual " + sci(err));
  o.detail = o.pass ? "max residual " + sci(err) : o.detail;
  return o;
}

Outcome criterion2() {
  Outcome o;
  double worst = 0.0;
  for (double s : {0.5, 1.0, 2.0}) {
    ProtocolOutput f = run_protocol("atemporal_telefilter",
                                    {{"gain_mode", "tanh"}}, finite({{"s", s}}));
    double e1 = diff_to(f, "out", {{"j", {std::tanh(s), 0.0}},
                                   {"e2", {1.0 / std::cosh(s), 0.0}}});
    ProtocolOutput m = run_protocol("atemporal_telemirror",
                                    {{"efficiency", "finite"}}, finite({{"s", s}}));
    const double den = std::sqrt(3.0 + std::cosh(2.0 * s));
    double e2 = diff_to(m, "jt", {{"j", {std::sqrt(2.0) * std::cosh(s) / den, 0.0}},
                                  {"e2", {-std::sqrt(2.0) / den, 0.0}}});
    // Transmissivity 2cosh²s/(3+cosh 2s) appears as 1 - alpha of the split.
    Evaluator<cdouble> ev(m.env);
    double eta = ev.param("eta").real();
    double eta_expected = 2.0 * std::cosh(s) * std::cosh(s) / (3.0 + std::cosh(2.0 * s));
    double e3 = std::abs(1.0 - eta - eta_expected);
    worst = std::max({worst, e1, e2, e3});
  }
  o.require(worst <= 1e-12, "residual " + sci(worst));
  if (o.pass) o.detail = "max residual " + sci(worst) + " over s in {0.5, 1, 2}";
  return o;
}

Outcome criterion3() {
  Outcome o;
  testing::Draws draws(3);
  double finite_err = 0.0;
  for (int n = 0; n < 10; ++n) {
    double r = draws.squeezing();
    double s = draws.squeezing();
    ProtocolOutput p =
        run_protocol("atemporal_telemirror", {}, finite({{"r", r}, {"s", s}}));
    Table want = merge({{"j", {1.0, 0.0}}}, resource_noise(s, -std::tanh(r)));
    finite_err = std::max(finite_err, diff_to(p, "jt", want));
  }
  o.require(finite_err <= 1e-12, "finite-r transmitted " + sci(finite_err));

  ProtocolOutput k = run_protocol("atemporal_telemirror");
  double t_err = diff_to(k, "jt", {{"j", {1.0, 0.0}}});
  o.require(t_err <= 1e-8, "transmitted at 20: " + sci(t_err));
  double k_err = std::max(diff_to(k, "r1", {{"e1", {1.0, 0.0}}}),
                          diff_to(k, "r2", {{"e2", {1.0, 0.0}}}));
  o.require(k_err <= 1e-8, "k recovery " + sci(k_err));

  ProtocolOutput c = run_protocol("atemporal_telemirror", {{"recovery", "chain"}});
  double c_err = std::max(diff_to(c, "r1", {{"e1", {1.0, 0.0}}}),
                          diff_to(c, "r2", {{"e2", {1.0, 0.0}}}));
  double mid_err =
      std::max(diff_to(c, "p1", {{"e1", {1.25, 0.0}}, {"e2", {0.0, -0.75}}}),
               diff_to(c, "p2", {{"e2", {1.25, 0.0}}, {"e1", {0.0, -0.75}}}));
  o.require(c_err <= 1e-8, "chain recovery " + sci(c_err));
  o.require(mid_err <= 1e-8, "chain intermediate " + sci(mid_err));

  // Composite squeeze equals the chain whenever the two gains coincide.
  double id_err = std::abs(std::acosh(1.25) - std::log(2.0));
  for (double g : {0.5, 1.0, 2.0, 5.0}) {
    ParamEnv env = finite({{"r", g}, {"s", g}});
    ProtocolOutput pk = run_protocol("atemporal_telemirror", {}, env);
    ProtocolOutput pc =
        run_protocol("atemporal_telemirror", {{"recovery", "chain"}}, env);
    for (const char* name : {"r1", "r2", "r1_perp", "r2_perp", "jt"}) {
      id_err = std::max(id_err, cross_difference(pk, pc, name));
    }
  }
  o.require(id_err <= 1e-12, "k identity " + sci(id_err));

  double perp_err = 0.0;
  bool perp_ok = limit_matches(k, "r1_perp", {{"j.perp", {1.0, 0.0}}}, 1e-15,
                               &perp_err);
  o.require(perp_ok, "r1 perp " + sci(perp_err));
  if (o.pass) {
    o.detail = "finite-r " + sci(finite_err) + ", chain " + sci(c_err) +
               ", k identity " + sci(id_err);
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  const double h = 1.0 / std::sqrt(2.0);
  double worst = 0.0;
  for (double s : {0.5, 1.5, 2.5}) {
    ProtocolOutput p = run_protocol("delayed_telefilter", {}, finite({{"s", s}}));
    // Pre-recombination: ½ j1 + ½ j2 ± û/√2 + (b − a†)·(phase)/√2.
    Table j1p = merge({{"j1", {0.5, 0.0}}, {"j2", {0.5, 0.0}}, {"u", {h, 0.0}}},
                      resource_noise(s, h));
    Table j2p = merge({{"j1", {0.5, 0.0}}, {"j2", {0.5, 0.0}}, {"u", {-h, 0.0}}},
                      resource_noise(s, h));
    Table sel = merge({{"j1", {h, 0.0}}, {"j2", {h, 0.0}}}, resource_noise(s, 1.0));
    worst = std::max({worst, diff_to(p, "j1p", j1p), diff_to(p, "j2p", j2p),
                      diff_to(p, "sel", sel), diff_to(p, "orth", {{"u", {1.0, 0.0}}})});
  }
  o.require(worst <= 1e-12, "two-bin outputs " + sci(worst));
  double grid = 0.0;
  for (int a = 0; a < 5; ++a) {
    for (int f = 0; f < 5; ++f) {
      double alpha = 0.1 + 0.2 * a;
      double phi1 = -kPi + 2.0 * kPi * f / 5.0;
      double phi2 = 0.7 * phi1 + 0.3;
      double s = 1.2;
      ProtocolOutput p = run_protocol(
          "delayed_telefilter", {},
          finite({{"s", s}, {"alpha", alpha}, {"phi1", phi1}, {"phi2", phi2}}));
      Table want = merge(
          {{"j1", {std::exp(-2.0 * kI * phi1) * std::sqrt(1.0 - alpha), 0.0}},
           {"j2", {std::exp(-2.0 * kI * phi2) * std::sqrt(alpha), 0.0}}},
          resource_noise(s, 1.0));
      grid = std::max(grid, diff_to(p, "sel", want));
    }
  }
  o.require(grid <= 1e-12, "arbitrary-weight grid " + sci(grid));
  if (o.pass) o.detail = "exact " + sci(worst) + ", 5x5 grid " + sci(grid);
  return o;
}

Outcome criterion5() {
  Outcome o;
  ProtocolOutput p = run_protocol("delayed_telemirror");
  const double h = 1.0 / std::sqrt(2.0);
  // α = ½, φ = −π/2: selected mode (j1 − j2)/√2 up to the global sign.
  double sel = diff_to(p, "sel", {{"j1", {-h, 0.0}}, {"j2", {-h, 0.0}}});
  double refl = std::max({diff_to(p, "r1", {{"v", {1.0, 0.0}}}),
                          diff_to(p, "r2", {{"j1", {h, 0.0}}, {"j2", {-h, 0.0}}}),
                          diff_to(p, "r3", {{"e1", {1.0, 0.0}}}),
                          diff_to(p, "r4", {{"e2", {1.0, 0.0}}})});
  o.require(sel <= 1e-8, "transmitted " + sci(sel));
  o.require(refl <= 1e-8, "reflected " + sci(refl));
  double perp = 0.0;
  const std::pair<const char*, const char*> quad[] = {
      {"r1_perp", "e2.perp"}, {"r2_perp", "v1.perp"},
      {"r3_perp", "j1.perp"}, {"r4_perp", "j2.perp"}};
  for (const auto& [out, mode] : quad) {
    double e = 0.0;
    bool ok = limit_matches(p, out, {{mode, {1.0, 0.0}}}, 1e-15, &e);
    o.require(ok, std::string(out) + " " + sci(e));
    perp = std::max(perp, e);
  }
  testing::Draws draws(55);
  double general = 0.0;
  for (int n = 0; n < 10; ++n) {
    ProtocolArgs args = {{"channel_phase", testing::num(draws.phase())}};
    ParamEnv env = finite({{"alpha", draws.alpha()},
                           {"phi", draws.phase()},
                           {"theta_plus", draws.phase()}});
    general = std::max(general,
                       expect_residual(run_protocol("delayed_telemirror", args, env)));
  }
  o.require(general <= 1e-8, "constrained draws " + sci(general));
  if (o.pass) {
    o.detail = "block " + sci(std::max(sel, refl)) + ", perp limit " +
               sci(perp) + ", draws " + sci(general);
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  testing::Draws draws(6);
  double exact = 0.0;
  for (int n = 0; n < 10; ++n) {
    ParamEnv env = finite({{"s", draws.squeezing()},
                           {"alpha", draws.alpha()},
                           {"phi1", draws.phase()},
                           {"phi2", draws.phase()}});
    exact = std::max(exact, expect_residual(run_protocol("nodelay_telefilter", {}, env)));
  }
  o.require(exact <= 1e-12, "finite-s outputs " + sci(exact));
  ProtocolOutput p = run_protocol("nodelay_telefilter");
  SignalingResult sig = signaling_test(p, 2);
  o.require(sig.applicable && sig.max_coefficient == 0.0,
            "signaling " + sci(sig.max_coefficient));
  SelectivityReport sel = selectivity_report(p, *p.target, p.env);
  double excess = sel.ports.at("orth").noise_excess;
  o.require(std::abs(excess - 2.0) <= 1e-8, "orthogonal excess " + sci(excess));
  if (o.pass) {
    o.detail = "outputs " + sci(exact) + ", signaling 0, orthogonal excess " +
               std::to_string(excess).substr(0, 6);
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  testing::Draws draws(7);
  double exact = 0.0;
  for (int n = 0; n < 10; ++n) {
    ParamEnv env = finite({{"s", draws.squeezing()},
                           {"r", draws.squeezing()},
                           {"alpha", draws.alpha()},
                           {"theta_minus", draws.phase()},
                           {"theta_plus", draws.phase()}});
    ProtocolOutput p = run_protocol("nodelay_telemirror", {}, env);
    for (const char* name : {"sel", "orth", "j1p", "j2p"}) {
      exact = std::max(exact, max_abs_difference(p.output(name),
                                                 p.expected_limit.at(name), p.env));
    }
  }
  o.require(exact <= 1e-12, "finite-r channels " + sci(exact));
  ProtocolOutput p = run_protocol("nodelay_telemirror");
  const double q = 1.0 / (2.0 * std::sqrt(2.0));
  const double s = 1.0;
  const double ch = std::cosh(s);
  const double sh = std::sinh(s);
  double block = std::max(
      {diff_to(p, "r1", {{"v", {1.5, 0.0}}, {"u", {0.0, -1.0}},
                         {"j1", {0.0, q}}, {"j2", {0.0, -q}}}),
       diff_to(p, "r2", {{"u", {1.0, 0.0}}, {"v", {0.0, -0.5}},
                         {"j1", {q, 0.0}}, {"j2", {-q, 0.0}}}),
       diff_to(p, "r3", {{"e1", {1.5 * ch - sh, 0.0}}, {"e2", {0.0, 1.5 * sh - ch}},
                         {"j1", {0.0, q}}, {"j2", {0.0, q}}}),
       diff_to(p, "r4", {{"e2", {ch - 0.5 * sh, 0.0}}, {"e1", {0.0, sh - 0.5 * ch}},
                         {"j1", {q, 0.0}}, {"j2", {q, 0.0}}})});
  o.require(block <= 1e-8, "reflected block " + sci(block));
  SignalingResult sig = signaling_test(p, 2);
  o.require(sig.applicable && sig.max_coefficient == 0.0,
            "signaling " + sci(sig.max_coefficient));
  if (o.pass) o.detail = "channels " + sci(exact) + ", block " + sci(block) + ", signaling 0";
  return o;
}

Outcome criterion8() {
  Outcome o;
  ProtocolOutput p = run_protocol("nodelay_independent");
  const double h = 1.0 / std::sqrt(2.0);
  double err = std::max(diff_to(p, "sym", {{"j1", {h, 0.0}}, {"j2", {h, 0.0}}}),
                        diff_to(p, "anti", {{"j1", {h, 0.0}}, {"j2", {-h, 0.0}}}));
  o.require(err <= 1e-8, "ports " + sci(err));
  SelectivityReport sel = selectivity_report(p, *p.target, p.env);
  o.require(sel.verdict == Selectivity::neither,
            "verdict " + std::string(selectivity_name(sel.verdict)));
  if (o.pass) o.detail = "ports " + sci(err) + ", verdict neither";
  return o;
}

std::string alpha_list(const std::vector<double>& a) {
  std::string out = "[";
  for (size_t k = 0; k < a.size(); ++k) out += (k ? "," : "") + testing::num(a[k]);
  return out + "]";
}

Outcome criterion9() {
  Outcome o;
  testing::Draws draws(9);
  double chain = 0.0;
  double ports = 0.0;
  double later = 0.0;
  for (int N = 2; N <= 6; ++N) {
    for (int n = 0; n < 10; ++n) {
      std::vector<double> alphas;
      for (int k = 0; k < N - 1; ++k) alphas.push_back(draws.alpha());
      ProtocolArgs args = {{"N", std::to_string(N)}, {"alphas", alpha_list(alphas)}};
      ProtocolOutput d = run_protocol("nmode_delayed_telefilter", args);
      ProtocolOutput z = run_protocol("nmode_nodelay_telefilter", args);
      for (const ProtocolOutput* p : {&d, &z}) {
        DoubleExpr sel = testing::coefficients(*p, "sel");
        double prefix = 1.0;
        for (int m = 1; m <= N; ++m) {
          double w = m < N ? prefix * (1.0 - alphas[m - 1]) : prefix;
          if (m < N) prefix *= alphas[m - 1];
          chain = std::max(chain, std::abs(std::abs(testing::coef_c(
                                               sel, "j" + std::to_string(m))) -
                                           std::sqrt(w)));
        }
      }
      for (int k = 1; k < N; ++k) {
        std::string name = "o" + std::to_string(k);
        ports = std::max(ports, max_abs_difference(
                                    d.output(name),
                                    ModeExpr::input("u" + std::to_string(k)), d.env));
      }
      for (int k = 1; k <= N; ++k) {
        const ModeExpr& e = z.output("j" + std::to_string(k) + "p");
        for (int m = k + 1; m <= N; ++m) {
          if (e.contains("j" + std::to_string(m))) later = 1.0;
        }
      }
    }
  }
  o.require(chain <= 1e-12, "chain weights " + sci(chain));
  o.require(ports <= kWorkingPrecisionZero,
            "delayed orthogonal ports " + sci(ports));
  o.require(later == 0.0, "no-delay later-bin dependence");

  // N = 2 against the two-mode builders, with cascade vacua renamed.
  auto rename = [](const DoubleExpr& e) {
    DoubleExpr out;
    for (const auto& [m, t] : e) {
      std::string n = m == "u1" ? "u" : m == "v1" ? "v" : m;
      out.emplace(n, t);
    }
    return out;
  };
  double reduce = 0.0;
  ParamEnv env = finite({{"s", 1.3}, {"alpha1", 0.35}, {"phi1", 0.4}, {"phi2", -0.9}});
  ParamEnv env2 = finite({{"s", 1.3}, {"alpha", 0.35}, {"phi1", 0.4}, {"phi2", -0.9}});
  const std::pair<const char*, const char*> pairs[] = {
      {"nmode_delayed_telefilter", "delayed_telefilter"},
      {"nmode_nodelay_telefilter", "nodelay_telefilter"}};
  for (const auto& [nm, two] : pairs) {
    ProtocolOutput a = run_protocol(nm, {{"N", "2"}}, env);
    ProtocolOutput b = run_protocol(two, {}, env2);
    for (const auto& [x, y] : {std::pair<std::string, std::string>{"sel", "sel"},
                               {"o1", "orth"}}) {
      DoubleExpr ea = rename(testing::coefficients(a, x));
      DoubleExpr eb = testing::coefficients(b, y);
      Table ref;
      for (const auto& [m, t] : eb) ref[m] = {t.c, t.d};
      reduce = std::max(reduce, testing::table_distance(ea, ref));
    }
  }
  o.require(reduce <= 1e-12, "N=2 reduction " + sci(reduce));
  if (o.pass) {
    o.detail = "chain " + sci(chain) + ", ports " + sci(ports) +
               ", N=2 reduction " + sci(reduce);
  }
  return o;
}

Outcome criterion10() {
  Outcome o;
  testing::Draws draws(10);
  double worst = 0.0;
  const std::vector<std::pair<std::string, ProtocolArgs>> mirrors = {
      {"atemporal_telemirror", {}},
      {"atemporal_telemirror", {{"recovery", "chain"}}},
      {"delayed_telemirror", {}},
      {"nodelay_telemirror", {}}};
  for (const auto& [name, args] : mirrors) {
    Circuit c = build_protocol(name, args);
    for (int n = 0; n < 20; ++n) {
      ProtocolOutput p = evaluate_circuit(c, testing::random_finite_params(c, &draws));
      BogoliubovReport b = check_bogoliubov(full_output_set(p), p.env, 1e-10);
      worst = std::max(worst, b.max_error);
      o.require(b.pass, name + " " + b.worst + " " + sci(b.max_error));
    }
  }
  if (o.pass) o.detail = "max commutator error " + sci(worst);
  return o;
}

Outcome criterion11() {
  Outcome o;
  testing::Draws draws(11);
  double worst = 0.0;
  for (const auto& info : protocol_registry()) {
    Circuit c = build_protocol(info.name);
    for (int n = 0; n < 10; ++n) {
      ParamEnv env = testing::random_finite_params(c, &draws);
      ProtocolOutput p = evaluate_circuit(c, env);
      MomentRecord m = covariance_oracle(c, env);
      double phase = draws.phase();
      for (const auto& out : p.outputs) {
        const OutputMoments& om = m.outputs.at(out.name);
        const std::pair<double, double> probes[] = {
            {0.0, om.var_x}, {kPi / 2, om.var_p}, {phase, om.variance(phase)}};
        for (const auto& [ph, cov] : probes) {
          double op = quadrature_variance(out.expr, ph, p.env);
          double err = std::abs(op - cov) / std::max(1.0, std::abs(op));
          worst = std::max(worst, err);
          o.require(err <= 1e-10, info.name + "/" + out.name + " " + sci(err));
        }
      }
    }
  }
  if (o.pass) o.detail = "max relative variance gap " + sci(worst);
  return o;
}

Outcome criterion12() {
  Outcome o;
  std::vector<std::pair<std::string, ProtocolArgs>> delayed = {
      {"delayed_telefilter", {}}, {"delayed_telemirror", {}}};
  std::vector<std::pair<std::string, ProtocolArgs>> nodelay = {
      {"nodelay_telefilter", {}}, {"nodelay_telemirror", {}}};
  for (int N = 2; N <= 6; ++N) {
    delayed.push_back({"nmode_delayed_telefilter", {{"N", std::to_string(N)}}});
    nodelay.push_back({"nmode_nodelay_telefilter", {{"N", std::to_string(N)}}});
  }
  for (const auto& [name, args] : delayed) {
    DependencyReport r = causality_report(run_protocol(name, args));
    o.require(r.verdict == CausalVerdict::causal, name + " not causal");
    o.require(r.input_bin_span > 0 && r.mandatory_delay == r.input_bin_span,
              name + " delay " + std::to_string(r.mandatory_delay));
  }
  {
    DependencyReport r = causality_report(run_protocol("delayed_telefilter"));
    for (const char* out : {"sel", "orth"}) {
      o.require(r.outputs.at(out).earliest_emission_bin == 2,
                std::string("emission of ") + out);
    }
  }
  for (const auto& [name, args] : nodelay) {
    DependencyReport r = causality_report(run_protocol(name, args));
    o.require(r.verdict == CausalVerdict::causal, name + " not causal");
    o.require(r.mandatory_delay == 0 && r.lower_triangular,
              name + " delay " + std::to_string(r.mandatory_delay));
  }
  Circuit bad = dsl::parse_circuit(
      testing::read_text(testing::golden_path("acausal_fixture.tls")));
  DependencyReport r = causality_report(run_circuit(bad));
  o.require(r.verdict == CausalVerdict::acausal, "fixture not flagged");
  if (o.pass) {
    o.detail = std::to_string(delayed.size()) + " delayed, " +
               std::to_string(nodelay.size()) + " no-delay, fixture acausal";
  }
  return o;
}

Outcome criterion13() {
  Outcome o;
  int files = 0;
  for (const auto& info : protocol_registry()) {
    std::string text =
        testing::read_text(testing::golden_path(info.name + ".tls"));
    try {
      Circuit c = dsl::parse_circuit(text);
      ProtocolOutput p = run_circuit(c);
      o.require(!p.outputs.empty(), info.name + " has no outputs");
      o.require(dsl::serialize(c) == text, info.name + " not byte-identical");
      ++files;
    } catch (const Error& e) {
      o.require(false, info.name + ": " + e.what());
    }
  }
  testing::Draws draws(13);
  int fuzzed = 0;
  for (int n = 0; n < 2000; ++n) {
    std::string text(static_cast<size_t>(draws.integer(0, 120)), '\0');
    for (char& ch : text) ch = static_cast<char>(draws.integer(0, 255));
    try {
      (void)dsl::parse_circuit(text);
    } catch (const Error&) {
    } catch (...) {
      o.require(false, "non-located exception from fuzz input");
    }
    ++fuzzed;
  }
  try {
    (void)dsl::parse_circuit("mode signal j rail=j bin=1\n\nx = phase(q, phi=0)\n");
    o.require(false, "undefined wire accepted");
  } catch (const Error& e) {
    o.require(e.line() == 3 && e.column() == 11,
              "location " + std::to_string(e.line()) + ":" + std::to_string(e.column()));
  }
  if (o.pass) {
    o.detail = std::to_string(files) + " golden files, " + std::to_string(fuzzed) +
               " fuzz inputs";
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"atemporal telefilter at unity gain", criterion1},
      {"finite-squeezing telefilter and telemirror", criterion2},
      {"all-optical telemirror", criterion3},
      {"delayed telefilter", criterion4},
      {"delayed telemirror", criterion5},
      {"no-delay telefilter", criterion6},
      {"no-delay telemirror", criterion7},
      {"independent-resource teleporter", criterion8},
      {"N-mode telefilters", criterion9},
      {"unitarity suite", criterion10},
      {"covariance oracle equivalence", criterion11},
      {"causality suite", criterion12},
      {"parser fixtures and fuzzing", criterion13},
  };
  int failed = 0;
  for (size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", k + 1,
                criteria[k].first.c_str(), o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
