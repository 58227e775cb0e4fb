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

#ifndef TELESIM_TESTS_TEST_SUPPORT_HPP_
#define TELESIM_TESTS_TEST_SUPPORT_HPP_

#include <complex>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "telesim/telesim.hpp"

namespace telesim::testing {

using cd = std::complex<double>;

inline const double kPi = 3.14159265358979323846;
inline const cd kI{0.0, 1.0};

inline std::string golden_path(const std::string& name) {
  return std::string(TELESIM_GOLDEN_DIR) + "/" + name;
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Double-precision coefficients of one output.
inline DoubleExpr coefficients(const ProtocolOutput& p,
                               const std::string& output) {
  return evaluate_double(p.output(output), p.env);
}

inline cd coef_c(const DoubleExpr& e, const std::string& mode) {
  auto it = e.find(mode);
  return it == e.end() ? cd(0.0) : it->second.c;
}

inline cd coef_d(const DoubleExpr& e, const std::string& mode) {
  auto it = e.find(mode);
  return it == e.end() ? cd(0.0) : it->second.d;
}

// Largest deviation between an evaluated expression and a reference table of
// (c, d) pairs; modes missing on either side count as zero.
inline double table_distance(const DoubleExpr& e,
                             const std::map<std::string, std::pair<cd, cd>>& ref) {
  double worst = 0.0;
  for (const auto& [mode, t] : e) {
    auto it = ref.find(mode);
    cd c = it == ref.end() ? cd(0.0) : it->second.first;
    cd d = it == ref.end() ? cd(0.0) : it->second.second;
    worst = std::max({worst, std::abs(t.c - c), std::abs(t.d - d)});
  }
  for (const auto& [mode, cdp] : ref) {
    if (e.count(mode) == 0) {
      worst = std::max({worst, std::abs(cdp.first), std::abs(cdp.second)});
    }
  }
  return worst;
}

inline ParamEnv env_of(const std::map<std::string, double>& values) {
  ParamEnv env;
  for (const auto& [k, v] : values) env.set(k, v);
  return env;
}

inline std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

class Draws {
 public:
  explicit Draws(unsigned seed) : gen_(seed) {}
  double squeezing() { return uniform(0.5, 2.5); }
  double alpha() { return uniform(0.1, 0.9); }
  double phase() { return uniform(-kPi, kPi); }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen_);
  }
  int integer(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(gen_);
  }
  std::mt19937& engine() { return gen_; }

 private:
  std::mt19937 gen_;
};

// Finite random values for the free parameters of a built circuit. Derived
// parameters (those whose value refers to other parameters) are left alone.
inline ParamEnv random_finite_params(const Circuit& c, Draws* draws) {
  ParamEnv env;
  for (const auto& p : c.params) {
    std::set<std::string> refs;
    if (!p.infinite) p.value.collect_params(&refs);
    if (!refs.empty()) continue;
    const std::string& n = p.name;
    if (n == "s" || n == "r") {
      env.set(n, draws->squeezing());
    } else if (n.rfind("alpha", 0) == 0) {
      env.set(n, draws->alpha());
    } else if (n.rfind("phi", 0) == 0 || n.rfind("theta", 0) == 0 ||
               n == "out_phase") {
      env.set(n, draws->phase());
    }
  }
  return env;
}

// Relative agreement for quantities that may grow with squeezing.
inline bool close_relative(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

}  // namespace telesim::testing

#endif  // TELESIM_TESTS_TEST_SUPPORT_HPP_
