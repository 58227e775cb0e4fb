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

#ifndef TELESIM_VERIFY_COVARIANCE_HPP_
#define TELESIM_VERIFY_COVARIANCE_HPP_

#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "telesim/circuit.hpp"
#include "telesim/lower.hpp"

namespace telesim {

struct OutputMoments {
  double mean_x = 0.0;
  double mean_p = 0.0;
  double var_x = 0.0;
  double var_p = 0.0;
  double cov_xp = 0.0;

  double variance(double phase) const {
    double c = std::cos(phase);
    double s = std::sin(phase);
    return c * c * var_x + s * s * var_p + 2.0 * c * s * cov_xp;
  }
};

struct MomentRecord {
  std::vector<std::string> order;
  std::map<std::string, OutputMoments> outputs;
  // Covariance of (x, p) of every output, in `order`.
  Eigen::MatrixXd covariance;
};

namespace detail {

// Two real rows giving the x and p quadratures of an operator as linear
// forms over the input quadratures.
using QuadRows = Eigen::Matrix<double, 2, Eigen::Dynamic>;

// Real 2x2 block of z·a (annihilation part) or z·a† (creation part).
inline Eigen::Matrix2d annihilation_block(cdouble z) {
  Eigen::Matrix2d m;
  m << z.real(), -z.imag(), z.imag(), z.real();
  return m;
}

inline Eigen::Matrix2d creation_block(cdouble z) {
  Eigen::Matrix2d m;
  m << z.real(), z.imag(), z.imag(), -z.real();
  return m;
}

// Symplectic matrix of the two-port map out_k = Σ alpha_kl in_l + beta_kl in_l†.
inline Eigen::Matrix4d two_port(const Eigen::Matrix2cd& alpha,
                                const Eigen::Matrix2cd& beta) {
  Eigen::Matrix4d s;
  for (int k = 0; k < 2; ++k) {
    for (int l = 0; l < 2; ++l) {
      s.block<2, 2>(2 * k, 2 * l) =
          annihilation_block(alpha(k, l)) + creation_block(beta(k, l));
    }
  }
  return s;
}

inline std::pair<QuadRows, QuadRows> apply_two_port(const Eigen::Matrix4d& s,
                                                    const QuadRows& in1,
                                                    const QuadRows& in2) {
  Eigen::MatrixXd stacked(4, in1.cols());
  stacked << in1, in2;
  Eigen::MatrixXd out = s * stacked;
  return {out.topRows<2>(), out.bottomRows<2>()};
}

struct QuadRail {
  QuadRows zero;
  QuadRows perp;
};

// A classical signal M = R + iI with R, I Hermitian forms.
struct QuadSignal {
  Eigen::RowVectorXd re;
  Eigen::RowVectorXd im;
};

class CovariancePropagator {
 public:
  CovariancePropagator(const Circuit& c, const ParamEnv& env)
      : c_(c), env_(env), ev_(env_) {}

  MomentRecord run(const std::map<std::string, cdouble>& coherent) {
    std::map<std::string, int> column;
    for (const auto& m : c_.modes) {
      column[m.name] = static_cast<int>(column.size());
      column[m.perp_id()] = static_cast<int>(column.size());
    }
    n_ = 2 * static_cast<int>(column.size());
    for (const auto& m : c_.modes) {
      rails_[m.name] = QuadRail{unit(column.at(m.name)),
                                unit(column.at(m.perp_id()))};
    }
    for (const auto& st : c_.statements) apply(st);

    MomentRecord rec;
    Eigen::MatrixXd t(2 * c_.outputs.size(), n_);
    for (size_t k = 0; k < c_.outputs.size(); ++k) {
      const auto& o = c_.outputs[k];
      const QuadRail& r = rail(o.wire);
      t.middleRows<2>(2 * k) = o.perp ? r.perp : r.zero;
      rec.order.push_back(o.name);
    }
    Eigen::VectorXd mean_in = Eigen::VectorXd::Zero(n_);
    for (const auto& [id, amp] : coherent) {
      auto it = column.find(id);
      if (it == column.end()) throw Error("unknown coherent input '" + id + "'");
      mean_in(2 * it->second) = 2.0 * amp.real();
      mean_in(2 * it->second + 1) = 2.0 * amp.imag();
    }
    rec.covariance = t * t.transpose();
    Eigen::VectorXd mean = t * mean_in;
    for (size_t k = 0; k < rec.order.size(); ++k) {
      OutputMoments m;
      m.mean_x = mean(2 * k);
      m.mean_p = mean(2 * k + 1);
      m.var_x = rec.covariance(2 * k, 2 * k);
      m.var_p = rec.covariance(2 * k + 1, 2 * k + 1);
      m.cov_xp = rec.covariance(2 * k, 2 * k + 1);
      rec.outputs[rec.order[k]] = m;
    }
    return rec;
  }

 private:
  QuadRows unit(int col) const {
    QuadRows r = QuadRows::Zero(2, n_);
    r(0, 2 * col) = 1.0;
    r(1, 2 * col + 1) = 1.0;
    return r;
  }

  const QuadRail& rail(const std::string& name) const {
    auto it = rails_.find(name);
    if (it == rails_.end()) throw Error("undefined wire '" + name + "'");
    return it->second;
  }

  const QuadSignal& signal(const std::string& name) const {
    auto it = signals_.find(name);
    if (it == signals_.end()) throw Error("undefined signal '" + name + "'");
    return it->second;
  }

  cdouble value(const CoefExpr& e) { return to_cdouble(ev_(e)); }
  double real(const Statement& st, const std::string& key) {
    return value(st.arg(key)).real();
  }

  void apply(const Statement& st) {
    const cdouble i(0.0, 1.0);
    switch (st.op) {
      case Op::split: {
        double a = real(st, "alpha");
        double phi = real(st, "phi");
        double t = std::sqrt(a);
        double r = std::sqrt(1.0 - a);
        Eigen::Matrix2cd alpha;
        alpha << -i * std::exp(-i * phi) * r, t, t, -i * std::exp(i * phi) * r;
        Eigen::Matrix4d s = two_port(alpha, Eigen::Matrix2cd::Zero());
        const QuadRail& in_t = rail(st.inputs[0]);
        const QuadRail& in_r = rail(st.inputs[1]);
        auto [zm, zp] = apply_two_port(s, in_t.zero, in_r.zero);
        QuadRail minus{zm, in_r.perp};
        QuadRail plus{zp, in_t.perp};
        if (st.match == Match::all) {
          auto [pm, pp] = apply_two_port(s, in_t.perp, in_r.perp);
          minus.perp = pm;
          plus.perp = pp;
        }
        rails_[st.outputs[0]] = minus;
        rails_[st.outputs[1]] = plus;
        break;
      }
      case Op::squeeze:
      case Op::unsqueeze: {
        double g = real(st, "gain");
        if (st.op == Op::unsqueeze) g = -g;
        double theta = st.args.count("phase") ? real(st, "phase") : 0.0;
        Eigen::Matrix2cd alpha;
        alpha << std::cosh(g), 0.0, 0.0, std::cosh(g);
        cdouble sh = std::exp(i * theta) * std::sinh(g);
        Eigen::Matrix2cd beta;
        beta << 0.0, sh, sh, 0.0;
        const QuadRail& in1 = rail(st.inputs[0]);
        const QuadRail& in2 = rail(st.inputs[1]);
        auto [o1, o2] =
            apply_two_port(two_port(alpha, beta), in1.zero, in2.zero);
        rails_[st.outputs[0]] = QuadRail{o1, in1.perp};
        rails_[st.outputs[1]] = QuadRail{o2, in2.perp};
        break;
      }
      case Op::phase: {
        Eigen::Matrix2d rot = annihilation_block(std::exp(i * real(st, "phi")));
        const QuadRail& in = rail(st.inputs[0]);
        QuadRows perp = in.perp;
        if (st.match == Match::all) perp = rot * in.perp;
        rails_[st.outputs[0]] = QuadRail{rot * in.zero, perp};
        break;
      }
      case Op::homodyne: {
        const QuadRows& sig = rail(st.inputs[0]).zero;
        const QuadRows& res = rail(st.inputs[1]).zero;
        const double h = 1.0 / std::sqrt(2.0);
        QuadRows diff = h * (sig - res);
        QuadRows sum = h * (sig + res);
        double px = real(st, "xphase");
        double pp = real(st, "pphase");
        QuadSignal m;
        m.re = std::cos(px) * diff.row(0) + std::sin(px) * diff.row(1);
        m.im = std::cos(pp) * sum.row(0) + std::sin(pp) * sum.row(1);
        signals_[st.outputs[0]] = m;
        break;
      }
      case Op::combine: {
        QuadSignal m{Eigen::RowVectorXd::Zero(n_), Eigen::RowVectorXd::Zero(n_)};
        for (size_t k = 0; k < st.inputs.size(); ++k) {
          cdouble w = value(st.weights[k]);
          const QuadSignal& s = signal(st.inputs[k]);
          m.re += w.real() * s.re - w.imag() * s.im;
          m.im += w.imag() * s.re + w.real() * s.im;
        }
        signals_[st.outputs[0]] = m;
        break;
      }
      case Op::displace: {
        cdouble z = value(st.arg("gain"));
        const QuadRail& in = rail(st.inputs[0]);
        const QuadSignal& s = signal(st.inputs[1]);
        QuadRail out = in;
        out.zero.row(0) += 2.0 * (z.real() * s.re - z.imag() * s.im);
        out.zero.row(1) += 2.0 * (z.imag() * s.re + z.real() * s.im);
        rails_[st.outputs[0]] = out;
        break;
      }
    }
  }

  const Circuit& c_;
  ParamEnv env_;
  Evaluator<cdouble> ev_;
  int n_ = 0;
  std::map<std::string, QuadRail> rails_;
  std::map<std::string, QuadSignal> signals_;
};

}  // namespace detail

// Propagates first moments and the quadrature covariance of vacuum (or
// coherent) inputs through the circuit, element by element.
inline MomentRecord covariance_oracle(
    const Circuit& c, const ParamEnv& overrides = ParamEnv(),
    const std::map<std::string, cdouble>& coherent = {}) {
  if (c.protocol) {
    throw Error("protocol invocations must be expanded before evaluation");
  }
  detail::CovariancePropagator prop(c, circuit_env(c, overrides));
  return prop.run(coherent);
}

}  // namespace telesim

#endif  // TELESIM_VERIFY_COVARIANCE_HPP_
