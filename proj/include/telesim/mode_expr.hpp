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

#ifndef TELESIM_MODE_EXPR_HPP_
#define TELESIM_MODE_EXPR_HPP_

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "telesim/coef_expr.hpp"

namespace telesim {

enum class ModeKind { vacuum, seed, signal, lo };

inline std::string_view kind_name(ModeKind k) {
  switch (k) {
    case ModeKind::vacuum: return "vacuum";
    case ModeKind::seed: return "seed";
    case ModeKind::signal: return "signal";
    case ModeKind::lo: return "lo";
  }
  return "vacuum";
}

inline bool kind_from_name(std::string_view s, ModeKind* out) {
  for (ModeKind k : {ModeKind::vacuum, ModeKind::seed, ModeKind::signal,
                     ModeKind::lo}) {
    if (kind_name(k) == s) {
      *out = k;
      return true;
    }
  }
  return false;
}

// A fundamental input operator of a circuit.
struct ModeId {
  std::string name;
  std::string rail;
  int time_bin = 0;
  ModeKind kind = ModeKind::vacuum;

  friend bool operator==(const ModeId&, const ModeId&) = default;
};

// Coefficients of a and a-dagger for one input mode.
struct Term {
  CoefExpr c;
  CoefExpr d;
};

// Linear combination of input annihilation and creation operators.
class ModeExpr {
 public:
  using Map = std::map<std::string, Term>;

  ModeExpr() = default;

  static ModeExpr input(const std::string& mode) {
    ModeExpr out;
    out.terms_[mode] = Term{CoefExpr(1.0), CoefExpr(0.0)};
    return out;
  }

  const Map& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  bool contains(const std::string& mode) const {
    return terms_.count(mode) > 0;
  }
  const Term* find(const std::string& mode) const {
    auto it = terms_.find(mode);
    return it == terms_.end() ? nullptr : &it->second;
  }

  void add_term(const std::string& mode, const CoefExpr& c,
                const CoefExpr& d) {
    if (c.is_zero() && d.is_zero()) return;
    auto it = terms_.find(mode);
    if (it == terms_.end()) {
      terms_.emplace(mode, Term{c, d});
      return;
    }
    it->second.c = sum(it->second.c, c);
    it->second.d = sum(it->second.d, d);
    if (it->second.c.is_zero() && it->second.d.is_zero()) terms_.erase(it);
  }

  friend ModeExpr operator+(const ModeExpr& a, const ModeExpr& b) {
    ModeExpr out = a;
    for (const auto& [mode, t] : b.terms_) out.add_term(mode, t.c, t.d);
    return out;
  }
  friend ModeExpr operator-(const ModeExpr& a) { return CoefExpr(-1.0) * a; }
  friend ModeExpr operator-(const ModeExpr& a, const ModeExpr& b) {
    return a + (-b);
  }
  friend ModeExpr operator*(const CoefExpr& k, const ModeExpr& a) {
    ModeExpr out;
    if (k.is_zero()) return out;
    for (const auto& [mode, t] : a.terms_) {
      out.add_term(mode, k * t.c, k * t.d);
    }
    return out;
  }

 private:
  static CoefExpr sum(const CoefExpr& a, const CoefExpr& b) {
    using K = CoefExpr::Kind;
    if (a.kind() == K::constant && b.kind() == K::constant) {
      return CoefExpr::constant(a.node().re + b.node().re,
                                a.node().im + b.node().im);
    }
    return a + b;
  }

  Map terms_;
};

inline ModeExpr input_mode(const ModeId& id) { return ModeExpr::input(id.name); }

inline ModeExpr dagger(const ModeExpr& a) {
  ModeExpr out;
  for (const auto& [mode, t] : a.terms()) {
    out.add_term(mode, conj(t.d), conj(t.c));
  }
  return out;
}

inline ModeExpr lin_comb(
    const std::vector<std::pair<CoefExpr, ModeExpr>>& terms) {
  ModeExpr out;
  for (const auto& [k, e] : terms) out = out + k * e;
  return out;
}

// Keeps only the terms whose mode satisfies the predicate.
template <class Pred>
ModeExpr restrict_to(const ModeExpr& a, Pred keep) {
  ModeExpr out;
  for (const auto& [mode, t] : a.terms()) {
    if (keep(mode)) out.add_term(mode, t.c, t.d);
  }
  return out;
}

}  // namespace telesim

#endif  // TELESIM_MODE_EXPR_HPP_
