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

#ifndef TELESIM_PROTOCOLS_HPP_
#define TELESIM_PROTOCOLS_HPP_

#include <algorithm>
#include <charconv>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "telesim/circuit.hpp"
#include "telesim/dsl/parser.hpp"
#include "telesim/lower.hpp"

namespace telesim {

// Raw protocol arguments, keyed by name, values as written in the source.
using ProtocolArgs = std::map<std::string, std::string>;

struct ProtocolArgSpec {
  std::string name;
  std::string fallback;
  std::string help;
};

struct ProtocolInfo {
  std::string name;
  std::string summary;
  std::vector<ProtocolArgSpec> args;
  std::function<std::string(const ProtocolArgs&)> script;
};

namespace detail {

// Accumulates DSL source text for a builder.
class Script {
 public:
  void comment(const std::string& text) { out_ += "# " + text + "\n"; }
  void blank() { out_ += "\n"; }
  void line(const std::string& text) { out_ += text + "\n"; }
  void param(const std::string& name, const std::string& value) {
    line("param " + name + " = " + value);
  }
  void mode(const std::string& kind, const std::string& name,
            const std::string& rail, int bin, const std::string& perp = "") {
    std::string s = "mode " + kind + " " + name + " rail=" + rail +
                    " bin=" + std::to_string(bin);
    if (!perp.empty()) s += " perp=" + perp;
    line(s);
  }
  void output(const std::string& name, const std::string& wire,
              const std::string& role, int slot = 0) {
    std::string s = "output " + name + " = " + wire + " role=" + role;
    if (slot > 0) s += " slot=" + std::to_string(slot);
    line(s);
  }
  const std::string& text() const { return out_; }

 private:
  std::string out_;
};

// Written-out linear combination of input modes.
class Terms {
 public:
  Terms& add(const std::string& coef, const std::string& mode) {
    parts_.emplace_back(coef, mode);
    return *this;
  }
  Terms& dag(const std::string& coef, const std::string& mode) {
    parts_.emplace_back(coef, "dag(" + mode + ")");
    return *this;
  }
  // coef * (b − a†) of the resource pair squeezed from (zero, dagged).
  Terms& noise(const std::string& coef, const std::string& zero,
               const std::string& dagged, const std::string& gain = "s") {
    const std::string g = "(cosh(" + gain + ") - sinh(" + gain + "))";
    if (coef == "1") {
      add(g, zero);
      return dag("-" + g, dagged);
    }
    add("(" + coef + ")*" + g, zero);
    return dag("-(" + coef + ")*" + g, dagged);
  }
  Terms& append(const Terms& other) {
    parts_.insert(parts_.end(), other.parts_.begin(), other.parts_.end());
    return *this;
  }
  std::string text() const {
    if (parts_.empty()) return "0";
    std::string out;
    for (size_t k = 0; k < parts_.size(); ++k) {
      if (k > 0) out += " + ";
      if (parts_[k].first == "1") {
        out += parts_[k].second;
      } else {
        out += "(" + parts_[k].first + ")*" + parts_[k].second;
      }
    }
    return out;
  }

 private:
  std::vector<std::pair<std::string, std::string>> parts_;
};

inline void expect(Script* s, const std::string& name, const Terms& t) {
  s->line("expect " + name + " = " + t.text());
}

inline void resource(Script* s, bool blank_after = true) {
  s->mode("seed", "e1", "a", 0, "e2");
  s->mode("seed", "e2", "b", 0, "e1");
  if (blank_after) s->blank();
}

inline std::string choice(const ProtocolArgs& args, const std::string& key,
                          const std::string& fallback,
                          const std::vector<std::string>& allowed) {
  auto it = args.find(key);
  std::string v = it == args.end() ? fallback : it->second;
  for (const auto& a : allowed) {
    if (a == v) return v;
  }
  std::string list;
  for (const auto& a : allowed) list += (list.empty() ? "" : "|") + a;
  throw Error("argument " + key + " must be one of " + list + ", got '" + v +
              "'");
}

inline int integer_arg(const ProtocolArgs& args, const std::string& key,
                       int fallback) {
  auto it = args.find(key);
  if (it == args.end()) return fallback;
  int v = 0;
  const std::string& s = it->second;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw Error("argument " + key + " must be an integer, got '" + s + "'");
  }
  return v;
}

// Splits "[x, y, z]" into its top-level elements.
inline std::vector<std::string> list_arg(const ProtocolArgs& args,
                                         const std::string& key) {
  auto it = args.find(key);
  if (it == args.end()) return {};
  std::string s = it->second;
  auto trim = [](std::string x) {
    size_t a = x.find_first_not_of(" \t");
    size_t b = x.find_last_not_of(" \t");
    return a == std::string::npos ? std::string() : x.substr(a, b - a + 1);
  };
  s = trim(s);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
    throw Error("argument " + key + " must be a list like [0.5, 0.25]");
  }
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (size_t k = 1; k + 1 < s.size(); ++k) {
    char ch = s[k];
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  for (const auto& e : out) {
    if (e.empty()) throw Error("argument " + key + " has an empty element");
    dsl::parse_expression(e);
  }
  return out;
}

inline std::string gain_factor(const ProtocolArgs& args) {
  return choice(args, "gain_mode", "unity", {"unity", "tanh"}) == "tanh"
             ? "tanh(s)*"
             : "";
}

// ---------------------------------------------------------------------------

inline std::string atemporal_telefilter(const ProtocolArgs& args) {
  const bool tanh_gain =
      choice(args, "gain_mode", "unity", {"unity", "tanh"}) == "tanh";
  Script s;
  s.comment("Atemporal telefilter: dual homodyne on the signal and one half");
  s.comment("of a two-mode squeezed resource, fed forward as a displacement.");
  s.blank();
  s.param("s", "infinity");
  s.blank();
  resource(&s, false);
  s.mode("signal", "j", "j", 1);
  s.blank();
  s.line("(a, b) = squeeze(e1, e2, gain=s)");
  s.line("M = homodyne(j, a, xphase=0, pphase=pi/2)");
  s.line(std::string("jout = displace(b, M, gain=") +
         (tanh_gain ? "tanh(s)/sqrt(2)" : "1/sqrt(2)") + ")");
  s.blank();
  s.output("out", "jout", "transmitted", 1);
  s.output("out_perp", "jout.perp", "transmitted", 1);
  s.blank();
  Terms out;
  if (tanh_gain) {
    out.add("tanh(s)", "j").add("sech(s)", "e2");
  } else {
    out.add("1", "j").noise("1", "e2", "e1");
  }
  expect(&s, "out", out);
  expect(&s, "out_perp", Terms().add("1", "e1.perp"));
  s.line("target = j");
  return s.text();
}

inline std::string atemporal_telemirror(const ProtocolArgs& args) {
  const bool chain =
      choice(args, "recovery", "k", {"k", "chain"}) == "chain";
  const bool finite =
      choice(args, "efficiency", "ideal", {"ideal", "finite"}) == "finite";
  Script s;
  s.comment("All-optical telemirror: the signal is amplified into a classical");
  s.comment("channel and mixed into the resource half; the reflected modes");
  s.comment("are recovered by inverse squeezing.");
  s.blank();
  s.param("s", "infinity");
  if (finite) {
    s.param("r", "s");
    s.param("eta", "2/(3 + cosh(2*s))");
  } else {
    s.param("r", "infinity");
    s.param("eta", "1/(cosh(r)*cosh(r))");
  }
  s.param("t", "arccosh(5/4)");
  if (!chain) s.param("k", "r + s - t");
  s.blank();
  resource(&s, false);
  s.mode("signal", "j", "j", 1);
  s.blank();
  s.line("(a, b) = squeeze(e1, e2, gain=s)");
  s.line("(c, ap) = squeeze(j, a, gain=r)");
  s.line("(cp, jp) = split(c, b, alpha=eta, phi=-pi/2)");
  if (chain) {
    s.line("(q1, q2) = unsqueeze(ap, cp, gain=r)");
    s.line("(p1, p2) = unsqueeze(q1, q2, gain=s)");
    s.line("(r1w, r2w) = squeeze(p1, p2, gain=t)");
  } else {
    s.line("(r1w, r2w) = unsqueeze(ap, cp, gain=k)");
  }
  s.blank();
  s.output("jt", "jp", "transmitted", 1);
  s.output("jt_perp", "jp.perp", "transmitted", 1);
  s.output("r1", "r1w", "reflected");
  s.output("r2", "r2w", "reflected");
  s.output("r1_perp", "r2w.perp", "reflected");
  s.output("r2_perp", "r1w.perp", "reflected");
  if (chain) {
    s.output("p1", "p1", "auxiliary");
    s.output("p2", "p2", "auxiliary");
  }
  s.blank();
  if (finite) {
    expect(&s, "jt",
           Terms()
               .add("sqrt(2)*cosh(s)/sqrt(3 + cosh(2*s))", "j")
               .add("-sqrt(2)/sqrt(3 + cosh(2*s))", "e2"));
    expect(&s, "jt_perp",
           Terms().add("sqrt(eta)", "j.perp").add("-sqrt(1 - eta)", "e1.perp"));
  } else {
    expect(&s, "jt", Terms().add("1", "j").noise("-tanh(r)", "e2", "e1"));
    expect(&s, "jt_perp",
           Terms().add("sech(r)", "j.perp").add("-tanh(r)", "e1.perp"));
    expect(&s, "r1", Terms().add("1", "e1"));
    expect(&s, "r2", Terms().add("1", "e2"));
    expect(&s, "r1_perp", Terms().add("1", "j.perp"));
    expect(&s, "r2_perp", Terms().add("1", "e2.perp"));
    if (chain) {
      expect(&s, "p1", Terms().add("5/4", "e1").dag("-3/4", "e2"));
      expect(&s, "p2", Terms().add("5/4", "e2").dag("-3/4", "e1"));
    }
  }
  s.line("target = j");
  return s.text();
}

inline void two_bin_modes(Script* s) {
  resource(s, false);
  s->mode("vacuum", "u", "b", 0, "u1");
  s->mode("vacuum", "v", "a", 0, "v1");
  s->mode("signal", "j1", "j", 1);
  s->mode("signal", "j2", "j", 2);
  s->blank();
}

inline std::string delayed_telefilter(const ProtocolArgs& args) {
  const std::string g = gain_factor(args);
  Script s;
  s.comment("Time-delayed telefilter: both bins are measured against a");
  s.comment("distributed resource and a single combined classical signal");
  s.comment("displaces both resource halves once the late bin has arrived.");
  s.blank();
  s.param("s", "infinity");
  s.param("alpha", "1/2");
  s.param("phi", "-pi/2");
  s.param("phi1", "0");
  s.param("phi2", "0");
  s.blank();
  two_bin_modes(&s);
  s.line("(a, b) = squeeze(e1, e2, gain=s)");
  s.line("(am, ap) = split(a, v, alpha=alpha, phi=phi)");
  s.line("(bm, bp) = split(b, u, alpha=alpha, phi=phi)");
  s.line("M1 = homodyne(j1, am, xphase=phi1, pphase=phi1 + pi/2)");
  s.line("M2 = homodyne(j2, ap, xphase=phi2, pphase=phi2 + pi/2)");
  s.line("M = combine((" + g +
         "-i*exp(-i*(phi + phi1))*(1 - alpha)/sqrt(2))*M1, (" + g +
         "exp(-i*phi2)*sqrt(alpha*(1 - alpha))/sqrt(2))*M2)");
  s.line("j1p = displace(bm, M, gain=-i*exp(-i*phi))");
  s.line("j2p = displace(bp, M, gain=sqrt(alpha)/sqrt(1 - alpha))");
  s.line("(orth, sel) = split(j2p, j1p, alpha=alpha, phi=phi + pi)");
  s.blank();
  s.output("sel", "sel", "transmitted");
  s.output("orth", "orth", "transmitted");
  s.output("sel_perp", "sel.perp", "transmitted");
  s.output("orth_perp", "orth.perp", "transmitted");
  s.output("j1p", "j1p", "stage", 1);
  s.output("j2p", "j2p", "stage", 2);
  s.blank();
  const std::string d1 = "-i*exp(-i*phi)*sqrt(1 - alpha)";
  const std::string d2 = "sqrt(alpha)";
  const std::string w1 = "-i*exp(-i*(phi + 2*phi1))*sqrt(1 - alpha)";
  const std::string w2 = "exp(-2*i*phi2)*sqrt(alpha)";
  Terms target;
  target.add(w1, "j1").add(w2, "j2");
  if (g.empty()) {
    expect(&s, "sel", Terms(target).noise("1", "e2", "e1"));
    expect(&s, "j1p",
           Terms()
               .add("-exp(-2*i*(phi + phi1))*(1 - alpha)", "j1")
               .add("-i*exp(-i*(phi + 2*phi2))*sqrt(alpha*(1 - alpha))", "j2")
               .noise(d1, "e2", "e1")
               .add("sqrt(alpha)", "u"));
    expect(&s, "j2p",
           Terms()
               .add("-i*exp(-i*(phi + 2*phi1))*sqrt(alpha*(1 - alpha))", "j1")
               .add("exp(-2*i*phi2)*alpha", "j2")
               .noise(d2, "e2", "e1")
               .add("-i*exp(i*phi)*sqrt(1 - alpha)", "u"));
  } else {
    expect(&s, "sel",
           Terms()
               .add("tanh(s)*" + w1, "j1")
               .add("tanh(s)*" + w2, "j2")
               .add("sech(s)", "e2"));
  }
  expect(&s, "orth", Terms().add("1", "u"));
  expect(&s, "sel_perp", Terms().add("1", "e1.perp"));
  expect(&s, "orth_perp", Terms().add("1", "u1.perp"));
  s.line("target = " + target.text());
  return s.text();
}

inline std::string delayed_telemirror(const ProtocolArgs& args) {
  auto it = args.find("channel_phase");
  const std::string channel =
      it == args.end() ? std::string("0") : it->second;
  dsl::parse_expression(channel);
  Script s;
  s.comment("Time-delayed telemirror: each bin is amplified into a classical");
  s.comment("channel, the channels are mixed and fed into the distributed");
  s.comment("resource halves, and the reflected modes are recovered by");
  s.comment("inverse squeezing.");
  s.blank();
  s.param("s", "infinity");
  s.param("r", "infinity");
  s.param("alpha", "1/2");
  s.param("phi", "-pi/2");
  s.param("theta_plus", "-pi/2");
  s.param("phic10", channel);
  s.param("phic20", "theta_plus - pi/2");
  s.param("theta_minus", "phi + theta_plus + pi/2");
  s.param("phic0", "phi + phic10 - phic20");
  s.param("chi", "pi - phi");
  s.param("k", "r + s - arccosh(5/4)");
  s.blank();
  two_bin_modes(&s);
  s.line("(a, b) = squeeze(e1, e2, gain=s)");
  s.line("(am, ap) = split(a, v, alpha=alpha, phi=phi)");
  s.line("(bm, bp) = split(b, u, alpha=alpha, phi=phi)");
  s.line("(c1, amp) = squeeze(j1, am, gain=r)");
  s.line("(c2, app) = squeeze(j2, ap, gain=r)");
  s.line("c1ph = phase(c1, phi=phic10, match=zero)");
  s.line("c2ph = phase(c2, phi=phic20, match=zero)");
  s.line("(cm, cp) = split(c2ph, c1ph, alpha=alpha, phi=-phic0, match=zero)");
  s.line(
      "(j1p, cpp) = split(cp, bm, alpha=1 - (1 - alpha)/(cosh(r)*cosh(r)), "
      "phi=theta_minus)");
  s.line(
      "(j2p, cppp) = split(cpp, bp, alpha=1 - alpha/(cosh(r)*cosh(r)), "
      "phi=theta_plus)");
  s.line("(orth, sel) = split(j2p, j1p, alpha=alpha, phi=-chi)");
  s.line("x = phase(amp, phi=-phic10, match=zero)");
  s.line("w = phase(app, phi=pi/2 - phic0 - phic20, match=zero)");
  s.line("(o20, o10p) = split(x, w, alpha=1 - alpha, phi=-pi/2)");
  s.line("(r1w, r2w) = unsqueeze(o20, cm, gain=r)");
  s.line("o10 = phase(o10p, phi=pi/2 + phic0, match=zero)");
  s.line("(r3v, r4v) = unsqueeze(o10, cppp, gain=k)");
  s.line("r3w = phase(r3v, phi=phic20, match=zero)");
  s.line("r4w = phase(r4v, phi=-phic20, match=zero)");
  s.blank();
  s.output("sel", "sel", "transmitted");
  s.output("orth", "orth", "transmitted");
  s.output("sel_perp", "sel.perp", "transmitted");
  s.output("orth_perp", "orth.perp", "transmitted");
  s.output("r1", "r1w", "reflected");
  s.output("r2", "r2w", "reflected");
  s.output("r3", "r3w", "reflected");
  s.output("r4", "r4w", "reflected");
  s.output("r1_perp", "r1w.perp", "reflected");
  s.output("r2_perp", "r3w.perp", "reflected");
  s.output("r3_perp", "r2w.perp", "reflected");
  s.output("r4_perp", "r4w.perp", "reflected");
  s.output("j1p", "j1p", "stage", 1);
  s.output("j2p", "j2p", "stage", 2);
  s.blank();
  Terms target;
  target.add("i*exp(-i*phi)*sqrt(1 - alpha)", "j1").add("-sqrt(alpha)", "j2");
  expect(&s, "sel", Terms(target).noise("1", "e2", "e1"));
  expect(&s, "orth", Terms().add("1", "u"));
  expect(&s, "sel_perp", Terms().add("1", "e1.perp"));
  expect(&s, "orth_perp", Terms().add("1", "u1.perp"));
  expect(&s, "r1", Terms().add("exp(-i*phic10)", "v"));
  expect(&s, "r2",
         Terms()
             .add("exp(i*phic10)*sqrt(alpha)", "j1")
             .add("-i*exp(i*(phic10 + phi))*sqrt(1 - alpha)", "j2"));
  expect(&s, "r3", Terms().add("1", "e1"));
  expect(&s, "r4", Terms().add("1", "e2"));
  expect(&s, "r1_perp",
         Terms()
             .add("sqrt(alpha*(1 - alpha))*(1 - i*exp(-i*phi))", "e2.perp")
             .add("alpha - i*exp(i*phi)*(1 - alpha)", "v1.perp"));
  expect(&s, "r2_perp",
         Terms()
             .add("-alpha - i*exp(-i*phi)*(1 - alpha)", "e2.perp")
             .add("sqrt(alpha*(1 - alpha))*(1 + i*exp(i*phi))", "v1.perp"));
  expect(&s, "r3_perp", Terms().add("1", "j1.perp"));
  expect(&s, "r4_perp", Terms().add("1", "j2.perp"));
  s.line("target = " + target.text());
  return s.text();
}

inline std::string nodelay_independent(const ProtocolArgs& args) {
  const std::string g = gain_factor(args);
  Script s;
  s.comment("Two independent telefilters, one per time bin, each with its own");
  s.comment("resource; the outputs are recombined on a balanced beamsplitter.");
  s.blank();
  s.param("s", "infinity");
  s.blank();
  resource(&s, false);
  s.mode("seed", "e3", "y", 0, "e4");
  s.mode("seed", "e4", "z", 0, "e3");
  s.mode("signal", "j1", "j", 1);
  s.mode("signal", "j2", "j", 2);
  s.blank();
  s.line("(a, b) = squeeze(e1, e2, gain=s)");
  s.line("(y, z) = squeeze(e3, e4, gain=s)");
  s.line("M1 = homodyne(j1, a, xphase=0, pphase=pi/2)");
  s.line("M2 = homodyne(j2, y, xphase=0, pphase=pi/2)");
  s.line("j1p = displace(b, M1, gain=" + g + "1/sqrt(2))");
  s.line("j2p = displace(z, M2, gain=" + g + "1/sqrt(2))");
  s.line("(sym, anti) = split(j1p, j2p, alpha=1/2, phi=-pi/2)");
  s.blank();
  s.output("sym", "sym", "transmitted");
  s.output("anti", "anti", "transmitted");
  s.output("sym_perp", "sym.perp", "transmitted");
  s.output("anti_perp", "anti.perp", "transmitted");
  s.output("j1p", "j1p", "stage", 1);
  s.output("j2p", "j2p", "stage", 2);
  s.blank();
  const std::string h = "1/sqrt(2)";
  if (g.empty()) {
    expect(&s, "sym",
           Terms()
               .add(h, "j1")
               .add(h, "j2")
               .noise(h, "e2", "e1")
               .noise(h, "e4", "e3"));
    expect(&s, "anti",
           Terms()
               .add(h, "j1")
               .add("-" + h, "j2")
               .noise(h, "e2", "e1")
               .noise("-" + h, "e4", "e3"));
    expect(&s, "j1p", Terms().add("1", "j1").noise("1", "e2", "e1"));
    expect(&s, "j2p", Terms().add("1", "j2").noise("1", "e4", "e3"));
  } else {
    expect(&s, "sym",
           Terms()
               .add("tanh(s)/sqrt(2)", "j1")
               .add("tanh(s)/sqrt(2)", "j2")
               .add("sech(s)/sqrt(2)", "e2")
               .add("sech(s)/sqrt(2)", "e4"));
    expect(&s, "anti",
           Terms()
               .add("tanh(s)/sqrt(2)", "j1")
               .add("-tanh(s)/sqrt(2)", "j2")
               .add("sech(s)/sqrt(2)", "e2")
               .add("-sech(s)/sqrt(2)", "e4"));
  }
  expect(&s, "sym_perp",
         Terms().add(h, "e1.perp").add(h, "e3.perp"));
  expect(&s, "anti_perp",
         Terms().add(h, "e1.perp").add("-" + h, "e3.perp"));
  s.line("target = (" + h + ")*j1 + (" + h + ")*j2");
  return s.text();
}

inline std::string nodelay_telefilter(const ProtocolArgs& args) {
  const std::string g = gain_factor(args);
  Script s;
  s.comment("No-delay telefilter: each bin is measured and fed forward to its");
  s.comment("own resource half as soon as it arrives.");
  s.blank();
  s.param("s", "infinity");
  s.param("alpha", "1/2");
  s.param("phi1", "0");
  s.param("phi2", "0");
  s.blank();
  two_bin_modes(&s);
  s.line("(a, b) = squeeze(e1, e2, gain=s)");
  s.line("(am, ap) = split(a, v, alpha=alpha, phi=-pi/2)");
  s.line("(bm, bp) = split(b, u, alpha=alpha, phi=-pi/2)");
  s.line("M1 = homodyne(j1, am, xphase=phi1, pphase=phi1 + pi/2)");
  s.line("M2 = homodyne(j2, ap, xphase=phi2, pphase=phi2 + pi/2)");
  s.line("j1p = displace(bm, M1, gain=" + g + "exp(-i*phi1)/sqrt(2))");
  s.line("j2p = displace(bp, M2, gain=" + g + "exp(-i*phi2)/sqrt(2))");
  s.line("(orth, sel) = split(j2p, j1p, alpha=alpha, phi=pi/2)");
  s.blank();
  s.output("sel", "sel", "transmitted");
  s.output("orth", "orth", "transmitted");
  s.output("sel_perp", "sel.perp", "transmitted");
  s.output("orth_perp", "orth.perp", "transmitted");
  s.output("j1p", "j1p", "stage", 1);
  s.output("j2p", "j2p", "stage", 2);
  s.blank();
  const std::string w1 = "exp(-2*i*phi1)*sqrt(1 - alpha)";
  const std::string w2 = "exp(-2*i*phi2)*sqrt(alpha)";
  Terms target;
  target.add(w1, "j1").add(w2, "j2");
  if (g.empty()) {
    expect(&s, "sel", Terms(target).noise("1", "e2", "e1"));
    expect(&s, "orth",
           Terms()
               .add("exp(-2*i*phi1)*sqrt(alpha)", "j1")
               .add("-exp(-2*i*phi2)*sqrt(1 - alpha)", "j2")
               .add("1", "u")
               .dag("-1", "v"));
    expect(&s, "j1p",
           Terms()
               .add("exp(-2*i*phi1)", "j1")
               .noise("sqrt(1 - alpha)", "e2", "e1")
               .add("sqrt(alpha)", "u")
               .dag("-sqrt(alpha)", "v"));
    expect(&s, "j2p",
           Terms()
               .add("exp(-2*i*phi2)", "j2")
               .noise("sqrt(alpha)", "e2", "e1")
               .add("-sqrt(1 - alpha)", "u")
               .dag("sqrt(1 - alpha)", "v"));
  }
  expect(&s, "sel_perp", Terms().add("1", "e1.perp"));
  expect(&s, "orth_perp", Terms().add("1", "u1.perp"));
  s.line("target = " + target.text());
  return s.text();
}

inline std::string nodelay_telemirror(const ProtocolArgs&) {
  Script s;
  s.comment("No-delay telemirror: each bin is amplified into its own channel");
  s.comment("and mixed into its own resource half on arrival; the reflected");
  s.comment("modes are recovered pairwise by inverse squeezing.");
  s.blank();
  s.param("s", "1");
  s.param("r", "infinity");
  s.param("alpha", "1/2");
  s.param("theta_minus", "-pi/2");
  s.param("theta_plus", "-pi/2");
  s.param("out_phase", "pi");
  s.param("pc1", "pi/2 - theta_minus + pi");
  s.param("pc2", "pi/2 - theta_plus + pi");
  s.param("eta", "tanh(r)*tanh(r)");
  s.blank();
  two_bin_modes(&s);
  s.line("(a, b) = squeeze(e1, e2, gain=s)");
  s.line("(am, ap) = split(a, v, alpha=alpha, phi=-pi/2)");
  s.line("(bm, bp) = split(b, u, alpha=alpha, phi=-pi/2)");
  s.line("(c1, amp) = squeeze(j1, am, gain=r, phase=pc1)");
  s.line("(c2, app) = squeeze(j2, ap, gain=r, phase=pc2)");
  s.line("(j1s, ct1) = split(c1, bm, alpha=eta, phi=-theta_minus)");
  s.line("(j2s, ct2) = split(c2, bp, alpha=eta, phi=-theta_plus)");
  s.line("j1p = phase(j1s, phi=out_phase)");
  s.line("j2p = phase(j2s, phi=out_phase)");
  s.line("(orth, sel) = split(j2p, j1p, alpha=alpha, phi=pi/2)");
  s.line("c1r = phase(ct1, phi=-pc1, match=zero)");
  s.line("c2r = phase(ct2, phi=-pc2, match=zero)");
  s.line("(av, aa) = split(app, amp, alpha=alpha, phi=pi/2)");
  s.line("(cu, cb) = split(c2r, c1r, alpha=alpha, phi=pi/2, match=zero)");
  s.line("(r1w, r2w) = unsqueeze(av, cu, gain=r)");
  s.line("(r3w, r4w) = unsqueeze(aa, cb, gain=r)");
  s.blank();
  s.output("sel", "sel", "transmitted");
  s.output("orth", "orth", "transmitted");
  s.output("sel_perp", "sel.perp", "transmitted");
  s.output("orth_perp", "orth.perp", "transmitted");
  s.output("r1", "r1w", "reflected");
  s.output("r2", "r2w", "reflected");
  s.output("r3", "r3w", "reflected");
  s.output("r4", "r4w", "reflected");
  s.output("r1_perp", "r3w.perp", "reflected");
  s.output("r2_perp", "r1w.perp", "reflected");
  s.output("r3_perp", "r2w.perp", "reflected");
  s.output("r4_perp", "r4w.perp", "reflected");
  s.output("j1p", "j1p", "stage", 1);
  s.output("j2p", "j2p", "stage", 2);
  s.blank();
  const std::string w1 = "-i*exp(i*(out_phase + theta_minus))";
  const std::string w2 = "-i*exp(i*(out_phase + theta_plus))";
  const std::string tg = "exp(i*out_phase)*tanh(r)";
  Terms target;
  target.add(w1 + "*sqrt(1 - alpha)", "j1").add(w2 + "*sqrt(alpha)", "j2");
  expect(&s, "sel", Terms(target).noise(tg, "e2", "e1"));
  expect(&s, "orth",
         Terms()
             .add(w1 + "*sqrt(alpha)", "j1")
             .add("-" + w2 + "*sqrt(1 - alpha)", "j2")
             .add(tg, "u")
             .dag("-" + tg, "v"));
  expect(&s, "sel_perp", Terms().add("exp(i*out_phase)", "e1.perp"));
  expect(&s, "orth_perp", Terms().add("exp(i*out_phase)", "u1.perp"));
  const std::string m1 = "i*exp(i*theta_minus)/2";
  const std::string m2 = "i*exp(i*theta_plus)/2";
  const std::string n1 = "-i*exp(-i*theta_minus)/2";
  const std::string n2 = "-i*exp(-i*theta_plus)/2";
  expect(&s, "r1",
         Terms()
             .add("3/2", "v")
             .dag("-1", "u")
             .dag(n1 + "*sqrt(alpha)", "j1")
             .dag("-" + n2 + "*sqrt(1 - alpha)", "j2"));
  expect(&s, "r2",
         Terms()
             .add(m1 + "*sqrt(alpha)", "j1")
             .add("-" + m2 + "*sqrt(1 - alpha)", "j2")
             .add("1", "u")
             .dag("-1/2", "v"));
  // 3/2 a − b† and b − a†/2 written out over the seeds.
  expect(&s, "r3",
         Terms()
             .add("3/2*cosh(s) - sinh(s)", "e1")
             .dag("3/2*sinh(s) - cosh(s)", "e2")
             .dag(n1 + "*sqrt(1 - alpha)", "j1")
             .dag(n2 + "*sqrt(alpha)", "j2"));
  expect(&s, "r4",
         Terms()
             .add(m1 + "*sqrt(1 - alpha)", "j1")
             .add(m2 + "*sqrt(alpha)", "j2")
             .add("cosh(s) - sinh(s)/2", "e2")
             .dag("sinh(s) - cosh(s)/2", "e1"));
  expect(&s, "r1_perp", Terms().add("1", "e2.perp"));
  expect(&s, "r2_perp", Terms().add("1", "v1.perp"));
  expect(&s, "r3_perp", Terms().add("1", "j1.perp"));
  expect(&s, "r4_perp", Terms().add("1", "j2.perp"));
  expect(&s, "j1p",
         Terms()
             .add(w1, "j1")
             .noise(tg + "*sqrt(1 - alpha)", "e2", "e1")
             .add(tg + "*sqrt(alpha)", "u")
             .dag("-" + tg + "*sqrt(alpha)", "v"));
  expect(&s, "j2p",
         Terms()
             .add(w2, "j2")
             .noise(tg + "*sqrt(alpha)", "e2", "e1")
             .add("-" + tg + "*sqrt(1 - alpha)", "u")
             .dag(tg + "*sqrt(1 - alpha)", "v"));
  s.line("target = " + target.text());
  return s.text();
}

struct CascadeSetup {
  int n = 2;
  std::vector<std::string> alphas;
  std::vector<std::string> phis;
};

inline CascadeSetup cascade_setup(const ProtocolArgs& args) {
  CascadeSetup c;
  c.n = integer_arg(args, "N", 2);
  if (c.n < 2) throw Error("N must be at least 2");
  if (c.n > 64) throw Error("N must be at most 64");
  c.alphas = list_arg(args, "alphas");
  c.phis = list_arg(args, "phis");
  if (c.alphas.empty()) {
    for (int k = 1; k < c.n; ++k) {
      c.alphas.push_back(std::to_string(c.n - k) + "/" +
                         std::to_string(c.n - k + 1));
    }
  }
  if (c.phis.empty()) c.phis.assign(c.n, "0");
  if (static_cast<int>(c.alphas.size()) != c.n - 1) {
    throw Error("alphas must have N-1 = " + std::to_string(c.n - 1) +
                " entries, got " + std::to_string(c.alphas.size()));
  }
  if (static_cast<int>(c.phis.size()) != c.n) {
    throw Error("phis must have N = " + std::to_string(c.n) +
                " entries, got " + std::to_string(c.phis.size()));
  }
  return c;
}

inline std::string idx(const std::string& base, int k) {
  return base + std::to_string(k);
}

// Amplitude of b on the n-th arm of the cascade.
inline std::string chain_weight(int n, int total) {
  std::string w;
  for (int k = 1; k < n; ++k) {
    w += (w.empty() ? "" : "*") + idx("alpha", k);
  }
  if (n < total) w += (w.empty() ? "" : "*") + ("(1 - " + idx("alpha", n) + ")");
  return w.empty() ? "1" : "sqrt(" + w + ")";
}

// Amplitude of the vacuum u_m on the n-th arm of the cascade.
inline std::string vacuum_weight(int m, int n, int total) {
  if (n < m) return "";
  if (n == m) return "sqrt(" + idx("alpha", m) + ")";
  std::string w = "1 - " + idx("alpha", m);
  std::string out = "-sqrt((" + w + ")";
  for (int k = m + 1; k < n; ++k) out += "*" + idx("alpha", k);
  if (n < total) out += "*(1 - " + idx("alpha", n) + ")";
  return out + ")";
}

inline void cascade_front(Script* s, const CascadeSetup& c,
                          const std::string& summary1,
                          const std::string& summary2) {
  s->comment(summary1);
  s->comment(summary2);
  s->blank();
  s->param("s", "infinity");
  for (int k = 1; k < c.n; ++k) s->param(idx("alpha", k), c.alphas[k - 1]);
  for (int k = 1; k <= c.n; ++k) s->param(idx("phi", k), c.phis[k - 1]);
  s->blank();
  resource(s, false);
  for (int k = 1; k < c.n; ++k) s->mode("vacuum", idx("u", k), "b", 0);
  for (int k = 1; k < c.n; ++k) s->mode("vacuum", idx("v", k), "a", 0);
  for (int k = 1; k <= c.n; ++k) s->mode("signal", idx("j", k), "j", k);
  s->blank();
  s->line("(a, b) = squeeze(e1, e2, gain=s)");
  for (const char* side : {"a", "b"}) {
    const std::string x = side;
    const std::string vac = x == "a" ? "v" : "u";
    std::string rest = x;
    for (int k = 1; k < c.n; ++k) {
      std::string next = k + 1 == c.n ? idx(x, c.n) : idx(x + "r", k);
      s->line("(" + idx(x, k) + ", " + next + ") = split(" + rest + ", " +
              idx(vac, k) + ", alpha=" + idx("alpha", k) + ", phi=-pi/2)");
      rest = next;
    }
  }
  for (int k = 1; k <= c.n; ++k) {
    s->line(idx("M", k) + " = homodyne(" + idx("j", k) + ", " + idx("a", k) +
            ", xphase=" + idx("phi", k) + ", pphase=" + idx("phi", k) +
            " + pi/2)");
  }
}

inline void cascade_back(Script* s, const CascadeSetup& c, bool delayed) {
  std::string rest = idx("j", c.n) + "p";
  for (int k = c.n - 1; k >= 1; --k) {
    std::string next = k == 1 ? std::string("sel") : idx("w", k - 1);
    s->line("(" + idx("o", k) + ", " + next + ") = split(" + rest + ", " +
            idx("j", k) + "p, alpha=" + idx("alpha", k) + ", phi=pi/2)");
    rest = next;
  }
  s->blank();
  s->output("sel", "sel", "transmitted");
  for (int k = 1; k < c.n; ++k) s->output(idx("o", k), idx("o", k), "transmitted");
  s->output("sel_perp", "sel.perp", "transmitted");
  for (int k = 1; k < c.n; ++k) {
    s->output(idx("o", k) + "_perp", idx("o", k) + ".perp", "transmitted");
  }
  for (int k = 1; k <= c.n; ++k) {
    s->output(idx("j", k) + "p", idx("j", k) + "p", "stage", k);
  }
  s->blank();
  Terms target;
  for (int k = 1; k <= c.n; ++k) {
    target.add("exp(-2*i*" + idx("phi", k) + ")*" + chain_weight(k, c.n),
               idx("j", k));
  }
  expect(s, "sel", Terms(target).noise("1", "e2", "e1"));
  for (int m = 1; m < c.n; ++m) {
    Terms t;
    if (!delayed) {
      for (int k = m; k <= c.n; ++k) {
        t.add("exp(-2*i*" + idx("phi", k) + ")*" + vacuum_weight(m, k, c.n),
              idx("j", k));
      }
    }
    t.add("1", idx("u", m));
    if (!delayed) t.dag("-1", idx("v", m));
    expect(s, idx("o", m), t);
  }
  expect(s, "sel_perp", Terms().add("1", "e1.perp"));
  for (int m = 1; m < c.n; ++m) {
    expect(s, idx("o", m) + "_perp", Terms().add("1", idx("u", m) + ".perp"));
  }
  s->line("target = " + target.text());
}

inline std::string nmode_delayed_telefilter(const ProtocolArgs& args) {
  const CascadeSetup c = cascade_setup(args);
  const std::string g = gain_factor(args);
  Script s;
  cascade_front(&s, c,
                "N-bin time-delayed telefilter with a cascaded resource and "
                "one",
                "combined classical signal applied after the last bin.");
  const std::string kappa = "sqrt(1 - alpha1)";
  std::string combine = "M = combine(";
  for (int k = 1; k <= c.n; ++k) {
    if (k > 1) combine += ", ";
    combine += "(" + g + "exp(-i*" + idx("phi", k) + ")*" +
               chain_weight(k, c.n) + "*" + kappa + "/sqrt(2))*" +
               idx("M", k);
  }
  s.line(combine + ")");
  for (int k = 1; k <= c.n; ++k) {
    s.line(idx("j", k) + "p = displace(" + idx("b", k) + ", M, gain=" +
           chain_weight(k, c.n) + "/" + kappa + ")");
  }
  cascade_back(&s, c, true);
  return s.text();
}

inline std::string nmode_nodelay_telefilter(const ProtocolArgs& args) {
  const CascadeSetup c = cascade_setup(args);
  const std::string g = gain_factor(args);
  Script s;
  cascade_front(&s, c,
                "N-bin no-delay telefilter: every bin is fed forward to its "
                "own",
                "arm of the cascaded resource as soon as it arrives.");
  for (int k = 1; k <= c.n; ++k) {
    s.line(idx("j", k) + "p = displace(" + idx("b", k) + ", " + idx("M", k) +
           ", gain=" + g + "exp(-i*" + idx("phi", k) + ")/sqrt(2))");
  }
  cascade_back(&s, c, false);
  return s.text();
}

}  // namespace detail

inline const std::vector<ProtocolInfo>& protocol_registry() {
  static const std::vector<ProtocolInfo> registry = {
      {"atemporal_telefilter",
       "single-mode telefilter with homodyne feed-forward",
       {{"gain_mode", "unity", "unity|tanh feed-forward gain"}},
       detail::atemporal_telefilter},
      {"atemporal_telemirror",
       "single-mode all-optical telemirror",
       {{"recovery", "k", "k|chain reflected-mode recovery"},
        {"efficiency", "ideal", "ideal|finite resource squeezing"}},
       detail::atemporal_telemirror},
      {"delayed_telefilter",
       "two-bin telefilter with a combined, delayed feed-forward",
       {{"gain_mode", "unity", "unity|tanh feed-forward gain"}},
       detail::delayed_telefilter},
      {"delayed_telemirror",
       "two-bin telemirror with mixed amplified channels",
       {{"channel_phase", "0", "phase of the first amplified channel"}},
       detail::delayed_telemirror},
      {"nodelay_independent",
       "two independent single-bin telefilters",
       {{"gain_mode", "unity", "unity|tanh feed-forward gain"}},
       detail::nodelay_independent},
      {"nodelay_telefilter",
       "two-bin telefilter with per-bin feed-forward",
       {{"gain_mode", "unity", "unity|tanh feed-forward gain"}},
       detail::nodelay_telefilter},
      {"nodelay_telemirror",
       "two-bin telemirror with per-bin channels",
       {},
       detail::nodelay_telemirror},
      {"nmode_delayed_telefilter",
       "N-bin telefilter with a combined, delayed feed-forward",
       {{"N", "2", "number of time bins"},
        {"alphas", "[(N-1)/N, ...]", "N-1 cascade splitting ratios"},
        {"phis", "[0, ...]", "N quadrature phases"},
        {"gain_mode", "unity", "unity|tanh feed-forward gain"}},
       detail::nmode_delayed_telefilter},
      {"nmode_nodelay_telefilter",
       "N-bin telefilter with per-bin feed-forward",
       {{"N", "2", "number of time bins"},
        {"alphas", "[(N-1)/N, ...]", "N-1 cascade splitting ratios"},
        {"phis", "[0, ...]", "N quadrature phases"},
        {"gain_mode", "unity", "unity|tanh feed-forward gain"}},
       detail::nmode_nodelay_telefilter},
  };
  return registry;
}

inline const ProtocolInfo* find_protocol(const std::string& name) {
  for (const auto& p : protocol_registry()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

// Builds the named protocol. Arguments that are not structural options set
// the default value of the parameter of the same name.
inline Circuit build_protocol(const std::string& name,
                              const ProtocolArgs& args = {}) {
  const ProtocolInfo* info = find_protocol(name);
  if (info == nullptr) throw Error("unknown protocol '" + name + "'");
  std::set<std::string> structural;
  for (const auto& a : info->args) structural.insert(a.name);
  Circuit c = dsl::parse_circuit(info->script(args));
  for (const auto& [key, raw] : args) {
    if (structural.count(key) > 0) continue;
    auto it = std::find_if(c.params.begin(), c.params.end(),
                           [&](const ParamDecl& p) { return p.name == key; });
    if (it == c.params.end()) {
      throw Error("protocol " + name + " has no argument or parameter '" +
                  key + "'");
    }
    if (raw == "infinity") {
      it->infinite = true;
      it->value = CoefExpr();
    } else {
      it->infinite = false;
      it->value = dsl::parse_expression(raw);
    }
  }
  return c;
}

// Replaces a protocol invocation by the circuit it names. Parameter
// declarations of the invoking file override the protocol's defaults.
inline Circuit expand_protocol(const Circuit& c) {
  if (!c.protocol) return c;
  ProtocolArgs args;
  for (const auto& [k, v] : c.protocol->args) args[k] = v;
  Circuit out;
  try {
    out = build_protocol(c.protocol->name, args);
  } catch (const Error& e) {
    if (e.line() > 0) throw;
    throw Error(e.message(), c.protocol->loc.line, c.protocol->loc.column);
  }
  for (const auto& p : c.params) {
    auto it = std::find_if(out.params.begin(), out.params.end(),
                           [&](const ParamDecl& q) { return q.name == p.name; });
    if (it == out.params.end()) {
      out.params.push_back(p);
    } else {
      *it = p;
    }
  }
  if (!c.header.empty()) out.header = c.header;
  return out;
}

// Expands and lowers a circuit.
inline ProtocolOutput run_circuit(const Circuit& c,
                                  const ParamEnv& overrides = ParamEnv()) {
  Circuit expanded = expand_protocol(c);
  ProtocolOutput out = evaluate_circuit(expanded, overrides);
  if (c.protocol) out.protocol = c.protocol->name;
  return out;
}

inline ProtocolOutput run_protocol(const std::string& name,
                                   const ProtocolArgs& args = {},
                                   const ParamEnv& overrides = ParamEnv()) {
  ProtocolOutput out = evaluate_circuit(build_protocol(name, args), overrides);
  out.protocol = name;
  return out;
}

}  // namespace telesim

#endif  // TELESIM_PROTOCOLS_HPP_
