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

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "test_support.hpp"

namespace telesim {
namespace {

using dsl::parse_circuit;
using dsl::serialize;

const char* kGoldenNames[] = {
    "atemporal_telefilter",     "atemporal_telemirror",
    "delayed_telefilter",       "delayed_telemirror",
    "nodelay_independent",      "nodelay_telefilter",
    "nodelay_telemirror",       "nmode_delayed_telefilter",
    "nmode_nodelay_telefilter",
};

const std::string kPreamble =
    "mode signal j rail=j bin=1\n"
    "mode vacuum v rail=a bin=0\n";

struct ErrorCase {
  std::string body;
  int line;
  int column;
  std::string fragment;
};

Error parse_error(const std::string& text) {
  try {
    Circuit c = parse_circuit(text);
    evaluate_circuit(c);
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return Error("none");
}

TEST(Lexer, TokenPositions) {
  auto toks = dsl::tokenize("param s = 1.5e-1\n  x");
  ASSERT_GE(toks.size(), 6u);
  EXPECT_EQ(toks[0].text, "param");
  EXPECT_EQ(toks[3].kind, dsl::Tok::number);
  EXPECT_EQ(toks[3].text, "1.5e-1");
  bool found = false;
  for (const auto& t : toks) {
    if (t.text == "x") {
      EXPECT_EQ(t.line, 2);
      EXPECT_EQ(t.column, 3);
      found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST(Lexer, CommentsAreSkipped) {
  Circuit c = parse_circuit("# only a comment\nparam a = 2 # trailing\n");
  ASSERT_EQ(c.params.size(), 1u);
  EXPECT_EQ(c.params[0].name, "a");
}

TEST(Parser, AtemporalGoldenStatementCounts) {
  Circuit c = parse_circuit(
      testing::read_text(testing::golden_path("atemporal_telefilter.tls")));
  std::map<Op, int> counts;
  for (const auto& st : c.statements) ++counts[st.op];
  EXPECT_EQ(counts[Op::squeeze], 1);
  EXPECT_EQ(counts[Op::homodyne], 1);
  EXPECT_EQ(counts[Op::displace], 1);
  EXPECT_EQ(c.modes.size(), 3u);
  EXPECT_EQ(c.outputs.size(), 2u);
  EXPECT_TRUE(c.target.has_value());
}

TEST(Parser, ParsesEveryStatementForm) {
  const std::string text = kPreamble +
      "param g = infinity\n"
      "param a = 1/3\n"
      "mode seed e rail=b bin=0 perp=f\n"
      "(x, y) = split(j, v, alpha=a, phi=-pi/2, match=zero)\n"
      "(p, q) = squeeze(x, e, gain=g, phase=pi/4)\n"
      "(p2, q2) = unsqueeze(p, q, gain=g)\n"
      "w = phase(y, phi=1)\n"
      "M = homodyne(w, p2, xphase=0, pphase=pi/2)\n"
      "N = combine(2*M, (i*a)*M)\n"
      "d = displace(q2, N, gain=1/sqrt(2), at=3)\n"
      "output o = d role=transmitted slot=2\n"
      "output op = d.perp role=reflected\n"
      "expect o = 2*j + (a)*dag(v) + e\n"
      "target = j\n";
  Circuit c = parse_circuit(text);
  ASSERT_EQ(c.statements.size(), 7u);
  EXPECT_EQ(c.statements[0].match, Match::zero);
  EXPECT_EQ(c.statements[6].at, 3);
  EXPECT_EQ(c.statements[5].weights.size(), 2u);
  EXPECT_EQ(c.modes[2].perp_id(), "f.perp");
  EXPECT_TRUE(c.params[0].infinite);
  EXPECT_EQ(c.outputs[0].slot, 2);
  EXPECT_TRUE(c.outputs[1].perp);
  EXPECT_EQ(c.expects.size(), 1u);
  Circuit again = parse_circuit(serialize(c));
  EXPECT_TRUE(structurally_equal(c, again));
  EXPECT_EQ(serialize(again), serialize(c));
}

TEST(Parser, ProtocolInvocation) {
  Circuit c = parse_circuit("param s = 2\nprotocol delayed_telefilter(gain_mode=tanh)\n");
  ASSERT_TRUE(c.protocol.has_value());
  EXPECT_EQ(c.protocol->name, "delayed_telefilter");
  ASSERT_EQ(c.protocol->args.size(), 1u);
  EXPECT_EQ(c.protocol->args[0].first, "gain_mode");
  EXPECT_EQ(c.protocol->args[0].second, "tanh");
}

TEST(Parser, ErrorsCarryLineAndColumn) {
  const std::vector<ErrorCase> cases = {
      {"(x, y) = split(j, q, alpha=1/2, phi=0)\n", 3, 19, "undefined wire 'q'"},
      {"x = frobnicate(j)\n", 3, 5, "unknown element"},
      {"(x, y) = split(j, alpha=1/2, phi=0)\n", 3, 10, "2 wire input"},
      {"x = phase(j, phi=1 $ 2)\n", 3, 20, "unexpected character"},
      {"(x, y) = split(j, v, alpha=1/2)\n", 3, 10, "requires argument 'phi'"},
      {"x = phase(j, phi=zz)\n", 3, 18, "unknown parameter 'zz'"},
      {"output o = nothing role=transmitted\n", 3, 12, "undefined wire"},
      {"expect o = j\n", 3, 8, "undeclared output"},
      {"(x, y) = split(j, v, alpha=1/2, phi=0)\nx = phase(y, phi=0)\n", 4, 1,
       "already assigned"},
      {"(x, y) = split(j, j, alpha=1/2, phi=0)\n", 3, 19, "more than once"},
      {"x = phase(j, phi=0, phi=1)\n", 3, 21, "duplicate"},
  };
  for (const auto& ec : cases) {
    Error e = parse_error(kPreamble + ec.body);
    EXPECT_EQ(e.line(), ec.line) << ec.body << " -> " << e.what();
    EXPECT_EQ(e.column(), ec.column) << ec.body << " -> " << e.what();
    EXPECT_NE(e.message().find(ec.fragment), std::string::npos)
        << ec.body << " -> " << e.what();
    EXPECT_EQ(std::string(e.what()).rfind(std::to_string(ec.line) + ":", 0), 0u);
  }
}

TEST(Parser, DuplicateDeclarations) {
  EXPECT_EQ(parse_error("param a = 1\nparam a = 2\n").line(), 2);
  EXPECT_EQ(parse_error(kPreamble + "mode signal j rail=j bin=2\n").line(), 3);
}

TEST(Parser, EmptyCircuitEvaluatesToNothing) {
  ProtocolOutput p = evaluate_circuit(parse_circuit("\n# nothing\n"));
  EXPECT_TRUE(p.outputs.empty());
  EXPECT_TRUE(p.inputs.empty());
}

TEST(Golden, ParseSerializeIsByteIdentical) {
  for (const char* name : kGoldenNames) {
    std::string text =
        testing::read_text(testing::golden_path(std::string(name) + ".tls"));
    ASSERT_FALSE(text.empty()) << name;
    Circuit c = parse_circuit(text);
    EXPECT_EQ(serialize(c), text) << name;
  }
}

TEST(Golden, MatchesRegistryBuild) {
  for (const char* name : kGoldenNames) {
    std::string text =
        testing::read_text(testing::golden_path(std::string(name) + ".tls"));
    EXPECT_EQ(serialize(build_protocol(name)), text) << name;
  }
}

TEST(Golden, SerializeIsAFixpoint) {
  const std::vector<std::pair<std::string, ProtocolArgs>> variants = {
      {"atemporal_telefilter", {{"gain_mode", "tanh"}}},
      {"atemporal_telemirror", {{"recovery", "chain"}, {"efficiency", "finite"}}},
      {"delayed_telefilter", {{"gain_mode", "tanh"}}},
      {"delayed_telemirror", {{"channel_phase", "pi/3"}}},
      {"nodelay_independent", {{"gain_mode", "tanh"}}},
      {"nodelay_telefilter", {{"gain_mode", "tanh"}}},
      {"nodelay_telemirror", {}},
      {"nmode_delayed_telefilter", {{"N", "4"}, {"gain_mode", "tanh"}}},
      {"nmode_nodelay_telefilter", {{"N", "3"}, {"phis", "[0, 1/2, -1]"}}},
  };
  for (const auto& [name, args] : variants) {
    Circuit c = build_protocol(name, args);
    std::string once = serialize(c);
    std::string twice = serialize(parse_circuit(once));
    EXPECT_EQ(once, twice) << name;
    EXPECT_TRUE(structurally_equal(c, parse_circuit(once))) << name;
  }
}

// Parsing either succeeds or raises a located Error; nothing else escapes.
void parse_or_error(const std::string& text) {
  try {
    Circuit c = parse_circuit(text);
    (void)serialize(c);
  } catch (const Error& e) {
    EXPECT_GE(e.line(), 0);
  }
}

TEST(Fuzz, RandomBytesNeverCrash) {
  testing::Draws draws(2024);
  for (int n = 0; n < 1500; ++n) {
    std::string text(static_cast<size_t>(draws.integer(0, 200)), '\0');
    for (char& ch : text) ch = static_cast<char>(draws.integer(0, 255));
    parse_or_error(text);
  }
}

TEST(Fuzz, TokenSoupNeverCrashes) {
  const std::vector<std::string> vocab = {
      "param", "mode", "output", "expect", "target", "protocol", "split",
      "squeeze", "homodyne", "combine", "displace", "phase", "(", ")", ",",
      "=", "*", "/", "+", "-", "\n", "x", "j", "v", "1", "pi", "i", "dag",
      "infinity", "alpha=", "phi=", "gain=", "role=", "rail=", "bin=", "[",
      "]", ".perp", "match=", "zero", "at=", "signal", "vacuum", "1e308",
      "sqrt(", "#", "0.5"};
  testing::Draws draws(7);
  for (int n = 0; n < 1500; ++n) {
    std::string text = kPreamble;
    int len = draws.integer(1, 40);
    for (int k = 0; k < len; ++k) {
      text += vocab[static_cast<size_t>(draws.integer(0, static_cast<int>(vocab.size()) - 1))];
      text += draws.integer(0, 3) == 0 ? "" : " ";
    }
    parse_or_error(text);
  }
}

TEST(Fuzz, MutatedGoldensNeverCrash) {
  testing::Draws draws(99);
  std::vector<std::string> corpus;
  for (const char* name : kGoldenNames) {
    corpus.push_back(
        testing::read_text(testing::golden_path(std::string(name) + ".tls")));
  }
  for (int n = 0; n < 600; ++n) {
    std::string text =
        corpus[static_cast<size_t>(draws.integer(0, static_cast<int>(corpus.size()) - 1))];
    int edits = draws.integer(1, 4);
    for (int e = 0; e < edits && !text.empty(); ++e) {
      size_t pos = static_cast<size_t>(draws.integer(0, static_cast<int>(text.size()) - 1));
      switch (draws.integer(0, 2)) {
        case 0: text.erase(pos, 1); break;
        case 1: text.insert(pos, 1, static_cast<char>(draws.integer(32, 126))); break;
        default: text[pos] = static_cast<char>(draws.integer(0, 255)); break;
      }
    }
    try {
      Circuit c = parse_circuit(text);
      if (n % 10 == 0) (void)run_circuit(c);
    } catch (const Error&) {
    }
  }
}

}  // namespace
}  // namespace telesim
