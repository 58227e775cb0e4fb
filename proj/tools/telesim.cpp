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

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "telesim/telesim.hpp"

namespace {

using namespace telesim;
using telesim::dsl::parse_circuit;
using telesim::dsl::parse_expression;
using telesim::dsl::serialize;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::pair<std::string, std::string> split_assignment(const std::string& raw) {
  auto eq = raw.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw Error("expected NAME=VALUE, got '" + raw + "'");
  }
  return {raw.substr(0, eq), raw.substr(eq + 1)};
}

ParamEnv overrides_from(const std::vector<std::string>& raw) {
  ParamEnv env;
  env.set_limit_scale(limit_scale_from_environment());
  for (const auto& r : raw) {
    auto [name, value] = split_assignment(r);
    if (value == "infinity") {
      env.set_infinite(name);
    } else {
      env.set(name, parse_expression(value));
    }
  }
  return env;
}

ProtocolArgs protocol_args_from(const std::vector<std::string>& raw) {
  ProtocolArgs args;
  for (const auto& r : raw) {
    auto [name, value] = split_assignment(r);
    args[name] = value;
  }
  return args;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

ReportFormat format_from(const std::string& name) {
  return name == "machine" ? ReportFormat::machine : ReportFormat::text;
}

ProtocolOutput load(const std::string& path,
                    const std::vector<std::string>& params) {
  Circuit c = parse_circuit(read_file(path));
  return run_circuit(c, overrides_from(params));
}

int cmd_run(const std::string& path, const std::vector<std::string>& params,
            const std::string& format, const std::string& out_path) {
  ProtocolOutput p = load(path, params);
  Analyses a = analyze(p);
  write_output(emit_report(p, a, format_from(format)), out_path);
  return kExitOk;
}

int cmd_verify(const std::string& path, const std::vector<std::string>& params,
               const std::string& format, const std::string& out_path) {
  ProtocolOutput p = load(path, params);
  Analyses a = analyze(p);
  write_output(emit_report(p, a, format_from(format)), out_path);
  return a.passed() ? kExitOk : kExitCheckFailure;
}

int cmd_limits(const std::string& path, const std::vector<std::string>& names,
               const std::vector<std::string>& params,
               const std::string& format) {
  ProtocolOutput p = load(path, params);
  std::vector<std::string> to_infinity = names;
  for (const auto& n : p.env.infinite_params()) to_infinity.push_back(n);
  for (const auto& n : names) {
    bool declared = false;
    for (const auto& d : p.circuit->params) declared |= d.name == n;
    if (!declared) throw Error("unknown parameter '" + n + "'");
  }
  bool all_converged = true;
  nlohmann::json doc;
  doc["limit_scale"] = detail::rounded(p.env.limit_scale());
  doc["parameters"] = names;
  nlohmann::json outs = nlohmann::json::object();
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"output", "mode", "limit c", "limit d", "status"});
  for (const auto& o : p.outputs) {
    LimitResult l = limit_coefficients(o.expr, to_infinity, p.env);
    all_converged &= l.converged;
    std::string status =
        l.divergent ? "divergent" : (l.converged ? "converged" : "unsettled");
    outs[o.name] = {{"status", status},
                    {"max_difference", detail::number(l.max_difference)},
                    {"coefficients", detail::coefficient_table(l.at_double_scale)}};
    bool first = true;
    for (const auto& [mode, t] : l.at_double_scale) {
      if (std::abs(t.c) < kDisplayThreshold &&
          std::abs(t.d) < kDisplayThreshold) {
        continue;
      }
      rows.push_back({first ? o.name : "", mode, detail::complex_text(t.c),
                      detail::complex_text(t.d), first ? status : ""});
      first = false;
    }
    if (first) rows.push_back({o.name, "-", "0", "0", status});
  }
  doc["outputs"] = outs;
  if (format == "machine") {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "limits as";
    for (const auto& n : names) std::cout << " " << n;
    std::cout << " -> infinity (L = "
              << detail::text_number(p.env.limit_scale()) << " vs 2L)\n";
    std::cout << detail::table(rows);
  }
  return all_converged ? kExitOk : kExitCheckFailure;
}

int cmd_protocols_list() {
  std::vector<std::vector<std::string>> rows;
  for (const auto& info : protocol_registry()) {
    rows.push_back({info.name, info.summary});
  }
  std::cout << detail::table(rows);
  for (const auto& info : protocol_registry()) {
    if (info.args.empty()) continue;
    std::cout << "\n" << info.name << " arguments\n";
    rows.clear();
    for (const auto& a : info.args) rows.push_back({a.name, a.fallback, a.help});
    std::cout << detail::table(rows);
  }
  return kExitOk;
}

int cmd_protocols_build(const std::string& name,
                        const std::vector<std::string>& params,
                        const std::string& out_path) {
  Circuit c = build_protocol(name, protocol_args_from(params));
  write_output(serialize(c), out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heisenberg-picture simulator for teleportation filters and mirrors"};
  app.require_subcommand(1);

  std::string file;
  std::vector<std::string> params;
  std::string format = "text";
  std::string out_path;
  std::vector<std::string> limit_names;
  std::string protocol_name;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("file", file, "Circuit file")->required();
    sub->add_option("--param", params, "Parameter override NAME=VALUE")
        ->allow_extra_args(false);
    sub->add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"text", "machine"}));
  };

  auto* run = app.add_subcommand("run", "Evaluate a circuit and print a report");
  add_common(run);
  run->add_option("--out", out_path, "Write the report to a file");

  auto* verify = app.add_subcommand("verify", "Run the full analysis suite");
  add_common(verify);
  verify->add_option("--out", out_path, "Write the report to a file");

  auto* limits = app.add_subcommand("limits", "Coefficient limits as parameters go to infinity");
  limits->add_option("file", file, "Circuit file")->required();
  limits->add_option("--param", limit_names, "Parameter sent to infinity")
      ->required()
      ->allow_extra_args(false);
  limits->add_option("--set", params, "Parameter override NAME=VALUE")
      ->allow_extra_args(false);
  limits->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"text", "machine"}));

  auto* protocols = app.add_subcommand("protocols", "Protocol registry");
  protocols->require_subcommand(1);
  auto* list = protocols->add_subcommand("list", "List registered protocols");
  auto* build = protocols->add_subcommand("build", "Print the circuit text of a protocol");
  build->add_option("name", protocol_name, "Protocol name")->required();
  build->add_option("--param", params, "Protocol argument NAME=VALUE")
      ->allow_extra_args(false);
  build->add_option("--out", out_path, "Write the circuit to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(file, params, format, out_path);
    if (verify->parsed()) return cmd_verify(file, params, format, out_path);
    if (limits->parsed()) return cmd_limits(file, limit_names, params, format);
    if (list->parsed()) return cmd_protocols_list();
    if (build->parsed()) return cmd_protocols_build(protocol_name, params, out_path);
  } catch (const Error& e) {
    std::cerr << "telesim: " << (file.empty() ? "" : file + ":") << e.what()
              << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "telesim: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
