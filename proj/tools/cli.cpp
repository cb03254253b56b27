#include "cstnu/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>

#include "cstnu/dc_check.hpp"
#include "cstnu/error.hpp"
#include "cstnu/json_io.hpp"
#include "cstnu/projection.hpp"
#include "cstnu/propagation.hpp"
#include "cstnu/semantics.hpp"
#include "cstnu/workflow.hpp"

#ifndef CSTNU_VERSION
#define CSTNU_VERSION "0.0.0"
#endif

namespace cstnu {
namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("failed writing '" + path + "'");
}

Network load_network(const std::string& path) { return network_from_json(read_json_file(path)); }

int cmd_validate(const std::string& path, bool json, std::ostream& out) {
  const Network net = load_network(path);
  const ValidationReport report = validate_cstnu(net);
  if (json) {
    Json doc = report_to_json(report);
    doc["kind"] = std::string(to_string(net.kind()));
    out << doc.dump(2) << '\n';
  } else if (report.ok()) {
    out << "ok: well-formed " << to_string(net.kind()) << " with " << net.size() << " time-points\n";
  } else {
    out << report.to_string();
  }
  return report.ok() ? 0 : 1;
}

int cmd_solve(const std::string& path, const std::string& origin, bool json, std::ostream& out) {
  const Network net = load_network(path);
  if (net.kind() != NetworkKind::Stn) {
    throw PreconditionError("solve expects an STN, got a " + std::string(to_string(net.kind())));
  }
  for (const auto& c : net.constraints()) {
    if (!c.label.empty()) throw PreconditionError("solve expects unlabeled constraints");
  }
  const Stn stn = unlabeled_part(net).stn;
  const DistanceMatrix d = solve(stn);
  Schedule schedule;
  if (d.consistent() && !stn.timepoints.empty()) {
    schedule = earliest_solution(stn, origin.empty() ? stn.timepoints.front() : origin);
  }
  if (json) {
    Json doc = {{"consistent", d.consistent()}};
    if (d.consistent()) doc["schedule"] = schedule_to_json(schedule);
    out << doc.dump(2) << '\n';
  } else if (d.consistent()) {
    out << "consistent\n";
    for (const auto& tp : stn.timepoints) out << tp << ' ' << format_rational(schedule.at(tp)) << '\n';
  } else {
    out << "inconsistent\n";
  }
  return d.consistent() ? 0 : 1;
}

int cmd_project(const std::string& path, const std::string& scenario_text, const std::string& situation_text,
                std::ostream& out) {
  const Network net = load_network(path);
  const Scenario scenario = parse_scenario(scenario_text, net.letters());
  Stn stn;
  if (situation_text.empty() && !net.links().empty()) {
    stn = scenario_projection(net, scenario);
  } else {
    stn = drama_projection(net, scenario, parse_situation(situation_text));
  }
  out << stn_to_json(stn).dump(2) << '\n';
  return 0;
}

int cmd_propagate(const std::string& path, std::size_t budget, const std::string& trace, bool json,
                  std::ostream& out) {
  const Network net = load_network(path);
  if (auto r = validate_cstnu(net); !r.ok()) throw PreconditionError("network does not validate:\n" + r.to_string());
  const PropagationResult result = propagate_to_fixpoint(net, budget);
  if (!trace.empty()) write_text(trace, trace_to_json(net, result).dump(2) + "\n");
  if (json) {
    out << propagation_to_json(net, result).dump(2) << '\n';
  } else {
    out << (result.refuted ? "refuted" : result.fixpoint ? "fixpoint" : "budget exhausted") << " after "
        << result.applications << " rule applications\n";
    if (result.refutation) out << "negative self-loop " << net.describe(result.ledger[*result.refutation]) << '\n';
    for (std::size_t i : result.active) out << net.describe(result.ledger[i]) << '\n';
  }
  return result.refuted ? 1 : 0;
}

int cmd_check_dc(const std::string& path, const DcOptions& options, const std::string& strategy_out, bool json,
                 std::ostream& out) {
  const Network net = load_network(path);
  DcResult result;
  switch (net.kind()) {
    case NetworkKind::Cstn: result = check_dc_cstn(net, options); break;
    case NetworkKind::Stnu: result = check_dc_stnu(unlabeled_part(net), options); break;
    default: result = check_dc(net, options); break;
  }
  if (!strategy_out.empty() && result.verdict == Verdict::Controllable) {
    write_text(strategy_out, strategy_to_json(result.strategy).dump(2) + "\n");
  }
  if (json) {
    out << dc_result_to_json(net, result).dump(2) << '\n';
  } else {
    out << "verdict: " << to_string(result.verdict) << '\n';
    out << "samples: " << result.sample_description << '\n';
    out << "detail: " << result.detail << '\n';
    if (result.inconsistent_drama) out << "drama: " << to_string(*result.inconsistent_drama) << '\n';
  }
  return result.verdict == Verdict::Controllable ? 0 : 1;
}

int cmd_verify_strategy(const std::string& strategy_path, const std::string& network_path, bool json,
                        std::ostream& out) {
  const Network net = load_network(network_path);
  const ExecutionStrategy strategy = strategy_from_json(read_json_file(strategy_path), net);
  const ViabilityReport viable = is_viable(net, strategy);
  const DynamicReport dynamic = is_dynamic_star(net, strategy);
  std::optional<DynamicReport> classic;
  if (net.kind() == NetworkKind::Cstn) classic = is_dynamic_cstn(net, strategy);
  const bool ok = viable.viable && dynamic.dynamic && (!classic || classic->dynamic);
  if (json) {
    Json doc = {{"ok", ok},
                {"viable", viable.viable},
                {"dynamic_star", dynamic.dynamic},
                {"entries", strategy.entries.size()}};
    if (classic) doc["dynamic"] = classic->dynamic;
    if (!viable.viable) doc["viability_counterexample"] = viable.message;
    if (!dynamic.dynamic) doc["dynamic_star_witness"] = dynamic.message;
    if (classic && !classic->dynamic) doc["dynamic_witness"] = classic->message;
    out << doc.dump(2) << '\n';
  } else {
    out << "viable: " << (viable.viable ? "yes" : "no: " + viable.message) << '\n';
    out << "dynamic*: " << (dynamic.dynamic ? "yes" : "no: " + dynamic.message) << '\n';
    if (classic) out << "dynamic: " << (classic->dynamic ? "yes" : "no: " + classic->message) << '\n';
  }
  return ok ? 0 : 1;
}

int cmd_compile(const std::string& in, const std::string& output, const std::string& map_path, std::ostream& out) {
  const Compilation c = compile_workflow(parse_workflow(read_text_file(in)));
  const std::string net = network_to_json(c.network).dump(2) + "\n";
  if (output.empty() || output == "-") {
    out << net;
  } else {
    write_text(output, net);
  }
  if (!map_path.empty()) {
    write_text(map_path, compilation_map_to_json(c.map).dump(2) + "\n");
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Conditional simple temporal networks with uncertainty", "cstnu"};
  app.set_version_flag("--version", CSTNU_VERSION);
  app.require_subcommand(1);

  std::string file, second, origin, scenario, situation, trace, strategy_out, output, map_path;
  bool json = false;
  std::size_t budget = 10000;
  DcOptions dc;

  auto* validate = app.add_subcommand("validate", "Check well-definedness and link conditions");
  validate->add_option("network", file, "Network JSON ('-' for stdin)")->required();
  validate->add_flag("--json", json, "Machine-readable output");

  auto* solve_cmd = app.add_subcommand("solve", "Consistency and earliest solution of an STN");
  solve_cmd->add_option("network", file, "Network JSON ('-' for stdin)")->required();
  solve_cmd->add_option("--origin", origin, "Time-point placed at 0 (default: the first)");
  solve_cmd->add_flag("--json", json, "Machine-readable output");

  auto* project_cmd = app.add_subcommand("project", "Scenario, situation or drama projection");
  project_cmd->add_option("network", file, "Network JSON ('-' for stdin)")->required();
  project_cmd->add_option("--scenario", scenario, "Truth values such as A=1,B=0");
  project_cmd->add_option("--situation", situation, "Link durations such as 2,3.5");
  project_cmd->add_flag("--json", json, "Accepted for uniformity; output is always JSON");

  auto* propagate = app.add_subcommand("propagate", "Labeled propagation to a fixpoint");
  propagate->add_option("network", file, "Network JSON ('-' for stdin)")->required();
  propagate->add_option("--budget", budget, "Maximum rule applications");
  propagate->add_option("--trace", trace, "Write the derivation trace to this file");
  propagate->add_flag("--json", json, "Machine-readable output");

  auto* check = app.add_subcommand("check-dc", "Controllability over sampled dramas");
  check->add_option("network", file, "Network JSON ('-' for stdin)")->required();
  check->add_option("--grid", dc.duration_samples, "Duration samples per contingent link");
  check->add_option("--time-candidates", dc.time_candidates, "Candidate times per decision");
  check->add_option("--max-letters", dc.max_letters, "Letter cap");
  check->add_option("--max-links", dc.max_links, "Contingent link cap");
  check->add_option("--budget", dc.node_budget, "Search node budget");
  check->add_option("--seed", dc.seed, "Shuffle seed for the search order (0 keeps the default order)");
  check->add_option("--jobs", dc.jobs, "Threads used for projections");
  check->add_option("--strategy-out", strategy_out, "Write the certified strategy here");
  check->add_flag("--json", json, "Machine-readable output");

  auto* verify = app.add_subcommand("verify-strategy", "Check a strategy for viability and dynamicity");
  verify->add_option("strategy", file, "Strategy JSON")->required();
  verify->add_option("network", second, "Network JSON")->required();
  verify->add_flag("--json", json, "Machine-readable output");

  auto* compile = app.add_subcommand("compile-workflow", "Compile a workflow description into a CSTNU");
  compile->add_option("workflow", file, "Workflow file ('-' for stdin)")->required();
  compile->add_option("-o,--output", output, "Network JSON destination (default stdout)");
  compile->add_option("--map", map_path, "Write the element-to-network map here");

  std::vector<const char*> argv{"cstnu"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate) return cmd_validate(file, json, out);
    if (*solve_cmd) return cmd_solve(file, origin, json, out);
    if (*project_cmd) return cmd_project(file, scenario, situation, out);
    if (*propagate) return cmd_propagate(file, budget, trace, json, out);
    if (*check) return cmd_check_dc(file, dc, strategy_out, json, out);
    if (*verify) return cmd_verify_strategy(file, second, json, out);
    if (*compile) return cmd_compile(file, output, map_path, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace cstnu
