#include "cli_app.hpp"

#include <CLI11.hpp>

#include <ostream>
#include <string>

#include "mtsp/mtsp.hpp"

namespace mtsp::cli {
namespace {

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::kInfeasible: return kInfeasible;
    case ErrorKind::kOracleLimit: return kOracleLimit;
    default: return kSchemaError;
  }
}

InstanceDocument open_document(const std::string& path) {
  return path.empty() ? bundled_document() : load_document_file(path);
}

struct SolveOptions {
  std::string instance;
  std::string scenario{kAsLoadedScenario};
  std::string m_source = "derived";
  std::string format = "text";
  bool oracle = false;
  bool dump_partition = false;
};

int do_solve(const SolveOptions& opt, std::ostream& out) {
  const InstanceDocument doc = open_document(opt.instance);
  const Scenario scenario = doc.scenario(opt.scenario);
  const ReportFormat format = parse_report_format(opt.format);
  const Plan plan = run_pipeline(doc.instance, scenario, parse_m_source(opt.m_source), doc.m_override);

  std::optional<StageChecks> checks;
  std::optional<Plan> mono;
  if (opt.oracle) {
    checks = run_stage_checks(plan);
    mono = solve_monolithic_oracle(doc.instance, scenario);
  }
  ReportInput input;
  input.plan = &plan;
  input.published = scenario.published ? &*scenario.published : nullptr;
  input.stage_checks = checks ? &*checks : nullptr;
  input.monolithic = mono ? &*mono : nullptr;
  input.dump_partition = opt.dump_partition;
  out << emit_report(input, format);
  return kOk;
}

int do_oracle(const SolveOptions& opt, std::ostream& out) {
  const InstanceDocument doc = open_document(opt.instance);
  const Scenario scenario = doc.scenario(opt.scenario);
  const Plan mono = solve_monolithic_oracle(doc.instance, scenario);
  ReportInput input;
  input.plan = &mono;
  input.published = scenario.published ? &*scenario.published : nullptr;
  out << emit_report(input, parse_report_format(opt.format));
  return kOk;
}

int do_fixtures_list(std::ostream& out) {
  const InstanceDocument& doc = bundled_document();
  out << "bundled instance: " << doc.name << " (" << doc.instance.points << " points, "
      << doc.instance.vehicles() << " vehicles)\n";
  for (const Scenario& s : doc.scenarios) {
    out << "  " << s.name << ": " << s.description;
    if (s.published && s.published->total) out << " [published total " << s.published->total->to_decimal() << "]";
    out << "\n";
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Matrix decomposition solver for multi-vehicle routing"};
  app.require_subcommand(1);

  SolveOptions solve_opt;
  auto* solve = app.add_subcommand("solve", "Decompose, assign, route, and report");
  solve->add_option("--instance", solve_opt.instance, "Instance document (JSON); bundled example if omitted");
  solve->add_option("--scenario", solve_opt.scenario, "Scenario name")->capture_default_str();
  solve->add_option("--m-source", solve_opt.m_source, "Assignment coefficients")
      ->check(CLI::IsMember({"derived", "paper_override"}))
      ->capture_default_str();
  solve->add_flag("--oracle", solve_opt.oracle, "Also run every brute-force comparator");
  solve->add_option("--format", solve_opt.format, "Report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  solve->add_flag("--dump-partition", solve_opt.dump_partition, "Include the A/B partition and M vectors");

  SolveOptions oracle_opt;
  auto* oracle = app.add_subcommand("oracle", "Exhaustive joint optimum only");
  oracle->add_option("--instance", oracle_opt.instance, "Instance document (JSON); bundled example if omitted");
  oracle->add_option("--scenario", oracle_opt.scenario, "Scenario name")->capture_default_str();
  oracle->add_option("--format", oracle_opt.format, "Report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  auto* fixtures = app.add_subcommand("fixtures", "Bundled example data");
  fixtures->require_subcommand(1);
  auto* fixtures_list = fixtures->add_subcommand("list", "List bundled scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kSchemaError;
  }

  try {
    if (*solve) return do_solve(solve_opt, out);
    if (*oracle) return do_oracle(oracle_opt, out);
    if (*fixtures_list) return do_fixtures_list(out);
  } catch (const Error& e) {
    err << "mtsp: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "mtsp: " << e.what() << "\n";
    return kSchemaError;
  }
  return kSchemaError;
}

}  // namespace mtsp::cli
