#include "pasim/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "pasim/indicators.hpp"
#include "pasim/model_io.hpp"
#include "pasim/report.hpp"

namespace pasim::cli {

namespace {

/// Loads and validates; prints diagnostics and sets `code` on failure.
std::optional<Model> load_valid(const std::string& path, std::ostream& out, std::ostream& err,
                                int& code) {
  Model model;
  try {
    model = load_model_file(path);
  } catch (const ParseError& e) {
    err << path;
    if (e.line() > 0) err << ":" << e.line() << ":" << e.column();
    if (!e.path().empty()) err << ": at " << e.path();
    err << ": " << e.what() << "\n";
    code = kExitIo;
    return std::nullopt;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    code = kExitIo;
    return std::nullopt;
  }
  const auto diagnostics = validate(model);
  for (const auto& d : diagnostics) {
    out << to_string(d.severity) << " " << d.rule << " [" << d.subject << "] " << d.message << "\n";
  }
  if (has_errors(diagnostics)) {
    code = kExitInvalid;
    return std::nullopt;
  }
  code = kExitOk;
  return model;
}

bool write_file(const std::string& path, const std::string& text, std::ostream& err) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) {
    err << "cannot write '" << path << "'\n";
    return false;
  }
  return true;
}

std::string derived_profile_path(const std::string& out_path) {
  std::filesystem::path p(out_path);
  p.replace_extension(".profile.csv");
  return p.string();
}

std::vector<std::string> equipment_ids(const Model& model) {
  std::vector<std::string> ids;
  for (const auto& e : model.equipment) ids.push_back(e.id);
  return ids;
}

}  // namespace

int cmd_validate(const std::string& model_path, std::ostream& out, std::ostream& err) {
  int code = kExitOk;
  if (load_valid(model_path, out, err, code)) out << "valid\n";
  return code;
}

int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
  int code = kExitOk;
  auto model = load_valid(args.model_path, err, err, code);
  if (!model) return code;
  if (args.runs == 0 || !(args.bucket_hours > 0.0)) {
    err << "runs and bucket must be positive\n";
    return kExitInvalid;
  }
  if (args.zero_logistics) model = zero_logistics(std::move(*model));

  Report report;
  report.generated_at = utc_timestamp();
  report.model_digest = model_digest(*model);
  report.runs = args.runs;
  report.seed = args.seed;
  report.bucket_hours = args.bucket_hours;
  report.zero_logistics = args.zero_logistics;
  report.equipment_ids = equipment_ids(*model);

  const Simulator simulator(*model);
  report.stats = aggregate(run_batch(simulator, {args.runs, args.seed, args.bucket_hours, args.threads}));

  out << report_text(report);
  if (!args.out_path.empty() && !write_file(args.out_path, report_json(report), err)) return kExitIo;
  std::string profile = args.profile_path;
  if (profile.empty() && !args.out_path.empty()) profile = derived_profile_path(args.out_path);
  if (!profile.empty() && !write_file(profile, profile_csv(report.stats), err)) return kExitIo;
  return kExitOk;
}

int cmd_indicators(const IndicatorArgs& args, std::ostream& out, std::ostream& err) {
  int code = kExitOk;
  auto model = load_valid(args.model_path, err, err, code);
  if (!model) return code;
  if (args.runs == 0 || !(args.bucket_hours > 0.0)) {
    err << "runs and bucket must be positive\n";
    return kExitInvalid;
  }
  if (args.zero_logistics) model = zero_logistics(std::move(*model));

  std::vector<SubsystemSelector> subsystems;
  try {
    subsystems = resolve_subsystems(*model, args.subsystems);
  } catch (const ContractError& e) {
    err << e.what() << "\n";
    return kExitInvalid;
  }

  StudyOptions options;
  options.batch = {args.runs, args.seed, args.bucket_hours, args.threads};
  Report report;
  report.generated_at = utc_timestamp();
  report.model_digest = model_digest(*model);
  report.runs = args.runs;
  report.seed = args.seed;
  report.bucket_hours = args.bucket_hours;
  report.zero_logistics = args.zero_logistics;
  report.equipment_ids = equipment_ids(*model);
  report.indicators = indicator_table(*model, subsystems, options);
  report.stats = report.indicators->base;

  out << report_text(report);
  if (!args.out_path.empty() && !write_file(args.out_path, report_json(report), err)) return kExitIo;
  return kExitOk;
}

int cmd_reference(std::ostream& out) {
  out << serialize_model(build_reference_model());
  return kExitOk;
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Production availability simulator for stochastic flow block diagrams"};
  app.require_subcommand(1);
  app.set_version_flag("--version", PASIM_VERSION);

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check a model file");
  validate_cmd->add_option("model", validate_path, "Model file (JSON)")->required();

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run a Monte Carlo batch");
  simulate_cmd->add_option("model", sim.model_path, "Model file (JSON)")->required();
  simulate_cmd->add_option("--runs,-n", sim.runs, "Number of runs")->capture_default_str();
  simulate_cmd->add_option("--seed,-s", sim.seed, "Base seed")->capture_default_str();
  simulate_cmd->add_option("--bucket", sim.bucket_hours, "Profile bucket width in hours")
      ->capture_default_str();
  simulate_cmd->add_option("--out,-o", sim.out_path, "Report file (JSON)");
  simulate_cmd->add_option("--profile", sim.profile_path,
                           "Profile table (CSV); defaults to <out>.profile.csv");
  simulate_cmd->add_flag("--zero-logistics", sim.zero_logistics,
                         "Set crew mobilization and spare lead times to 0");
  simulate_cmd->add_option("--threads,-j", sim.threads, "Concurrent runs (0 = all cores)")
      ->capture_default_str();

  IndicatorArgs ind;
  auto* indicators_cmd = app.add_subcommand("indicators", "Criticality and contribution per subsystem");
  indicators_cmd->add_option("model", ind.model_path, "Model file (JSON)")->required();
  indicators_cmd->add_option("--runs,-n", ind.runs, "Runs per scenario")->capture_default_str();
  indicators_cmd->add_option("--seed,-s", ind.seed, "Base seed")->capture_default_str();
  indicators_cmd->add_option("--bucket", ind.bucket_hours, "Profile bucket width in hours")
      ->capture_default_str();
  indicators_cmd->add_option("--subsystems", ind.subsystems,
                             "Subsystem names or equipment ids, or 'all'")
      ->delimiter(',')
      ->expected(1, -1)
      ->capture_default_str();
  indicators_cmd->add_option("--out,-o", ind.out_path, "Report file (JSON)");
  indicators_cmd->add_flag("--zero-logistics", ind.zero_logistics,
                           "Set crew mobilization and spare lead times to 0");
  indicators_cmd->add_option("--threads,-j", ind.threads, "Concurrent runs (0 = all cores)")
      ->capture_default_str();

  app.add_subcommand("reference", "Print the bundled reference model");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << PASIM_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitInvalid;
  }

  try {
    if (*validate_cmd) return cmd_validate(validate_path, out, err);
    if (*simulate_cmd) return cmd_simulate(sim, out, err);
    if (*indicators_cmd) return cmd_indicators(ind, out, err);
    return cmd_reference(out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
}

}  // namespace pasim::cli
