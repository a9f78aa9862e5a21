#include <CLI11.hpp>

#include <exception>
#include <iostream>
#include <string>

#include "pfml/commands.hpp"
#include "pfml/json_io.hpp"

namespace {

nlohmann::json read_config(const std::string& path, std::optional<uint64_t> seed_override) {
  nlohmann::json config =
      path.empty() ? nlohmann::json::object() : pfml::load_json_file(path);
  if (seed_override) config["seed"] = *seed_override;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Indoor localization toolkit: simulator, landmark detection, "
               "RSSI ranging, particle-filter tracking and baselines"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags are accepted after the verb too

  std::string config_path;
  std::string out_dir = ".";
  std::optional<uint64_t> seed;
  app.add_option("--config", config_path, "Run-config JSON path")->required(false);
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--seed", seed, "Seed override");

  auto* simulate = app.add_subcommand("simulate", "Generate environment, surveys and streams");
  auto* survey = app.add_subcommand("survey", "Generate a room-labeled fingerprint database");
  auto* fit_ranging = app.add_subcommand("fit-ranging", "Fit regression ranging parameters");
  auto* evaluate = app.add_subcommand("evaluate-landmark", "Cross-validate room detection");
  auto* localize = app.add_subcommand("localize", "Run pfml / nlst / knn over test points");
  auto* survey_time = app.add_subcommand("survey-time", "Offline survey-time accounting");
  auto* report = app.add_subcommand("report", "Recompute metrics from a report JSON");

  std::string report_path;
  report->add_option("report_json", report_path, "report.json path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : pfml::kExitConfigError;
  }

  try {
    const nlohmann::json config = read_config(config_path, seed);
    if (simulate->parsed()) return pfml::cmd_simulate(config, out_dir);
    if (survey->parsed()) return pfml::cmd_survey(config, out_dir);
    if (fit_ranging->parsed()) return pfml::cmd_fit_ranging(config, out_dir);
    if (evaluate->parsed()) return pfml::cmd_evaluate_landmark(config, out_dir);
    if (localize->parsed()) return pfml::cmd_localize(config, out_dir);
    if (survey_time->parsed()) return pfml::cmd_survey_time(config);
    if (report->parsed()) return pfml::cmd_report(report_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return pfml::kExitConfigError;
  }
  return pfml::kExitConfigError;
}
