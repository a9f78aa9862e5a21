#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>

#include "pfml/commands.hpp"
#include "pfml/csv.hpp"
#include "pfml/json_io.hpp"
#include "pfml/landmark.hpp"
#include "pfml/sim_scenarios.hpp"

using namespace pfml;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("survey-time accounting reproduces the reference arithmetic") {
  double minutes = 0.0;
  nlohmann::json pfml_cfg{{"method", "pfml"},
                          {"instances", 3712},
                          {"rate_hz", 3.0},
                          {"ranging_min", 28.0}};
  CHECK(cmd_survey_time(pfml_cfg, &minutes) == kExitOk);
  CHECK(minutes == doctest::Approx(48.62222222222222).epsilon(1e-12));
  CHECK(std::abs(minutes - 49.0) <= 0.5);

  nlohmann::json knn_cfg{{"method", "knn"},       {"survey_points", 85},
                         {"t_survey_point_s", 300}, {"t_switch_s", 5},
                         {"instances", 5060},     {"rate_hz", 3.0}};
  CHECK(cmd_survey_time(knn_cfg, &minutes) == kExitOk);
  CHECK(minutes == doctest::Approx(460.19444444444446).epsilon(1e-12));
  CHECK(std::abs(minutes - 460.0) <= 0.5);

  nlohmann::json zero{{"method", "pfml"}, {"instances", 0}, {"rate_hz", 3.0}, {"ranging_min", 0.0}};
  CHECK(cmd_survey_time(zero, &minutes) == kExitOk);
  CHECK(minutes == 0.0);

  nlohmann::json negative{{"method", "pfml"},
                          {"instances", -5},
                          {"rate_hz", 3.0},
                          {"ranging_min", 0.0}};
  CHECK_THROWS_AS(cmd_survey_time(negative, &minutes), std::invalid_argument);
}

TEST_CASE("percentile rule and report self-consistency") {
  std::vector<double> errors{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  CHECK(percentile_inclusive(errors, 0.9) == doctest::Approx(9.1).epsilon(1e-12));

  const MetricsReport report = MetricsReport::from_errors(errors);
  double mean = 0.0;
  for (const double e : report.errors_m) mean += e;
  mean /= report.errors_m.size();
  CHECK(report.mean_m == mean);
  double var = 0.0;
  for (const double e : report.errors_m) var += (e - mean) * (e - mean);
  CHECK(report.sd_m == std::sqrt(var / report.errors_m.size()));
  CHECK(report.p90_m == percentile_inclusive(report.errors_m, 0.9));

  double prev = 0.0;
  for (const auto& [e, f] : report.cdf) {
    (void)e;
    CHECK(f >= prev);
    prev = f;
  }
  CHECK(report.cdf.back().second == doctest::Approx(1.0));
}

TEST_CASE("simulate writes a full artifact set deterministically") {
  const nlohmann::json config{
      {"scenario", {{"name", "two_room_ambiguous"}}},
      {"seed", 11},
      {"survey", {{"instances_per_room", 15}}},
      {"coord_survey", {{"grid_step_m", 1.0}, {"samples_per_point", 2}}},
      {"reference_points", 5},
      {"test_points", 3}};

  const fs::path dir_a = fresh_dir("pfml_sim_a");
  const fs::path dir_b = fresh_dir("pfml_sim_b");
  REQUIRE(cmd_simulate(config, dir_a.string()) == kExitOk);
  REQUIRE(cmd_simulate(config, dir_b.string()) == kExitOk);

  for (const char* name : {"environment.json", "survey_db.csv", "coord_db.csv",
                           "ranging_reference.csv", "test_points.json", "trace.csv",
                           "observations.csv"}) {
    CAPTURE(name);
    REQUIRE(fs::exists(dir_a / name));
    CHECK(read_file(dir_a / name) == read_file(dir_b / name));
    CHECK(fs::file_size(dir_a / name) > 0);
  }

  // The artifacts load back through the public loaders.
  const EnvironmentModel env = load_environment((dir_a / "environment.json").string());
  CHECK(env.plan.rooms.size() == 2);
  const FingerprintDatabase db = load_fingerprint_db((dir_a / "survey_db.csv").string());
  CHECK(db.size() == 30);
  const CoordFingerprintDatabase coord = load_coord_db((dir_a / "coord_db.csv").string());
  CHECK(coord.size() > 0);

  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
}

TEST_CASE("invalid configs are rejected") {
  CHECK_THROWS_AS(cmd_simulate({{"scenario", {{"name", "moonbase"}}}}, "."),
                  std::invalid_argument);
  CHECK_THROWS_AS(cmd_simulate(nlohmann::json::object(), "."), std::invalid_argument);
  CHECK_THROWS_AS(cmd_localize({{"method", "pfml"}}, "."), std::invalid_argument);
  CHECK_THROWS_AS(cmd_survey_time({{"method", "teleport"}}, nullptr), std::invalid_argument);
}

TEST_CASE("the survey verb writes a standalone fingerprint database") {
  const fs::path dir = fresh_dir("pfml_survey_verb");
  const nlohmann::json config{{"scenario", {{"name", "two_room_ambiguous"}}},
                              {"seed", 91},
                              {"survey", {{"instances_per_room", 10}}}};
  REQUIRE(cmd_survey(config, dir.string()) == kExitOk);
  const FingerprintDatabase db = load_fingerprint_db((dir / "survey_db.csv").string());
  CHECK(db.size() == 20);

  nlohmann::json partial = config;
  partial["survey"]["rooms"] = std::vector<std::string>{"left"};
  CHECK_THROWS_AS(cmd_survey(partial, dir.string()), std::invalid_argument);
  fs::remove_all(dir);
}

TEST_CASE("fit-ranging recovers the truth parameters from reference points") {
  const fs::path dir = fresh_dir("pfml_fit");
  const nlohmann::json sim_config{{"scenario", {{"name", "two_room_ambiguous"},
                                                {"shadowing_sigma_db", 0.0}}},
                                  {"seed", 5},
                                  {"reference_points", 20}};
  REQUIRE(cmd_simulate(sim_config, dir.string()) == kExitOk);

  const nlohmann::json fit_config{
      {"reference", (dir / "ranging_reference.csv").string()},
      {"environment", (dir / "environment.json").string()}};
  REQUIRE(cmd_fit_ranging(fit_config, dir.string()) == kExitOk);

  const RangingParams fitted = load_ranging_params((dir / "ranging_params.csv").string());
  const EnvironmentModel env = load_environment((dir / "environment.json").string());
  for (const auto& [id, truth] : env.truth_ranging.per_anchor) {
    // Noiseless references regress onto the exact curve.
    CHECK(fitted.at(id).alpha == doctest::Approx(truth.alpha).epsilon(1e-6));
    CHECK(fitted.at(id).beta == doctest::Approx(truth.beta).epsilon(1e-6));
    CHECK(fitted.at(id).gamma == truth.gamma);
  }

  // Without an environment the log-distance constants fall back to defaults.
  const nlohmann::json bare_config{{"reference", (dir / "ranging_reference.csv").string()}};
  const fs::path bare = fresh_dir("pfml_fit_bare");
  REQUIRE(cmd_fit_ranging(bare_config, bare.string()) == kExitOk);
  const RangingParams defaults = load_ranging_params((bare / "ranging_params.csv").string());
  CHECK(defaults.at("AN1").gamma == 2.7);
  fs::remove_all(bare);
  fs::remove_all(dir);
}

TEST_CASE("evaluate-landmark emits the ablation table and shows the MF gain") {
  const fs::path dir = fresh_dir("pfml_eval");
  const nlohmann::json sim_config{{"scenario", {{"name", "two_room_ambiguous"}}},
                                  {"seed", 21},
                                  {"survey", {{"instances_per_room", 40}}}};
  REQUIRE(cmd_simulate(sim_config, dir.string()) == kExitOk);

  nlohmann::json eval_config{{"survey_db", (dir / "survey_db.csv").string()},
                             {"folds", 5},
                             {"seed", 2}};
  eval_config["classifiers"] = nlohmann::json::array({{{"type", "knn"}, {"k", 3}}});
  eval_config["an_counts"] = nlohmann::json::array({3});
  REQUIRE(cmd_evaluate_landmark(eval_config, dir.string()) == kExitOk);

  const CsvTable table = read_csv((dir / "landmark_accuracy.csv").string());
  REQUIRE(table.rows.size() == 2);  // wifi and wifi+mf
  double wifi = 0.0, wifi_mf = 0.0;
  for (const auto& row : table.rows) {
    if (row[1] == "wifi") wifi = parse_double(row[3], "acc");
    if (row[1] == "wifi+mf") wifi_mf = parse_double(row[3], "acc");
  }
  CHECK(wifi_mf >= wifi + 5.0);
  fs::remove_all(dir);
}

TEST_CASE("localize runs every method end to end on a small scenario") {
  const fs::path dir = fresh_dir("pfml_localize");
  const nlohmann::json sim_config{
      {"scenario", {{"name", "two_room_ambiguous"}, {"shadowing_sigma_db", 0.0}}},
      {"seed", 31},
      {"survey", {{"instances_per_room", 30}}},
      {"coord_survey", {{"grid_step_m", 1.0}, {"samples_per_point", 3}}}};
  REQUIRE(cmd_simulate(sim_config, dir.string()) == kExitOk);

  const std::vector<std::vector<double>> points{{1.5, 2.0}, {8.25, 1.25}};
  nlohmann::json base{{"environment", (dir / "environment.json").string()},
                      {"test_points", points},
                      {"steps_per_point", 8},
                      {"seed", 7}};

  SUBCASE("pfml") {
    nlohmann::json config = base;
    config["method"] = "pfml";
    config["survey_db"] = (dir / "survey_db.csv").string();
    config["classifier"] = {{"type", "knn"}, {"k", 3}};
    config["filter"] = {{"particles", 400}, {"seed", 9}};
    REQUIRE(cmd_localize(config, dir.string()) == kExitOk);
    REQUIRE(fs::exists(dir / "report.json"));
    REQUIRE(fs::exists(dir / "estimates.csv"));

    nlohmann::json report = load_json_file((dir / "report.json").string());
    CHECK(report.at("mean_m").get<double>() < 1.5);  // noiseless, small room
    CHECK(cmd_report((dir / "report.json").string()) == kExitOk);
  }

  SUBCASE("nlst") {
    // The mirror scenario's anchors are collinear by design; trilateration
    // needs spread-out geometry, so run it on the office scenario.
    const fs::path nine = fresh_dir("pfml_localize_nlst");
    const nlohmann::json nine_sim{
        {"scenario", {{"name", "nine_room"}, {"shadowing_sigma_db", 0.0}}}, {"seed", 3}};
    REQUIRE(cmd_simulate(nine_sim, nine.string()) == kExitOk);
    const nlohmann::json config{{"environment", (nine / "environment.json").string()},
                                {"method", "nlst"},
                                {"test_points", std::vector<std::vector<double>>{{2.0, 3.0},
                                                                                 {9.0, 8.0}}},
                                {"steps_per_point", 5},
                                {"seed", 7}};
    REQUIRE(cmd_localize(config, nine.string()) == kExitOk);
    nlohmann::json report = load_json_file((nine / "report.json").string());
    // Noiseless powers invert exactly, so trilateration is near-exact.
    CHECK(report.at("mean_m").get<double>() < 1e-6);
    fs::remove_all(nine);
  }

  SUBCASE("knn") {
    nlohmann::json config = base;
    config["method"] = "knn";
    config["coord_db"] = (dir / "coord_db.csv").string();
    config["k"] = 3;
    REQUIRE(cmd_localize(config, dir.string()) == kExitOk);
    nlohmann::json report = load_json_file((dir / "report.json").string());
    CHECK(report.at("mean_m").get<double>() < 2.5);
  }

  fs::remove_all(dir);
}

TEST_CASE("anchor-count ablation emits one row per count and feature set") {
  const fs::path dir = fresh_dir("pfml_ablation");
  const nlohmann::json sim_config{{"scenario", {{"name", "nine_room"}}},
                                  {"seed", 51},
                                  {"survey", {{"instances_per_room", 40}}}};
  REQUIRE(cmd_simulate(sim_config, dir.string()) == kExitOk);

  nlohmann::json eval_config{{"survey_db", (dir / "survey_db.csv").string()},
                             {"folds", 5},
                             {"seed", 6}};
  eval_config["classifiers"] = nlohmann::json::array({{{"type", "knn"}, {"k", 3}}});
  eval_config["an_counts"] = nlohmann::json::array({6, 7, 8});
  REQUIRE(cmd_evaluate_landmark(eval_config, dir.string()) == kExitOk);

  const CsvTable table = read_csv((dir / "landmark_accuracy.csv").string());
  REQUIRE(table.rows.size() == 6);  // 3 anchor counts x {wifi, wifi+mf}
  std::set<std::string> counts;
  for (const auto& row : table.rows) {
    counts.insert(row[2]);
    CHECK(parse_double(row[3], "acc") > 50.0);
  }
  CHECK(counts == std::set<std::string>{"6", "7", "8"});
  fs::remove_all(dir);
}

TEST_CASE("noiseless office runs track stationary targets within half a meter") {
  const fs::path dir = fresh_dir("pfml_noiseless");
  const nlohmann::json sim_config{{"scenario", {{"name", "nine_room"},
                                                {"shadowing_sigma_db", 0.0},
                                                {"mf_noise_sigma_ut", 0.0}}},
                                  {"seed", 61},
                                  {"survey", {{"instances_per_room", 60}}}};
  REQUIRE(cmd_simulate(sim_config, dir.string()) == kExitOk);

  const nlohmann::json config{{"environment", (dir / "environment.json").string()},
                              {"method", "pfml"},
                              {"survey_db", (dir / "survey_db.csv").string()},
                              {"classifier", {{"type", "knn"}, {"k", 3}}},
                              {"filter", {{"particles", 2500}, {"seed", 17}}},
                              {"test_points", std::vector<std::vector<double>>{
                                  {2.0, 3.0}, {15.0, 12.5}, {9.0, 8.0}}},
                              {"steps_per_point", 30},
                              {"seed", 23}};
  REQUIRE(cmd_localize(config, dir.string()) == kExitOk);
  nlohmann::json report = load_json_file((dir / "report.json").string());
  CHECK(report.at("mean_m").get<double>() <= 0.5);
  fs::remove_all(dir);
}

TEST_CASE("localize replays a recorded trace and observation log") {
  const fs::path dir = fresh_dir("pfml_replay");
  const nlohmann::json sim_config{
      {"scenario", {{"name", "nine_room"}, {"shadowing_sigma_db", 0.0}}},
      {"seed", 81},
      {"test_points", 1}};
  REQUIRE(cmd_simulate(sim_config, dir.string()) == kExitOk);

  const nlohmann::json config{{"environment", (dir / "environment.json").string()},
                              {"method", "nlst"},
                              {"trace", (dir / "trace.csv").string()},
                              {"observations", (dir / "observations.csv").string()}};
  REQUIRE(cmd_localize(config, dir.string()) == kExitOk);
  nlohmann::json report = load_json_file((dir / "report.json").string());
  CHECK(report.at("mean_m").get<double>() < 1e-6);  // noiseless log replays exactly

  nlohmann::json bad = config;
  bad.erase("observations");
  CHECK_THROWS_AS(cmd_localize(bad, dir.string()), std::invalid_argument);
  fs::remove_all(dir);
}

TEST_CASE("open-hall scenario simulates end to end") {
  const fs::path dir = fresh_dir("pfml_hall");
  const nlohmann::json config{
      {"scenario", {{"name", "open_hall"}, {"width_m", 6.0}, {"height_m", 4.0}}}, {"seed", 71}};
  REQUIRE(cmd_simulate(config, dir.string()) == kExitOk);
  const EnvironmentModel env = load_environment((dir / "environment.json").string());
  CHECK(env.plan.rooms.size() == 1);
  fs::remove_all(dir);
}

#ifdef PFML_CLI_PATH
TEST_CASE("the binary maps success and config errors to exit codes 0 and 2") {
  const fs::path dir = fresh_dir("pfml_exitcodes");
  const fs::path good = dir / "good.json";
  {
    std::ofstream out(good);
    out << R"({"method":"pfml","instances":3712,"rate_hz":3,"ranging_min":28})";
  }
  const std::string base = std::string(PFML_CLI_PATH);
  const int ok = std::system((base + " --config " + good.string() + " survey-time > /dev/null").c_str());
  CHECK(WEXITSTATUS(ok) == kExitOk);

  const fs::path bad = dir / "bad.json";
  {
    std::ofstream out(bad);
    out << R"({"method":"teleport"})";
  }
  const int err = std::system(
      (base + " --config " + bad.string() + " survey-time 2> /dev/null").c_str());
  CHECK(WEXITSTATUS(err) == kExitConfigError);

  const int missing = std::system(
      (base + " --config /nonexistent.json simulate 2> /dev/null").c_str());
  CHECK(WEXITSTATUS(missing) == kExitConfigError);
  fs::remove_all(dir);
}
#endif

TEST_CASE("localize is deterministic for a fixed seed") {
  const fs::path dir = fresh_dir("pfml_det");
  const nlohmann::json sim_config{{"scenario", {{"name", "two_room_ambiguous"}}},
                                  {"seed", 41},
                                  {"survey", {{"instances_per_room", 20}}}};
  REQUIRE(cmd_simulate(sim_config, dir.string()) == kExitOk);

  nlohmann::json config{{"environment", (dir / "environment.json").string()},
                        {"method", "pfml"},
                        {"survey_db", (dir / "survey_db.csv").string()},
                        {"classifier", {{"type", "knn"}, {"k", 3}}},
                        {"filter", {{"particles", 200}, {"seed", 3}}},
                        {"test_points", 2},
                        {"steps_per_point", 5},
                        {"seed", 13}};
  const fs::path out_a = fresh_dir("pfml_det_a");
  const fs::path out_b = fresh_dir("pfml_det_b");
  REQUIRE(cmd_localize(config, out_a.string()) == kExitOk);
  REQUIRE(cmd_localize(config, out_b.string()) == kExitOk);
  CHECK(read_file(out_a / "estimates.csv") == read_file(out_b / "estimates.csv"));
  CHECK(read_file(out_a / "report.json") == read_file(out_b / "report.json"));
  fs::remove_all(dir);
  fs::remove_all(out_a);
  fs::remove_all(out_b);
}
