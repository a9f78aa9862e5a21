#include "pfml/commands.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <thread>

#include "pfml/csv.hpp"
#include "pfml/json_io.hpp"
#include "pfml/landmark.hpp"
#include "pfml/sim_scenarios.hpp"

namespace pfml {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

std::vector<TestStream> make_test_streams(const EnvironmentModel& env,
                                          const std::vector<Vec2>& points, int steps,
                                          double rate_hz, uint64_t seed) {
  std::vector<TestStream> streams;
  streams.reserve(points.size());
  for (size_t i = 0; i < points.size(); ++i) {
    TestStream s;
    s.trace = gen_trace(env.plan, {points[i]}, 1.0, rate_hz,
                        static_cast<double>(steps) / rate_hz);
    s.frames = gen_observations(env, s.trace, derive_seed(seed, i));
    streams.push_back(std::move(s));
  }
  return streams;
}

std::vector<std::vector<RoomPosterior>> precompute_posteriors(
    const std::vector<TestStream>& streams, const FingerprintDatabase& survey_db,
    const ClassifierSpec& spec) {
  std::vector<std::vector<RoomPosterior>> out(streams.size());
  const KStarModel model = spec.type == ClassifierSpec::Type::kstar
                               ? KStarModel::train(survey_db, spec.blend)
                               : KStarModel{};

  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (size_t i = next.fetch_add(1); i < streams.size(); i = next.fetch_add(1)) {
      auto& posteriors = out[i];
      posteriors.reserve(streams[i].frames.size());
      for (const auto& frame : streams[i].frames) {
        const auto features = frame_to_features(frame, survey_db.ap_list, survey_db.missing_fill);
        posteriors.push_back(spec.type == ClassifierSpec::Type::kstar
                                 ? model.predict(features)
                                 : knn_predict(survey_db, features, spec.k));
      }
    }
  };
  const unsigned workers =
      std::max(1u, std::min(std::thread::hardware_concurrency(),
                            static_cast<unsigned>(streams.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return out;
}

ObservationBundle make_bundle(const ObservationFrame& frame, const RangingParams& ranging,
                              const std::map<std::string, Vec2>& an_positions,
                              const FilterConfig& filter_config, RoomPosterior posterior) {
  ObservationBundle bundle;
  bundle.room_posterior = std::move(posterior);
  for (const auto& [an_id, p] : frame.rssi_dbm) {
    if (!an_positions.count(an_id)) continue;
    if (!ranging.per_anchor.count(an_id)) continue;
    const double d = hybrid_range(p, ranging.at(an_id), ranging.los_threshold_m);
    bundle.ranges_m[an_id] = d;
    bundle.sigma_m[an_id] = filter_config.sigma_base_m + filter_config.sigma_per_m * d;
  }
  return bundle;
}

PfmlRunResult run_pfml(const FloorPlanGraph& graph, const FilterConfig& filter_config,
                       const std::vector<TestStream>& streams,
                       const std::vector<std::vector<RoomPosterior>>& posteriors,
                       const RangingParams& ranging,
                       const std::map<std::string, Vec2>& an_positions, int tail_window) {
  PfmlRunResult result;
  for (size_t i = 0; i < streams.size(); ++i) {
    FilterConfig cfg = filter_config;
    cfg.seed = derive_seed(filter_config.seed, i);
    ParticleFilter filter(graph, cfg);

    std::vector<Vec2> estimates;
    estimates.reserve(streams[i].frames.size());
    for (size_t f = 0; f < streams[i].frames.size(); ++f) {
      const auto bundle =
          make_bundle(streams[i].frames[f], ranging, an_positions, cfg, posteriors[i][f]);
      const auto start = std::chrono::steady_clock::now();
      const StepResult step = filter.step(bundle, an_positions);
      result.step_times_ms.push_back(elapsed_ms(start));
      if (step.degenerate) ++result.degenerate_steps;
      estimates.push_back(step.estimate);
    }

    const size_t tail = std::min<size_t>(std::max(tail_window, 1), estimates.size());
    double err_sum = 0.0;
    for (size_t f = estimates.size() - tail; f < estimates.size(); ++f) {
      err_sum += distance(estimates[f], streams[i].truth_at(f));
    }
    result.point_errors_m.push_back(err_sum / static_cast<double>(tail));
    result.estimates.push_back(std::move(estimates));
  }
  return result;
}

BaselineRunResult run_nlst(const std::vector<TestStream>& streams, const RangingParams& ranging,
                           const std::map<std::string, Vec2>& an_positions) {
  BaselineRunResult result;
  FilterConfig dummy;  // sigma fields unused by NLST
  for (const TestStream& stream : streams) {
    std::vector<Vec2> estimates;
    double err_sum = 0.0;
    size_t counted = 0;
    for (size_t f = 0; f < stream.frames.size(); ++f) {
      const auto bundle = make_bundle(stream.frames[f], ranging, an_positions, dummy, {});
      const auto start = std::chrono::steady_clock::now();
      try {
        const NlstResult fix = nlst_locate(bundle.ranges_m, an_positions);
        result.step_times_ms.push_back(elapsed_ms(start));
        if (!fix.converged) ++result.failed_frames;
        estimates.push_back(fix.position);
        err_sum += distance(fix.position, stream.truth_at(f));
        ++counted;
      } catch (const std::invalid_argument&) {
        ++result.failed_frames;
        estimates.push_back({std::numeric_limits<double>::quiet_NaN(),
                             std::numeric_limits<double>::quiet_NaN()});
      }
    }
    result.point_errors_m.push_back(counted ? err_sum / static_cast<double>(counted)
                                            : std::numeric_limits<double>::quiet_NaN());
    result.estimates.push_back(std::move(estimates));
  }
  return result;
}

BaselineRunResult run_knn(const std::vector<TestStream>& streams,
                          const CoordFingerprintDatabase& coord_db, int k) {
  BaselineRunResult result;
  for (const TestStream& stream : streams) {
    std::vector<Vec2> estimates;
    double err_sum = 0.0;
    for (size_t f = 0; f < stream.frames.size(); ++f) {
      const auto features =
          frame_to_features(stream.frames[f], coord_db.ap_list, coord_db.missing_fill);
      const auto start = std::chrono::steady_clock::now();
      const Vec2 fix = knn_locate(coord_db, features, k);
      result.step_times_ms.push_back(elapsed_ms(start));
      estimates.push_back(fix);
      err_sum += distance(fix, stream.truth_at(f));
    }
    result.point_errors_m.push_back(err_sum / static_cast<double>(stream.frames.size()));
    result.estimates.push_back(std::move(estimates));
  }
  return result;
}

ClassifierSpec classifier_spec_from_json(const nlohmann::json& j) {
  ClassifierSpec spec;
  const std::string type = j.at("type").get<std::string>();
  if (type == "kstar") {
    spec.type = ClassifierSpec::Type::kstar;
    if (j.contains("blend")) spec.blend = j.at("blend").get<double>();
  } else if (type == "knn") {
    spec.type = ClassifierSpec::Type::knn;
    if (j.contains("k")) spec.k = j.at("k").get<int>();
  } else {
    throw std::invalid_argument("unknown classifier type '" + type + "'");
  }
  return spec;
}

FilterConfig filter_config_from_json(const nlohmann::json& j) {
  FilterConfig cfg;
  if (j.contains("particles")) cfg.particles = j.at("particles").get<int>();
  if (j.contains("n_prime_pct")) cfg.n_prime_pct = j.at("n_prime_pct").get<double>();
  if (j.contains("sigma_base_m")) cfg.sigma_base_m = j.at("sigma_base_m").get<double>();
  if (j.contains("sigma_per_m")) cfg.sigma_per_m = j.at("sigma_per_m").get<double>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<uint64_t>();
  return cfg;
}

namespace {

EnvironmentModel environment_from_config(const nlohmann::json& config) {
  if (config.contains("environment")) {
    return load_environment(config.at("environment").get<std::string>());
  }
  if (!config.contains("scenario")) {
    throw std::invalid_argument("config needs 'environment' (path) or 'scenario'");
  }
  const auto& sc = config.at("scenario");
  const std::string name = sc.at("name").get<std::string>();
  if (name == "nine_room") {
    NineRoomOptions opt;
    if (sc.contains("shadowing_sigma_db")) {
      opt.shadowing_sigma_db = sc.at("shadowing_sigma_db").get<double>();
    }
    if (sc.contains("mf_noise_sigma_ut")) {
      opt.mf_noise_sigma_ut = sc.at("mf_noise_sigma_ut").get<double>();
    }
    return make_nine_room_environment(opt);
  }
  if (name == "two_room_ambiguous") {
    TwoRoomOptions opt;
    if (sc.contains("shadowing_sigma_db")) {
      opt.shadowing_sigma_db = sc.at("shadowing_sigma_db").get<double>();
    }
    if (sc.contains("mf_noise_sigma_ut")) {
      opt.mf_noise_sigma_ut = sc.at("mf_noise_sigma_ut").get<double>();
    }
    return make_two_room_ambiguous_environment(opt);
  }
  if (name == "open_hall") {
    return make_open_hall_environment(sc.at("width_m").get<double>(),
                                      sc.at("height_m").get<double>());
  }
  throw std::invalid_argument("unknown scenario '" + name + "'");
}

uint64_t seed_from_config(const nlohmann::json& config, uint64_t fallback = 1) {
  return config.contains("seed") ? config.at("seed").get<uint64_t>() : fallback;
}

std::vector<Vec2> sample_test_points(const EnvironmentModel& env, int count, uint64_t seed) {
  Rng rng(seed);
  std::vector<Vec2> points;
  points.reserve(count);
  for (int i = 0; i < count; ++i) points.push_back(random_walkable_point(env.plan, rng));
  return points;
}

std::map<std::string, std::vector<std::pair<double, double>>> make_reference_points(
    const EnvironmentModel& env, int per_anchor, uint64_t seed) {
  std::map<std::string, std::vector<std::pair<double, double>>> reference;
  Rng rng(seed);
  for (const auto& [an_id, pos] : env.true_anchor_positions) {
    auto& rows = reference[an_id];
    for (int i = 0; i < per_anchor; ++i) {
      const Vec2 p = random_walkable_point(env.plan, rng);
      rows.emplace_back(distance(p, pos), forward_rssi(env, an_id, p, rng));
    }
  }
  return reference;
}

}  // namespace

int cmd_simulate(const nlohmann::json& config, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const EnvironmentModel env = environment_from_config(config);
  const uint64_t seed = seed_from_config(config);
  save_environment(env, out_dir + "/environment.json");

  if (config.contains("survey")) {
    SurveySpec spec;
    const auto& js = config.at("survey");
    if (js.contains("instances_per_room")) {
      spec.instances_per_room = js.at("instances_per_room").get<int>();
    }
    if (js.contains("rate_hz")) spec.rate_hz = js.at("rate_hz").get<double>();
    if (js.contains("speed_mps")) spec.speed_mps = js.at("speed_mps").get<double>();
    const FingerprintDatabase db = build_survey_db(env, spec, derive_seed(seed, 101));
    save_fingerprint_db(db, out_dir + "/survey_db.csv");
  }
  if (config.contains("coord_survey")) {
    const auto& jc = config.at("coord_survey");
    const double step = jc.contains("grid_step_m") ? jc.at("grid_step_m").get<double>() : 1.0;
    const int samples = jc.contains("samples_per_point") ? jc.at("samples_per_point").get<int>() : 60;
    const CoordFingerprintDatabase db =
        build_coord_survey_db(env, step, samples, derive_seed(seed, 102));
    save_coord_db(db, out_dir + "/coord_db.csv");
  }
  if (config.contains("reference_points")) {
    const int per_anchor = config.at("reference_points").get<int>();
    save_ranging_reference(make_reference_points(env, per_anchor, derive_seed(seed, 103)),
                           out_dir + "/ranging_reference.csv");
  }
  if (config.contains("test_points")) {
    const int count = config.at("test_points").get<int>();
    const auto points = sample_test_points(env, count, derive_seed(seed, 104));
    nlohmann::json jp = nlohmann::json::array();
    for (const Vec2& p : points) jp.push_back({p.x, p.y});
    save_json_file({{"test_points", jp}}, out_dir + "/test_points.json");
    // Demo stream for the first point.
    const auto streams = make_test_streams(env, {points.front()}, 30, 3.0, derive_seed(seed, 105));
    save_trace_csv(streams.front().trace, out_dir + "/trace.csv");
    save_observations_csv(streams.front().frames, env.plan.anchor_ids(),
                          out_dir + "/observations.csv");
  }
  return kExitOk;
}

int cmd_survey(const nlohmann::json& config, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const EnvironmentModel env = environment_from_config(config);
  SurveySpec spec;
  if (config.contains("survey")) {
    const auto& js = config.at("survey");
    if (js.contains("instances_per_room")) {
      spec.instances_per_room = js.at("instances_per_room").get<int>();
    }
    if (js.contains("rate_hz")) spec.rate_hz = js.at("rate_hz").get<double>();
    if (js.contains("speed_mps")) spec.speed_mps = js.at("speed_mps").get<double>();
    if (js.contains("rooms")) spec.rooms = js.at("rooms").get<std::vector<std::string>>();
  }
  const FingerprintDatabase db = build_survey_db(env, spec, seed_from_config(config));
  save_fingerprint_db(db, out_dir + "/survey_db.csv");
  return kExitOk;
}

int cmd_fit_ranging(const nlohmann::json& config, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const auto reference = load_ranging_reference(config.at("reference").get<std::string>());

  // gamma and p_r0 are the log-distance constants; they come from the
  // environment truth or per-anchor config, falling back to defaults.
  std::map<std::string, PathLossParams> ldpl_source;
  if (config.contains("environment")) {
    ldpl_source = load_environment(config.at("environment").get<std::string>())
                      .truth_ranging.per_anchor;
  }
  RangingParams params;
  for (const auto& [an_id, pairs] : reference) {
    const NlrFit fit = fit_nlr(pairs);
    PathLossParams p;
    if (ldpl_source.count(an_id)) p = ldpl_source.at(an_id);
    p.alpha = fit.alpha;
    p.beta = fit.beta;
    params.per_anchor[an_id] = p;
  }
  save_ranging_params(params, out_dir + "/ranging_params.csv");
  return kExitOk;
}

int cmd_evaluate_landmark(const nlohmann::json& config, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const FingerprintDatabase db =
      load_fingerprint_db(config.at("survey_db").get<std::string>());
  const int folds = config.contains("folds") ? config.at("folds").get<int>() : 10;
  const uint64_t seed = seed_from_config(config);

  std::vector<ClassifierSpec> specs;
  if (config.contains("classifiers")) {
    for (const auto& jc : config.at("classifiers")) specs.push_back(classifier_spec_from_json(jc));
  } else {
    specs.push_back({ClassifierSpec::Type::kstar, 30.0, 3});
    specs.push_back({ClassifierSpec::Type::knn, 30.0, 3});
  }
  std::vector<size_t> an_counts;
  if (config.contains("an_counts")) {
    for (const auto& jc : config.at("an_counts")) an_counts.push_back(jc.get<size_t>());
  } else {
    an_counts.push_back(db.ap_list.size());
  }

  std::vector<std::vector<std::string>> rows;
  for (const ClassifierSpec& spec : specs) {
    for (const size_t an_count : an_counts) {
      for (const bool with_mf : {false, true}) {
        const FingerprintDatabase proj = project_db(db, an_count, with_mf);
        const CrossValidationResult cv = cross_validate(proj, spec, folds, seed);
        rows.push_back({spec.describe(), with_mf ? "wifi+mf" : "wifi", std::to_string(an_count),
                        format_double(cv.accuracy_pct), cv.stratified ? "" : "non-stratified"});
      }
    }
  }
  write_csv(out_dir + "/landmark_accuracy.csv",
            {"classifier", "features", "an_count", "accuracy_pct", "warning"}, rows);
  return kExitOk;
}

namespace {

std::vector<Vec2> test_points_from_config(const nlohmann::json& config,
                                          const EnvironmentModel& env, uint64_t seed) {
  if (config.contains("test_points")) {
    const auto& jp = config.at("test_points");
    if (jp.is_number_integer()) return sample_test_points(env, jp.get<int>(), seed);
    if (jp.is_string()) {
      const nlohmann::json file = load_json_file(jp.get<std::string>());
      std::vector<Vec2> points;
      for (const auto& p : file.at("test_points")) {
        points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
      }
      return points;
    }
    std::vector<Vec2> points;
    for (const auto& p : jp) points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    return points;
  }
  throw std::invalid_argument("config needs 'test_points' (count, path, or list)");
}

RangingParams ranging_from_config(const nlohmann::json& config, const EnvironmentModel& env) {
  if (!config.contains("ranging_params")) return env.truth_ranging;
  const auto& jr = config.at("ranging_params");
  if (jr.is_string()) return load_ranging_params(jr.get<std::string>());
  // {"fit": "reference.csv"}: regression parameters from reference
  // measurements, log-distance constants from the environment truth.
  const auto reference = load_ranging_reference(jr.at("fit").get<std::string>());
  RangingParams params = env.truth_ranging;
  for (const auto& [an_id, pairs] : reference) {
    const NlrFit fit = fit_nlr(pairs);
    auto it = params.per_anchor.find(an_id);
    if (it == params.per_anchor.end()) continue;
    it->second.alpha = fit.alpha;
    it->second.beta = fit.beta;
  }
  return params;
}

void write_estimates_csv(const std::string& path, const std::vector<TestStream>& streams,
                         const std::vector<std::vector<Vec2>>& estimates) {
  std::vector<std::vector<std::string>> rows;
  for (size_t i = 0; i < streams.size(); ++i) {
    for (size_t f = 0; f < estimates[i].size(); ++f) {
      const Vec2 est = estimates[i][f];
      const Vec2 truth = streams[i].truth_at(f);
      rows.push_back({std::to_string(i), std::to_string(f),
                      format_double(streams[i].trace[f].t), format_double(truth.x),
                      format_double(truth.y), format_double(est.x), format_double(est.y),
                      format_double(distance(est, truth))});
    }
  }
  write_csv(path, {"point", "step", "t", "true_x", "true_y", "est_x", "est_y", "error_m"}, rows);
}

}  // namespace

int cmd_localize(const nlohmann::json& config, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const EnvironmentModel env = environment_from_config(config);
  const uint64_t seed = seed_from_config(config);
  const std::string method = config.at("method").get<std::string>();
  const int steps = config.contains("steps_per_point") ? config.at("steps_per_point").get<int>() : 30;
  const double rate_hz = config.contains("rate_hz") ? config.at("rate_hz").get<double>() : 3.0;

  std::vector<TestStream> streams;
  if (config.contains("trace")) {
    // Replay a recorded walk: ground-truth trace plus its observation log.
    if (!config.contains("observations")) {
      throw std::invalid_argument("'trace' needs a matching 'observations' CSV");
    }
    TestStream stream;
    stream.trace = load_trace_csv(config.at("trace").get<std::string>());
    stream.frames = load_observations_csv(config.at("observations").get<std::string>());
    if (stream.trace.size() != stream.frames.size()) {
      throw std::invalid_argument("trace and observations differ in length");
    }
    if (stream.trace.empty()) throw std::invalid_argument("trace is empty");
    streams.push_back(std::move(stream));
  } else {
    const auto points = test_points_from_config(config, env, derive_seed(seed, 1));
    streams = make_test_streams(env, points, steps, rate_hz, derive_seed(seed, 2));
  }
  const auto an_positions = env.plan.known_anchor_positions();

  MetricsReport report;
  std::vector<std::vector<Vec2>> estimates;
  int degenerate = 0;

  if (method == "pfml") {
    if (!config.contains("survey_db")) {
      throw std::invalid_argument("pfml needs 'survey_db' (fingerprint CSV path)");
    }
    const auto room_ids = env.plan.room_ids();
    const FingerprintDatabase survey_db =
        load_fingerprint_db(config.at("survey_db").get<std::string>(), kDefaultMissingFillDbm,
                            {room_ids.begin(), room_ids.end()});
    const ClassifierSpec spec = config.contains("classifier")
                                    ? classifier_spec_from_json(config.at("classifier"))
                                    : ClassifierSpec{};
    FilterConfig filter_config = config.contains("filter")
                                     ? filter_config_from_json(config.at("filter"))
                                     : FilterConfig{};
    const RangingParams ranging = ranging_from_config(config, env);
    const FloorPlanGraph graph = FloorPlanGraph::build(env.plan, env.plan.grid_spacing_m);
    const auto posteriors = precompute_posteriors(streams, survey_db, spec);
    const PfmlRunResult run =
        run_pfml(graph, filter_config, streams, posteriors, ranging, an_positions);
    report = MetricsReport::from_errors(run.point_errors_m, run.step_times_ms,
                                        run.degenerate_steps);
    estimates = run.estimates;
    degenerate = run.degenerate_steps;
    size_t total_steps = 0;
    for (const auto& s : streams) total_steps += s.frames.size();
    if (static_cast<size_t>(run.degenerate_steps) >= total_steps) return kExitDegenerate;
  } else if (method == "nlst") {
    const RangingParams ranging = ranging_from_config(config, env);
    const BaselineRunResult run = run_nlst(streams, ranging, an_positions);
    for (const double e : run.point_errors_m) {
      if (std::isnan(e)) return kExitDegenerate;
    }
    report = MetricsReport::from_errors(run.point_errors_m, run.step_times_ms, 0);
    estimates = run.estimates;
  } else if (method == "knn") {
    if (!config.contains("coord_db")) {
      throw std::invalid_argument("knn needs 'coord_db' (coordinate fingerprint CSV path)");
    }
    const CoordFingerprintDatabase coord_db =
        load_coord_db(config.at("coord_db").get<std::string>());
    const int k = config.contains("k") ? config.at("k").get<int>() : 3;
    const BaselineRunResult run = run_knn(streams, coord_db, k);
    report = MetricsReport::from_errors(run.point_errors_m, run.step_times_ms, 0);
    estimates = run.estimates;
  } else {
    throw std::invalid_argument("unknown method '" + method + "' (pfml, nlst, knn)");
  }

  write_estimates_csv(out_dir + "/estimates.csv", streams, estimates);
  std::ofstream rep(out_dir + "/report.json", std::ios::binary);
  rep << report.to_json_string() << '\n';
  std::cout << "method=" << method << " mean=" << format_double(report.mean_m)
            << "m sd=" << format_double(report.sd_m) << "m p90=" << format_double(report.p90_m)
            << "m median_step=" << format_double(report.median_step_ms)
            << "ms degenerate_steps=" << degenerate << '\n';
  return kExitOk;
}

int cmd_survey_time(const nlohmann::json& config, double* out_minutes) {
  const std::string method = config.at("method").get<std::string>();
  double minutes = 0.0;
  if (method == "pfml") {
    minutes = survey_time_pfml_min(config.at("instances").get<double>(),
                                   config.at("rate_hz").get<double>(),
                                   config.at("ranging_min").get<double>());
  } else if (method == "knn") {
    minutes = survey_time_knn_min(
        config.at("survey_points").get<double>(), config.at("t_survey_point_s").get<double>(),
        config.at("t_switch_s").get<double>(), config.at("instances").get<double>(),
        config.at("rate_hz").get<double>());
  } else {
    throw std::invalid_argument("survey-time method must be pfml or knn");
  }
  if (out_minutes) *out_minutes = minutes;
  std::cout << format_double(minutes) << " min\n";
  return kExitOk;
}

int cmd_report(const std::string& report_path) {
  std::ifstream in(report_path);
  if (!in) throw std::runtime_error("cannot open '" + report_path + "'");
  nlohmann::json j;
  in >> j;
  const std::vector<double> errors = j.at("errors_m").get<std::vector<double>>();
  const MetricsReport recomputed = MetricsReport::from_errors(errors);
  std::cout << "points=" << errors.size() << " mean=" << format_double(recomputed.mean_m)
            << "m sd=" << format_double(recomputed.sd_m)
            << "m p90=" << format_double(recomputed.p90_m) << "m\n";
  return kExitOk;
}

}  // namespace pfml
