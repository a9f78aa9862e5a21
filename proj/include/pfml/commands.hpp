#ifndef PFML_COMMANDS_HPP_
#define PFML_COMMANDS_HPP_

#include <json.hpp>

#include <string>
#include <vector>

#include "pfml/baselines.hpp"
#include "pfml/metrics.hpp"
#include "pfml/particle_filter.hpp"
#include "pfml/ranging.hpp"
#include "pfml/sim.hpp"

namespace pfml {

// Exit codes shared by every command.
constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitDegenerate = 3;

// One evaluation stream: per-step ground truth plus the matching frames.
// Stationary test points use a constant-position trace.
struct TestStream {
  GroundTruthTrace trace;
  std::vector<ObservationFrame> frames;

  Vec2 truth_at(size_t step) const { return trace[step].position; }
};

std::vector<TestStream> make_test_streams(const EnvironmentModel& env,
                                          const std::vector<Vec2>& points, int steps,
                                          double rate_hz, uint64_t seed);

// Room posteriors for each frame of each stream, classifier trained on the
// survey database. Streams are processed on worker threads; output order
// matches input order.
std::vector<std::vector<RoomPosterior>> precompute_posteriors(
    const std::vector<TestStream>& streams, const FingerprintDatabase& survey_db,
    const ClassifierSpec& spec);

// Ranges + sigmas for the known-position anchors heard in the frame.
ObservationBundle make_bundle(const ObservationFrame& frame, const RangingParams& ranging,
                              const std::map<std::string, Vec2>& an_positions,
                              const FilterConfig& filter_config, RoomPosterior posterior);

struct PfmlRunResult {
  std::vector<double> point_errors_m;
  std::vector<double> step_times_ms;
  int degenerate_steps = 0;
  // per point, per step: estimate
  std::vector<std::vector<Vec2>> estimates;
};

// Runs one tracking session per stream. The per-point error is the mean
// final-stretch error (last `tail_window` steps); per-point filter seeds are
// derived from filter_config.seed and the point index.
PfmlRunResult run_pfml(const FloorPlanGraph& graph, const FilterConfig& filter_config,
                       const std::vector<TestStream>& streams,
                       const std::vector<std::vector<RoomPosterior>>& posteriors,
                       const RangingParams& ranging,
                       const std::map<std::string, Vec2>& an_positions, int tail_window = 10);

struct BaselineRunResult {
  std::vector<double> point_errors_m;  // mean over the stream's frames
  std::vector<double> step_times_ms;
  int failed_frames = 0;  // degenerate geometry or non-convergence
  std::vector<std::vector<Vec2>> estimates;
};

BaselineRunResult run_nlst(const std::vector<TestStream>& streams, const RangingParams& ranging,
                           const std::map<std::string, Vec2>& an_positions);

BaselineRunResult run_knn(const std::vector<TestStream>& streams,
                          const CoordFingerprintDatabase& coord_db, int k);

ClassifierSpec classifier_spec_from_json(const nlohmann::json& j);
FilterConfig filter_config_from_json(const nlohmann::json& j);

// CLI entry points. Each consumes the parsed run-config JSON, writes its
// artifacts under out_dir, and returns an exit code.
int cmd_simulate(const nlohmann::json& config, const std::string& out_dir);
int cmd_survey(const nlohmann::json& config, const std::string& out_dir);
int cmd_fit_ranging(const nlohmann::json& config, const std::string& out_dir);
int cmd_evaluate_landmark(const nlohmann::json& config, const std::string& out_dir);
int cmd_localize(const nlohmann::json& config, const std::string& out_dir);
int cmd_survey_time(const nlohmann::json& config, double* out_minutes = nullptr);
int cmd_report(const std::string& report_path);

}  // namespace pfml

#endif
