#ifndef PFML_SIM_HPP_
#define PFML_SIM_HPP_

#include <map>
#include <string>
#include <vector>

#include "pfml/baselines.hpp"
#include "pfml/fingerprint_db.hpp"
#include "pfml/floor_plan.hpp"
#include "pfml/ranging.hpp"
#include "pfml/rng.hpp"
#include "pfml/sensing.hpp"

namespace pfml {

// Smooth per-room magnetic field: room base value plus a low-frequency
// sinusoidal ripple (wavelength kMfWavelengthM, per-room amplitude/phase).
struct MfRoomField {
  double base_v_ut = 40.0;
  double base_h_ut = 25.0;
  double amp_ut = 0.0;
  double phase_rad = 0.0;
};

constexpr double kMfWavelengthM = 8.0;
constexpr double kDefaultAudibilityFloorDbm = -95.0;

struct EnvironmentModel {
  FloorPlan plan;
  RangingParams truth_ranging;
  double shadowing_sigma_db = 0.0;
  double mf_noise_sigma_ut = 0.0;
  std::map<std::string, MfRoomField> mf_rooms;
  // True transmitter coordinates for every anchor, including those the
  // localizer must treat as unknown-position.
  std::map<std::string, Vec2> true_anchor_positions;
  double audibility_floor_dbm = kDefaultAudibilityFloorDbm;
};

EnvironmentModel load_environment(const std::string& path);
void save_environment(const EnvironmentModel& env, const std::string& path);

// Log-distance forward power, clamped to [-120, 0] dBm; distances under
// 0.1 m saturate. The overload with an Rng adds log-normal shadowing.
double forward_rssi_noiseless(const EnvironmentModel& env, const std::string& an_id,
                              const Vec2& position);
double forward_rssi(const EnvironmentModel& env, const std::string& an_id, const Vec2& position,
                    Rng& rng);

// Field value at a walkable position; throws outside the walkable area.
MagneticSignature forward_mf(const EnvironmentModel& env, const Vec2& position);
MagneticSignature forward_mf_noisy(const EnvironmentModel& env, const Vec2& position, Rng& rng);

struct TracePoint {
  double t = 0.0;
  Vec2 position;
  std::string room;
};

using GroundTruthTrace = std::vector<TracePoint>;

// Piecewise-linear walk through the waypoints sampled at `rate_hz`. A
// zero-length path (single or repeated waypoint) yields
// round(stationary_duration_s * rate_hz) identical points.
GroundTruthTrace gen_trace(const FloorPlan& plan, const std::vector<Vec2>& waypoints,
                           double speed_mps, double rate_hz, double stationary_duration_s = 0.0);

// One frame per trace point: per-anchor shadowed RSSI (anchors below the
// audibility floor drop out), the local magnetic field rendered into the
// phone frame under a random yaw, gravity (0, 0, 9.81).
std::vector<ObservationFrame> gen_observations(const EnvironmentModel& env,
                                               const GroundTruthTrace& trace, uint64_t seed);

struct SurveySpec {
  int instances_per_room = 400;
  double speed_mps = 0.8;
  double rate_hz = 3.0;
  // Optional subset; empty means every room in the plan. Every plan room
  // must be covered.
  std::vector<std::string> rooms;
};

// Random-walk survey through each room, instances labeled with the
// ground-truth room.
FingerprintDatabase build_survey_db(const EnvironmentModel& env, const SurveySpec& spec,
                                    uint64_t seed);

// Fingerprints on a square survey grid labeled with coordinates, for the
// KNN-regression baseline.
CoordFingerprintDatabase build_coord_survey_db(const EnvironmentModel& env, double grid_step_m,
                                               int samples_per_point, uint64_t seed);

// Uniformly random walkable position (rejection sampling over the bounds).
Vec2 random_walkable_point(const FloorPlan& plan, Rng& rng);

// Trace CSV: t,x,y,room. Observation CSV: t,<ap ids...>,mfx,mfy,mfz,gx,gy,gz
// with empty cells for unheard anchors.
void save_trace_csv(const GroundTruthTrace& trace, const std::string& path);
GroundTruthTrace load_trace_csv(const std::string& path);
void save_observations_csv(const std::vector<ObservationFrame>& frames,
                           const std::vector<std::string>& ap_list, const std::string& path);
std::vector<ObservationFrame> load_observations_csv(const std::string& path);

}  // namespace pfml

#endif
