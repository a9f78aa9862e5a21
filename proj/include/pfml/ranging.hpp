#ifndef PFML_RANGING_HPP_
#define PFML_RANGING_HPP_

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace pfml {

// Per-anchor propagation constants. The log-distance model uses gamma and
// p_r0 (received power at the 1 m reference); the regression model uses
// alpha (meters) and beta (per dBm, negative).
struct PathLossParams {
  double alpha = 1.0;
  double beta = -0.05;
  double gamma = 2.7;
  double p_r0 = -30.0;
};

struct RangingParams {
  std::map<std::string, PathLossParams> per_anchor;
  double los_threshold_m = 5.0;

  const PathLossParams& at(const std::string& an_id) const;
};

constexpr double kMinRssiDbm = -120.0;
constexpr double kMaxRssiDbm = 0.0;

// r = 10^((P(r0) - P) / (10 gamma)), reference distance 1 m.
double ldpl_range(double p_dbm, const PathLossParams& params);

// r = alpha * exp(beta * P).
double nlr_range(double p_dbm, const PathLossParams& params);

// Received power at the LOS threshold distance under the log-distance model.
double los_threshold_power(const PathLossParams& params, double los_threshold_m = 5.0);

// Piecewise model: log-distance above the LOS threshold power, regression at
// or below it.
double hybrid_range(double p_dbm, const PathLossParams& params, double los_threshold_m = 5.0);

struct NlrFit {
  double alpha = 0.0;
  double beta = 0.0;
};

// Least squares on ln r = ln alpha + beta * P. Needs >= 2 reference points
// with distinct powers and positive distances.
NlrFit fit_nlr(const std::vector<std::pair<double, double>>& distance_power_pairs);

// CSV an_id,alpha,beta,gamma,p_r0.
RangingParams load_ranging_params(const std::string& path, double los_threshold_m = 5.0);
void save_ranging_params(const RangingParams& params, const std::string& path);

// CSV an_id,true_distance_m,rssi_dbm grouped by anchor.
std::map<std::string, std::vector<std::pair<double, double>>> load_ranging_reference(
    const std::string& path);
void save_ranging_reference(
    const std::map<std::string, std::vector<std::pair<double, double>>>& reference,
    const std::string& path);

}  // namespace pfml

#endif
