#ifndef PFML_METRICS_HPP_
#define PFML_METRICS_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pfml {

// Inclusive (linearly interpolated) percentile over a sample, q in [0, 1].
double percentile_inclusive(std::vector<double> values, double q);

struct MetricsReport {
  std::vector<double> errors_m;  // one entry per evaluated point
  double mean_m = 0.0;
  double sd_m = 0.0;  // population standard deviation
  double p90_m = 0.0;
  std::vector<std::pair<double, double>> cdf;  // (error, cumulative fraction)
  std::vector<double> step_times_ms;
  double median_step_ms = 0.0;
  int degeneracy_count = 0;
  std::optional<double> survey_time_min;

  static MetricsReport from_errors(std::vector<double> errors_m,
                                   std::vector<double> step_times_ms = {},
                                   int degeneracy_count = 0);

  std::string to_json_string() const;
};

// Offline survey-time accounting, minutes. The collection term is
// instances / rate, i.e. the per-instance period times the instance count.
double survey_time_pfml_min(double instances, double rate_hz, double ranging_min);
double survey_time_knn_min(double survey_points, double t_survey_point_s, double t_switch_s,
                           double instances, double rate_hz);

}  // namespace pfml

#endif
