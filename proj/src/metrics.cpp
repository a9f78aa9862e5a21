#include "pfml/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace pfml {

double percentile_inclusive(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("percentile of empty sample");
  if (q < 0.0 || q > 1.0) throw std::invalid_argument("quantile must be in [0, 1]");
  std::sort(values.begin(), values.end());
  const double h = q * static_cast<double>(values.size() - 1);
  const size_t lo = static_cast<size_t>(std::floor(h));
  if (lo + 1 >= values.size()) return values.back();
  const double frac = h - static_cast<double>(lo);
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

MetricsReport MetricsReport::from_errors(std::vector<double> errors_m,
                                         std::vector<double> step_times_ms,
                                         int degeneracy_count) {
  if (errors_m.empty()) throw std::invalid_argument("no errors to report");
  MetricsReport report;
  report.errors_m = std::move(errors_m);
  report.step_times_ms = std::move(step_times_ms);
  report.degeneracy_count = degeneracy_count;

  double sum = 0.0;
  for (const double e : report.errors_m) sum += e;
  report.mean_m = sum / static_cast<double>(report.errors_m.size());
  double var = 0.0;
  for (const double e : report.errors_m) var += (e - report.mean_m) * (e - report.mean_m);
  report.sd_m = std::sqrt(var / static_cast<double>(report.errors_m.size()));
  report.p90_m = percentile_inclusive(report.errors_m, 0.9);

  std::vector<double> sorted = report.errors_m;
  std::sort(sorted.begin(), sorted.end());
  report.cdf.reserve(sorted.size());
  for (size_t i = 0; i < sorted.size(); ++i) {
    report.cdf.emplace_back(sorted[i],
                            static_cast<double>(i + 1) / static_cast<double>(sorted.size()));
  }

  if (!report.step_times_ms.empty()) {
    report.median_step_ms = percentile_inclusive(report.step_times_ms, 0.5);
  }
  return report;
}

std::string MetricsReport::to_json_string() const {
  // Wall-clock timings stay out of the artifact so identical seeds write
  // identical bytes; they are printed alongside instead.
  nlohmann::json j;
  j["errors_m"] = errors_m;
  j["mean_m"] = mean_m;
  j["sd_m"] = sd_m;
  j["p90_m"] = p90_m;
  nlohmann::json cdf_json = nlohmann::json::array();
  for (const auto& [e, f] : cdf) cdf_json.push_back({e, f});
  j["cdf"] = cdf_json;
  j["degeneracy_count"] = degeneracy_count;
  if (survey_time_min) j["survey_time_min"] = *survey_time_min;
  return j.dump(2);
}

double survey_time_pfml_min(double instances, double rate_hz, double ranging_min) {
  if (instances < 0.0 || rate_hz <= 0.0 || ranging_min < 0.0) {
    throw std::invalid_argument("survey-time inputs must be non-negative with rate > 0");
  }
  return instances / rate_hz / 60.0 + ranging_min;
}

double survey_time_knn_min(double survey_points, double t_survey_point_s, double t_switch_s,
                           double instances, double rate_hz) {
  if (survey_points < 0.0 || t_survey_point_s < 0.0 || t_switch_s < 0.0 || instances < 0.0 ||
      rate_hz <= 0.0) {
    throw std::invalid_argument("survey-time inputs must be non-negative with rate > 0");
  }
  return (survey_points * (t_survey_point_s + t_switch_s) + instances / rate_hz) / 60.0;
}

}  // namespace pfml
