#include "pfml/ranging.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pfml/csv.hpp"

namespace pfml {

const PathLossParams& RangingParams::at(const std::string& an_id) const {
  const auto it = per_anchor.find(an_id);
  if (it == per_anchor.end()) throw std::invalid_argument("no ranging params for '" + an_id + "'");
  return it->second;
}

namespace {

double clamp_power(double p_dbm) { return std::clamp(p_dbm, kMinRssiDbm, kMaxRssiDbm); }

}  // namespace

double ldpl_range(double p_dbm, const PathLossParams& params) {
  const double p = clamp_power(p_dbm);
  return std::pow(10.0, (params.p_r0 - p) / (10.0 * params.gamma));
}

double nlr_range(double p_dbm, const PathLossParams& params) {
  const double p = clamp_power(p_dbm);
  return params.alpha * std::exp(params.beta * p);
}

double los_threshold_power(const PathLossParams& params, double los_threshold_m) {
  return params.p_r0 - 10.0 * params.gamma * std::log10(los_threshold_m);
}

double hybrid_range(double p_dbm, const PathLossParams& params, double los_threshold_m) {
  const double p = clamp_power(p_dbm);
  return p > los_threshold_power(params, los_threshold_m) ? ldpl_range(p, params)
                                                          : nlr_range(p, params);
}

NlrFit fit_nlr(const std::vector<std::pair<double, double>>& distance_power_pairs) {
  const size_t n = distance_power_pairs.size();
  if (n < 2) throw std::invalid_argument("underdetermined fit: need at least 2 reference points");
  for (const auto& [r, p] : distance_power_pairs) {
    (void)p;
    if (r <= 0.0) throw std::invalid_argument("reference distances must be positive");
  }
  const double p0 = distance_power_pairs.front().second;
  const bool all_equal = std::all_of(distance_power_pairs.begin(), distance_power_pairs.end(),
                                     [&](const auto& rp) { return rp.second == p0; });
  if (all_equal) throw std::invalid_argument("underdetermined fit: all powers equal");

  double sp = 0.0, sl = 0.0, spp = 0.0, spl = 0.0;
  for (const auto& [r, p] : distance_power_pairs) {
    const double lr = std::log(r);
    sp += p;
    sl += lr;
    spp += p * p;
    spl += p * lr;
  }
  const double denom = n * spp - sp * sp;
  const double beta = (n * spl - sp * sl) / denom;
  const double intercept = (sl - beta * sp) / n;
  return {std::exp(intercept), beta};
}

RangingParams load_ranging_params(const std::string& path, double los_threshold_m) {
  const CsvTable table = read_csv(path);
  const std::vector<std::string> expected{"an_id", "alpha", "beta", "gamma", "p_r0"};
  if (table.header != expected) {
    throw std::runtime_error(path + ": expected header an_id,alpha,beta,gamma,p_r0");
  }
  RangingParams params;
  params.los_threshold_m = los_threshold_m;
  for (size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string context = path + ":" + std::to_string(r + 2);
    if (row.size() != 5) throw std::runtime_error(context + ": expected 5 fields");
    PathLossParams p;
    p.alpha = parse_double(row[1], context);
    p.beta = parse_double(row[2], context);
    p.gamma = parse_double(row[3], context);
    p.p_r0 = parse_double(row[4], context);
    if (p.alpha <= 0.0 || p.beta >= 0.0 || p.gamma <= 0.0) {
      throw std::runtime_error(context + ": require alpha > 0, beta < 0, gamma > 0");
    }
    params.per_anchor[row[0]] = p;
  }
  return params;
}

void save_ranging_params(const RangingParams& params, const std::string& path) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& [id, p] : params.per_anchor) {
    rows.push_back({id, format_double(p.alpha), format_double(p.beta), format_double(p.gamma),
                    format_double(p.p_r0)});
  }
  write_csv(path, {"an_id", "alpha", "beta", "gamma", "p_r0"}, rows);
}

std::map<std::string, std::vector<std::pair<double, double>>> load_ranging_reference(
    const std::string& path) {
  const CsvTable table = read_csv(path);
  const std::vector<std::string> expected{"an_id", "true_distance_m", "rssi_dbm"};
  if (table.header != expected) {
    throw std::runtime_error(path + ": expected header an_id,true_distance_m,rssi_dbm");
  }
  std::map<std::string, std::vector<std::pair<double, double>>> out;
  for (size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string context = path + ":" + std::to_string(r + 2);
    if (row.size() != 3) throw std::runtime_error(context + ": expected 3 fields");
    out[row[0]].emplace_back(parse_double(row[1], context), parse_double(row[2], context));
  }
  return out;
}

void save_ranging_reference(
    const std::map<std::string, std::vector<std::pair<double, double>>>& reference,
    const std::string& path) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& [id, pairs] : reference) {
    for (const auto& [r, p] : pairs) {
      rows.push_back({id, format_double(r), format_double(p)});
    }
  }
  write_csv(path, {"an_id", "true_distance_m", "rssi_dbm"}, rows);
}

}  // namespace pfml
