#include "pfml/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pfml/csv.hpp"

namespace pfml {

namespace {

double range_residual_sum(const Vec2& x, const std::vector<Vec2>& anchors,
                          const std::vector<double>& ranges) {
  double s = 0.0;
  for (size_t j = 0; j < anchors.size(); ++j) {
    const double f = distance(x, anchors[j]) - ranges[j];
    s += f * f;
  }
  return s;
}

bool anchors_collinear(const std::vector<Vec2>& anchors) {
  // Smallest eigenvalue of the position covariance; near zero means the
  // anchors span a line.
  Vec2 mean;
  for (const Vec2& a : anchors) mean = mean + a;
  mean = mean * (1.0 / static_cast<double>(anchors.size()));
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (const Vec2& a : anchors) {
    const Vec2 d = a - mean;
    sxx += d.x * d.x;
    syy += d.y * d.y;
    sxy += d.x * d.y;
  }
  const double tr = sxx + syy;
  const double det = sxx * syy - sxy * sxy;
  const double lambda_min = 0.5 * (tr - std::sqrt(std::max(tr * tr - 4.0 * det, 0.0)));
  return lambda_min < 1e-9;
}

}  // namespace

NlstResult nlst_locate(const std::map<std::string, double>& ranges_m,
                       const std::map<std::string, Vec2>& an_positions,
                       std::optional<Vec2> initial) {
  std::vector<Vec2> anchors;
  std::vector<double> ranges;
  for (const auto& [an_id, d] : ranges_m) {
    const auto it = an_positions.find(an_id);
    if (it == an_positions.end()) {
      throw std::invalid_argument("anchor '" + an_id + "' has no known position");
    }
    anchors.push_back(it->second);
    ranges.push_back(d);
  }
  if (anchors.size() < 3 || anchors_collinear(anchors)) {
    throw std::invalid_argument("degenerate geometry: need >= 3 non-collinear anchors");
  }

  Vec2 x;
  if (initial) {
    x = *initial;
  } else {
    for (const Vec2& a : anchors) x = x + a;
    x = x * (1.0 / static_cast<double>(anchors.size()));
  }

  double lambda = 1e-3;
  double best_residual = range_residual_sum(x, anchors, ranges);
  NlstResult result{x, false, best_residual, 0};

  for (int iter = 0; iter < 100; ++iter) {
    result.iterations = iter + 1;
    // Normal equations (J^T J + lambda I) delta = -J^T f with
    // J_j = (x - a_j)^T / |x - a_j|.
    double jtj00 = 0.0, jtj01 = 0.0, jtj11 = 0.0, jtf0 = 0.0, jtf1 = 0.0;
    for (size_t j = 0; j < anchors.size(); ++j) {
      const Vec2 diff = x - anchors[j];
      const double dist = std::max(diff.norm(), 1e-12);
      const double f = dist - ranges[j];
      const double jx = diff.x / dist;
      const double jy = diff.y / dist;
      jtj00 += jx * jx;
      jtj01 += jx * jy;
      jtj11 += jy * jy;
      jtf0 += jx * f;
      jtf1 += jy * f;
    }
    const double a00 = jtj00 + lambda;
    const double a11 = jtj11 + lambda;
    const double det = a00 * a11 - jtj01 * jtj01;
    if (std::abs(det) < 1e-300) break;
    const Vec2 delta{(-jtf0 * a11 + jtf1 * jtj01) / det, (-jtf1 * a00 + jtf0 * jtj01) / det};

    const Vec2 candidate = x + delta;
    const double candidate_residual = range_residual_sum(candidate, anchors, ranges);
    if (candidate_residual <= best_residual) {
      x = candidate;
      best_residual = candidate_residual;
      lambda /= 10.0;
      if (delta.norm() < 1e-9) {
        result.converged = true;
        break;
      }
    } else {
      lambda *= 10.0;
      if (lambda > 1e12) break;
    }
  }
  result.position = x;
  result.residual = best_residual;
  return result;
}

Vec2 knn_locate(const CoordFingerprintDatabase& db, const std::vector<double>& features, int k) {
  const size_t n = db.size();
  if (k < 1 || static_cast<size_t>(k) > n) throw std::invalid_argument("k out of range");
  if (features.size() != db.feature_width()) throw std::invalid_argument("feature width mismatch");

  std::vector<std::pair<double, size_t>> dist_index;
  dist_index.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    double d2 = 0.0;
    for (size_t a = 0; a < features.size(); ++a) {
      const double diff = db.features[i][a] - features[a];
      d2 += diff * diff;
    }
    dist_index.emplace_back(d2, i);
  }
  std::partial_sort(dist_index.begin(), dist_index.begin() + k, dist_index.end());

  Vec2 mean;
  for (int i = 0; i < k; ++i) {
    const Vec2& c = db.coords[dist_index[i].second];
    mean = mean + c;
  }
  return mean * (1.0 / static_cast<double>(k));
}

CoordFingerprintDatabase load_coord_db(const std::string& path, double missing_fill) {
  const CsvTable table = read_csv(path);
  if (table.header.size() < 4 || table.header[0] != "x" || table.header[1] != "y" ||
      table.header[table.header.size() - 2] != "mf_v" || table.header.back() != "mf_h") {
    throw std::runtime_error(path + ": expected header x,y,<ap ids...>,mf_v,mf_h");
  }
  CoordFingerprintDatabase db;
  db.missing_fill = missing_fill;
  db.ap_list.assign(table.header.begin() + 2, table.header.end() - 2);

  const size_t cols = table.header.size();
  for (size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string context = path + ":" + std::to_string(r + 2);
    if (row.size() != cols) {
      throw std::runtime_error(context + ": expected " + std::to_string(cols) + " fields");
    }
    Vec2 coord{parse_double(row[0], context), parse_double(row[1], context)};
    std::vector<double> features;
    features.reserve(cols - 2);
    for (size_t c = 2; c < cols; ++c) {
      const bool mf_column = c + 2 >= cols;
      if (row[c].empty() && !mf_column) {
        features.push_back(missing_fill);
      } else {
        features.push_back(parse_double(row[c], context));
      }
    }
    db.coords.push_back(coord);
    db.features.push_back(std::move(features));
  }
  return db;
}

void save_coord_db(const CoordFingerprintDatabase& db, const std::string& path) {
  std::vector<std::string> header{"x", "y"};
  header.insert(header.end(), db.ap_list.begin(), db.ap_list.end());
  header.push_back("mf_v");
  header.push_back("mf_h");

  std::vector<std::vector<std::string>> rows;
  rows.reserve(db.size());
  for (size_t i = 0; i < db.size(); ++i) {
    const auto& f = db.features[i];
    std::vector<std::string> row{format_double(db.coords[i].x), format_double(db.coords[i].y)};
    for (size_t c = 0; c < f.size(); ++c) {
      const bool mf_column = c + 2 >= f.size();
      if (!mf_column && f[c] == db.missing_fill) {
        row.emplace_back();
      } else {
        row.push_back(format_double(f[c]));
      }
    }
    rows.push_back(std::move(row));
  }
  write_csv(path, header, rows);
}

}  // namespace pfml
