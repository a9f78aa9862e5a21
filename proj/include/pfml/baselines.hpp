#ifndef PFML_BASELINES_HPP_
#define PFML_BASELINES_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pfml/geometry.hpp"
#include "pfml/sensing.hpp"

namespace pfml {

struct NlstResult {
  Vec2 position;
  bool converged = false;
  double residual = 0.0;  // sum of squared range residuals at `position`
  int iterations = 0;
};

// Gauss-Newton with Levenberg damping on sum_j (|x - a_j| - d_j)^2. Needs at
// least 3 non-collinear anchors; the default initial guess is the anchor
// centroid. Stops at step norm < 1e-9 m or 100 iterations (returning the
// best iterate with converged = false).
NlstResult nlst_locate(const std::map<std::string, double>& ranges_m,
                       const std::map<std::string, Vec2>& an_positions,
                       std::optional<Vec2> initial = std::nullopt);

// Survey-point fingerprints labeled with coordinates instead of rooms.
struct CoordFingerprintDatabase {
  std::vector<std::string> ap_list;
  std::vector<std::vector<double>> features;
  std::vector<Vec2> coords;
  double missing_fill = kDefaultMissingFillDbm;

  size_t size() const { return features.size(); }
  size_t feature_width() const { return ap_list.size() + 2; }
};

// Unweighted mean of the k nearest survey points in feature space, distance
// ties broken by instance index.
Vec2 knn_locate(const CoordFingerprintDatabase& db, const std::vector<double>& features, int k);

// CSV with header x,y,<ap ids...>,mf_v,mf_h; missing RSSI as empty cell.
CoordFingerprintDatabase load_coord_db(const std::string& path,
                                       double missing_fill = kDefaultMissingFillDbm);
void save_coord_db(const CoordFingerprintDatabase& db, const std::string& path);

}  // namespace pfml

#endif
