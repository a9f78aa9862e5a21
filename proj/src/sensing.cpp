#include "pfml/sensing.hpp"

#include <cmath>
#include <stdexcept>

namespace pfml {

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

MagneticSignature decompose_mf(const Vec3& mf, const Vec3& gravity) {
  const double gnorm = gravity.norm();
  if (gnorm <= 0.0) throw std::invalid_argument("undefined vertical axis: zero gravity vector");
  const Vec3 g_hat = gravity * (1.0 / gnorm);
  const double mf_v = mf.dot(g_hat);
  const Vec3 horizontal = mf - g_hat * mf_v;
  return {mf_v, horizontal.norm()};
}

std::vector<double> frame_to_features(const ObservationFrame& frame,
                                      const std::vector<std::string>& ap_list,
                                      double missing_fill) {
  if (ap_list.empty()) throw std::invalid_argument("ap_list must not be empty");
  std::vector<double> features;
  features.reserve(ap_list.size() + 2);
  for (const auto& ap : ap_list) {
    const auto it = frame.rssi_dbm.find(ap);
    features.push_back(it != frame.rssi_dbm.end() ? it->second : missing_fill);
  }
  const MagneticSignature sig = decompose_mf(frame.mf_ut, frame.gravity_mps2);
  features.push_back(sig.mf_v);
  features.push_back(sig.mf_h);
  return features;
}

}  // namespace pfml
