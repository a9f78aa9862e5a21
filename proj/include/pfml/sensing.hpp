#ifndef PFML_SENSING_HPP_
#define PFML_SENSING_HPP_

#include <map>
#include <string>
#include <vector>

namespace pfml {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const;
};

// One time step's sensor snapshot, phone frame. Anchors absent from `rssi_dbm`
// were not heard in the scan window.
struct ObservationFrame {
  double timestamp_s = 0.0;
  std::map<std::string, double> rssi_dbm;
  Vec3 mf_ut;
  Vec3 gravity_mps2;
};

// Orientation-invariant magnetic components: signed projection onto gravity
// plus the norm of the horizontal remainder.
struct MagneticSignature {
  double mf_v = 0.0;
  double mf_h = 0.0;
};

MagneticSignature decompose_mf(const Vec3& mf, const Vec3& gravity);

constexpr double kDefaultMissingFillDbm = -100.0;

// Fixed-width vector [rssi(ap_1)..rssi(ap_k), mf_v, mf_h]; unheard anchors
// take `missing_fill`.
std::vector<double> frame_to_features(const ObservationFrame& frame,
                                      const std::vector<std::string>& ap_list,
                                      double missing_fill = kDefaultMissingFillDbm);

}  // namespace pfml

#endif
