#ifndef PFML_FINGERPRINT_DB_HPP_
#define PFML_FINGERPRINT_DB_HPP_

#include <set>
#include <string>
#include <vector>

#include "pfml/sensing.hpp"

namespace pfml {

// Room-labeled <fingerprint, room> instances. Canonical feature width is
// |ap_list| + 2 (RSSIs then mf_v, mf_h); unheard anchors are stored as
// missing_fill so vectors stay fixed-width. In-memory ablation projections
// may drop the magnetic columns (has_mf = false).
struct FingerprintDatabase {
  std::vector<std::string> ap_list;
  std::vector<std::vector<double>> features;
  std::vector<std::string> labels;
  double missing_fill = kDefaultMissingFillDbm;
  bool has_mf = true;

  size_t size() const { return features.size(); }
  size_t feature_width() const { return ap_list.size() + (has_mf ? 2 : 0); }
  std::vector<std::string> class_labels() const;  // sorted unique
};

// CSV with header room,<ap ids...>,mf_v,mf_h. Missing RSSI is an empty cell,
// reinstated as missing_fill on load; save writes missing_fill back as empty.
// When `known_rooms` is non-empty, labels outside it fail with the row's
// line number.
FingerprintDatabase load_fingerprint_db(const std::string& path,
                                        double missing_fill = kDefaultMissingFillDbm,
                                        const std::set<std::string>& known_rooms = {});
void save_fingerprint_db(const FingerprintDatabase& db, const std::string& path);

// Keeps the first `ap_count` anchor columns and optionally the magnetic
// columns. Used for anchor-count and Wi-Fi-only ablations.
FingerprintDatabase project_db(const FingerprintDatabase& db, size_t ap_count, bool include_mf);

}  // namespace pfml

#endif
