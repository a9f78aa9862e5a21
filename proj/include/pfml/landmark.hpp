#ifndef PFML_LANDMARK_HPP_
#define PFML_LANDMARK_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pfml/fingerprint_db.hpp"

namespace pfml {

// Normalized probability per room; support is the training label set.
using RoomPosterior = std::map<std::string, double>;

// Argmax with lexicographically-smallest tie break.
std::string argmax_room(const RoomPosterior& posterior);

struct ClassifierSpec {
  enum class Type { kstar, knn };
  Type type = Type::kstar;
  double blend = 30.0;  // kstar global blend, percent
  int k = 3;            // knn neighbor count

  std::string describe() const;
};

// Instance-based classifier scoring a query by the probability of
// transforming it into each stored instance, per-attribute exponential
// transformation densities. The per-attribute scale is chosen at query time
// so the effective instance count (sum p)^2 / sum p^2 matches
// 1 + blend/100 * (N - 1).
class KStarModel {
 public:
  static KStarModel train(const FingerprintDatabase& db, double blend_percent);

  RoomPosterior predict(const std::vector<double>& features) const;

  double blend_percent() const { return blend_; }
  size_t training_size() const { return label_index_.size(); }

 private:
  double blend_ = 30.0;
  size_t width_ = 0;
  std::vector<std::vector<double>> columns_;  // per attribute, training order
  std::vector<uint32_t> label_index_;
  std::vector<std::string> classes_;  // sorted
};

RoomPosterior knn_predict(const FingerprintDatabase& db, const std::vector<double>& features,
                          int k);

RoomPosterior classify(const FingerprintDatabase& train_db, const ClassifierSpec& spec,
                       const std::vector<double>& features);

struct CrossValidationResult {
  double accuracy_pct = 0.0;
  bool stratified = true;  // false: some class had fewer instances than folds
};

// Seeded stratified k-fold; falls back to plain shuffled folds (with the
// warning flag) when a class is smaller than the fold count. Fold evaluation
// runs on a couple of worker threads; the result does not depend on
// scheduling.
CrossValidationResult cross_validate(const FingerprintDatabase& db, const ClassifierSpec& spec,
                                     int folds, uint64_t seed);

}  // namespace pfml

#endif
