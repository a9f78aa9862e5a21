#include "pfml/landmark.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "pfml/rng.hpp"

namespace pfml {

std::string argmax_room(const RoomPosterior& posterior) {
  if (posterior.empty()) throw std::invalid_argument("empty posterior");
  // std::map iterates keys ascending, so > keeps the lexicographically
  // smallest room on ties.
  auto best = posterior.begin();
  for (auto it = posterior.begin(); it != posterior.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  return best->first;
}

std::string ClassifierSpec::describe() const {
  char buf[48];
  if (type == Type::kstar) {
    std::snprintf(buf, sizeof(buf), "kstar(blend=%g)", blend);
  } else {
    std::snprintf(buf, sizeof(buf), "knn(k=%d)", k);
  }
  return buf;
}

namespace {

// Effective instance count for per-instance masses exp(-d_i / x0), evaluated
// shift-invariantly on distances sorted ascending. Terms past a 60-nat drop
// from the leading one are negligible and skipped.
double effective_count(const std::vector<double>& sorted_dists, double x0) {
  const double d0 = sorted_dists.front();
  double s1 = 0.0, s2 = 0.0;
  for (const double d : sorted_dists) {
    const double l = (d - d0) / x0;
    if (l > 60.0) break;
    const double p = std::exp(-l);
    s1 += p;
    s2 += p * p;
  }
  return s1 * s1 / s2;
}

// Scale selection: bisection in log-scale space until the effective count is
// within 1e-3 of the blend target, 64 iterations max, final bracket midpoint
// at the cap.
double solve_scale(const std::vector<double>& sorted_dists, double target) {
  const double d_min = sorted_dists.front();
  const double d_max = sorted_dists.back();
  if (d_max - d_min < 1e-12) return std::max(d_max, 1.0);

  double lo = std::max((d_max - d_min) * 1e-9, 1e-12);
  double hi = std::max(d_max, 1e-6);
  for (int i = 0; i < 64 && effective_count(sorted_dists, hi) < target; ++i) hi *= 4.0;
  if (effective_count(sorted_dists, lo) >= target) return lo;

  double mid = std::sqrt(lo * hi);
  for (int i = 0; i < 64; ++i) {
    mid = std::sqrt(lo * hi);
    const double n_eff = effective_count(sorted_dists, mid);
    if (std::abs(n_eff - target) < 1e-3) return mid;
    if (n_eff < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::sqrt(lo * hi);
}

}  // namespace

KStarModel KStarModel::train(const FingerprintDatabase& db, double blend_percent) {
  if (db.size() == 0) throw std::invalid_argument("empty training database");
  if (blend_percent <= 0.0 || blend_percent > 100.0) {
    throw std::invalid_argument("blend must be in (0, 100]");
  }
  KStarModel model;
  model.blend_ = blend_percent;
  model.width_ = db.feature_width();
  model.classes_ = db.class_labels();

  model.columns_.assign(model.width_, {});
  for (auto& col : model.columns_) col.reserve(db.size());
  for (const auto& f : db.features) {
    if (f.size() != model.width_) throw std::invalid_argument("inconsistent feature width");
    for (size_t a = 0; a < model.width_; ++a) model.columns_[a].push_back(f[a]);
  }
  model.label_index_.reserve(db.size());
  for (const auto& label : db.labels) {
    const auto it = std::lower_bound(model.classes_.begin(), model.classes_.end(), label);
    model.label_index_.push_back(static_cast<uint32_t>(it - model.classes_.begin()));
  }
  return model;
}

RoomPosterior KStarModel::predict(const std::vector<double>& features) const {
  const size_t n = training_size();
  if (features.size() != width_) {
    throw std::invalid_argument("feature width " + std::to_string(features.size()) +
                                " does not match training width " + std::to_string(width_));
  }
  const double target = 1.0 + blend_ / 100.0 * (static_cast<double>(n) - 1.0);

  // Accumulate per-instance log transformation probabilities attribute by
  // attribute; the per-attribute density normalizer is common to every
  // instance and cancels under class normalization.
  std::vector<double> log_p(n, 0.0);
  std::vector<double> dists(n);
  std::vector<double> sorted(n);
  for (size_t a = 0; a < width_; ++a) {
    const auto& col = columns_[a];
    for (size_t i = 0; i < n; ++i) dists[i] = std::abs(col[i] - features[a]);
    sorted = dists;
    std::sort(sorted.begin(), sorted.end());
    const double x0 = n > 1 ? solve_scale(sorted, target) : 1.0;
    for (size_t i = 0; i < n; ++i) log_p[i] -= dists[i] / x0;
  }

  const double shift = *std::max_element(log_p.begin(), log_p.end());
  std::vector<double> class_score(classes_.size(), 0.0);
  for (size_t i = 0; i < n; ++i) class_score[label_index_[i]] += std::exp(log_p[i] - shift);
  const double total = std::accumulate(class_score.begin(), class_score.end(), 0.0);

  RoomPosterior posterior;
  for (size_t c = 0; c < classes_.size(); ++c) posterior[classes_[c]] = class_score[c] / total;
  return posterior;
}

RoomPosterior knn_predict(const FingerprintDatabase& db, const std::vector<double>& features,
                          int k) {
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
  // pair ordering breaks distance ties toward the lower instance index
  std::partial_sort(dist_index.begin(), dist_index.begin() + k, dist_index.end());

  RoomPosterior posterior;
  for (const auto& label : db.class_labels()) posterior[label] = 0.0;
  for (int i = 0; i < k; ++i) posterior[db.labels[dist_index[i].second]] += 1.0 / k;
  return posterior;
}

RoomPosterior classify(const FingerprintDatabase& train_db, const ClassifierSpec& spec,
                       const std::vector<double>& features) {
  if (spec.type == ClassifierSpec::Type::kstar) {
    return KStarModel::train(train_db, spec.blend).predict(features);
  }
  return knn_predict(train_db, features, spec.k);
}

namespace {

FingerprintDatabase subset_db(const FingerprintDatabase& db, const std::vector<uint32_t>& indices) {
  FingerprintDatabase out;
  out.ap_list = db.ap_list;
  out.missing_fill = db.missing_fill;
  out.has_mf = db.has_mf;
  out.features.reserve(indices.size());
  out.labels.reserve(indices.size());
  for (const uint32_t i : indices) {
    out.features.push_back(db.features[i]);
    out.labels.push_back(db.labels[i]);
  }
  return out;
}

}  // namespace

CrossValidationResult cross_validate(const FingerprintDatabase& db, const ClassifierSpec& spec,
                                     int folds, uint64_t seed) {
  const size_t n = db.size();
  if (folds < 2) throw std::invalid_argument("folds must be >= 2");
  if (n < static_cast<size_t>(folds)) throw std::invalid_argument("fewer instances than folds");

  std::map<std::string, std::vector<uint32_t>> by_class;
  for (size_t i = 0; i < n; ++i) by_class[db.labels[i]].push_back(static_cast<uint32_t>(i));

  bool stratified = true;
  for (const auto& [label, idx] : by_class) {
    (void)label;
    if (idx.size() < static_cast<size_t>(folds)) stratified = false;
  }

  auto shuffle = [](std::vector<uint32_t>& v, Rng& rng) {
    for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
  };

  Rng rng(seed);
  std::vector<std::vector<uint32_t>> fold_members(folds);
  if (stratified) {
    size_t dealt = 0;
    for (auto& [label, idx] : by_class) {
      (void)label;
      shuffle(idx, rng);
      for (const uint32_t i : idx) fold_members[dealt++ % folds].push_back(i);
    }
  } else {
    std::vector<uint32_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    shuffle(all, rng);
    for (size_t i = 0; i < n; ++i) fold_members[i % folds].push_back(all[i]);
  }

  auto eval_fold = [&](int f) -> size_t {
    std::vector<uint32_t> train_idx;
    train_idx.reserve(n - fold_members[f].size());
    for (int g = 0; g < folds; ++g) {
      if (g == f) continue;
      train_idx.insert(train_idx.end(), fold_members[g].begin(), fold_members[g].end());
    }
    const FingerprintDatabase train = subset_db(db, train_idx);
    size_t correct = 0;
    if (spec.type == ClassifierSpec::Type::kstar) {
      const KStarModel model = KStarModel::train(train, spec.blend);
      for (const uint32_t i : fold_members[f]) {
        if (argmax_room(model.predict(db.features[i])) == db.labels[i]) ++correct;
      }
    } else {
      for (const uint32_t i : fold_members[f]) {
        if (argmax_room(knn_predict(train, db.features[i], spec.k)) == db.labels[i]) ++correct;
      }
    }
    return correct;
  };

  const unsigned workers = std::max(1u, std::min(std::thread::hardware_concurrency(),
                                                 static_cast<unsigned>(folds)));
  std::vector<size_t> correct_per_fold(folds, 0);
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (int f = next.fetch_add(1); f < folds; f = next.fetch_add(1)) {
        correct_per_fold[f] = eval_fold(f);
      }
    });
  }
  for (auto& t : pool) t.join();

  const size_t correct = std::accumulate(correct_per_fold.begin(), correct_per_fold.end(), size_t{0});
  return {100.0 * static_cast<double>(correct) / static_cast<double>(n), stratified};
}

}  // namespace pfml
