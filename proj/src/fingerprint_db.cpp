#include "pfml/fingerprint_db.hpp"

#include <algorithm>
#include <stdexcept>

#include "pfml/csv.hpp"

namespace pfml {

std::vector<std::string> FingerprintDatabase::class_labels() const {
  std::vector<std::string> out(labels.begin(), labels.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

FingerprintDatabase load_fingerprint_db(const std::string& path, double missing_fill,
                                        const std::set<std::string>& known_rooms) {
  const CsvTable table = read_csv(path);
  if (table.header.size() < 3 || table.header.front() != "room" ||
      table.header[table.header.size() - 2] != "mf_v" || table.header.back() != "mf_h") {
    throw std::runtime_error(path + ": expected header room,<ap ids...>,mf_v,mf_h");
  }
  FingerprintDatabase db;
  db.missing_fill = missing_fill;
  db.ap_list.assign(table.header.begin() + 1, table.header.end() - 2);

  const size_t cols = table.header.size();
  for (size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string context = path + ":" + std::to_string(r + 2);
    if (row.size() != cols) {
      throw std::runtime_error(context + ": expected " + std::to_string(cols) + " fields, got " +
                               std::to_string(row.size()));
    }
    const std::string& label = row[0];
    if (!known_rooms.empty() && !known_rooms.count(label)) {
      throw std::runtime_error(context + ": unknown room label '" + label + "'");
    }
    std::vector<double> features;
    features.reserve(cols - 1);
    for (size_t c = 1; c < cols; ++c) {
      const bool mf_column = c + 2 >= cols;
      if (row[c].empty() && !mf_column) {
        features.push_back(missing_fill);
      } else {
        features.push_back(parse_double(row[c], context));
      }
    }
    db.features.push_back(std::move(features));
    db.labels.push_back(label);
  }
  return db;
}

void save_fingerprint_db(const FingerprintDatabase& db, const std::string& path) {
  if (!db.has_mf) throw std::invalid_argument("only full-width databases can be saved");
  std::vector<std::string> header;
  header.push_back("room");
  header.insert(header.end(), db.ap_list.begin(), db.ap_list.end());
  header.push_back("mf_v");
  header.push_back("mf_h");

  std::vector<std::vector<std::string>> rows;
  rows.reserve(db.size());
  for (size_t i = 0; i < db.size(); ++i) {
    const auto& f = db.features[i];
    if (f.size() != db.feature_width()) {
      throw std::invalid_argument("instance " + std::to_string(i) + " has width " +
                                  std::to_string(f.size()) + ", expected " +
                                  std::to_string(db.feature_width()));
    }
    std::vector<std::string> row;
    row.reserve(f.size() + 1);
    row.push_back(db.labels[i]);
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

FingerprintDatabase project_db(const FingerprintDatabase& db, size_t ap_count, bool include_mf) {
  if (ap_count > db.ap_list.size()) throw std::invalid_argument("ap_count exceeds ap_list");
  FingerprintDatabase out;
  out.ap_list.assign(db.ap_list.begin(), db.ap_list.begin() + ap_count);
  out.labels = db.labels;
  out.missing_fill = db.missing_fill;
  out.has_mf = include_mf && db.has_mf;
  out.features.reserve(db.size());
  for (const auto& f : db.features) {
    std::vector<double> proj(f.begin(), f.begin() + ap_count);
    if (out.has_mf) {
      proj.push_back(f[f.size() - 2]);
      proj.push_back(f[f.size() - 1]);
    }
    out.features.push_back(std::move(proj));
  }
  return out;
}

}  // namespace pfml
