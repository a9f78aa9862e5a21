#include "pfml/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pfml/csv.hpp"
#include "pfml/json_io.hpp"

namespace pfml {

namespace {

constexpr double kGravityMps2 = 9.81;

const MfRoomField& field_for(const EnvironmentModel& env, const std::string& area_id) {
  static const MfRoomField default_field;
  const auto it = env.mf_rooms.find(area_id);
  return it != env.mf_rooms.end() ? it->second : default_field;
}

}  // namespace

double forward_rssi_noiseless(const EnvironmentModel& env, const std::string& an_id,
                              const Vec2& position) {
  const auto it = env.true_anchor_positions.find(an_id);
  if (it == env.true_anchor_positions.end()) {
    throw std::invalid_argument("unknown anchor '" + an_id + "'");
  }
  const PathLossParams& params = env.truth_ranging.at(an_id);
  const double r = std::max(distance(position, it->second), 0.1);
  const double p = params.p_r0 - 10.0 * params.gamma * std::log10(r);
  return std::clamp(p, kMinRssiDbm, kMaxRssiDbm);
}

double forward_rssi(const EnvironmentModel& env, const std::string& an_id, const Vec2& position,
                    Rng& rng) {
  double p = forward_rssi_noiseless(env, an_id, position);
  if (env.shadowing_sigma_db > 0.0) p += rng.gaussian(0.0, env.shadowing_sigma_db);
  return std::clamp(p, kMinRssiDbm, kMaxRssiDbm);
}

MagneticSignature forward_mf(const EnvironmentModel& env, const Vec2& position) {
  const WalkableArea* area = env.plan.area_at(position);
  if (!area) throw std::invalid_argument("position is in a restricted area");
  const MfRoomField& field = field_for(env, area->id);
  const double k = 2.0 * M_PI / kMfWavelengthM;
  const double mf_v = field.base_v_ut + field.amp_ut * std::sin(k * (position.x + position.y) +
                                                                field.phase_rad);
  const double mf_h = field.base_h_ut + field.amp_ut * std::cos(k * (position.x - position.y) +
                                                                field.phase_rad);
  return {mf_v, std::max(mf_h, 0.0)};
}

MagneticSignature forward_mf_noisy(const EnvironmentModel& env, const Vec2& position, Rng& rng) {
  MagneticSignature sig = forward_mf(env, position);
  if (env.mf_noise_sigma_ut > 0.0) {
    sig.mf_v += rng.gaussian(0.0, env.mf_noise_sigma_ut);
    sig.mf_h = std::max(sig.mf_h + rng.gaussian(0.0, env.mf_noise_sigma_ut), 0.0);
  }
  return sig;
}

GroundTruthTrace gen_trace(const FloorPlan& plan, const std::vector<Vec2>& waypoints,
                           double speed_mps, double rate_hz, double stationary_duration_s) {
  if (waypoints.empty()) throw std::invalid_argument("need at least one waypoint");
  if (speed_mps <= 0.0 || rate_hz <= 0.0) {
    throw std::invalid_argument("speed and rate must be positive");
  }
  for (const Vec2& w : waypoints) {
    if (!plan.is_walkable(w)) {
      throw std::invalid_argument("waypoint (" + format_double(w.x) + ", " + format_double(w.y) +
                                  ") is in a restricted area");
    }
  }

  std::vector<double> cum_len{0.0};
  for (size_t i = 1; i < waypoints.size(); ++i) {
    cum_len.push_back(cum_len.back() + distance(waypoints[i - 1], waypoints[i]));
  }
  const double total_len = cum_len.back();

  auto point_at = [&](double along) -> Vec2 {
    if (along <= 0.0) return waypoints.front();
    if (along >= total_len) return waypoints.back();
    size_t seg = 1;
    while (cum_len[seg] < along) ++seg;
    const double seg_len = cum_len[seg] - cum_len[seg - 1];
    const double t = (along - cum_len[seg - 1]) / seg_len;
    return waypoints[seg - 1] + (waypoints[seg] - waypoints[seg - 1]) * t;
  };

  size_t count;
  if (total_len < 1e-12) {
    count = std::max<size_t>(1, static_cast<size_t>(std::llround(stationary_duration_s * rate_hz)));
  } else {
    count = static_cast<size_t>(std::floor(total_len / speed_mps * rate_hz + 1e-9)) + 1;
  }

  GroundTruthTrace trace;
  trace.reserve(count);
  for (size_t k = 0; k < count; ++k) {
    const double t = static_cast<double>(k) / rate_hz;
    const Vec2 pos = point_at(t * speed_mps);
    const WalkableArea* area = plan.area_at(pos);
    if (!area) {
      throw std::runtime_error("trace leaves the walkable area at t=" + format_double(t));
    }
    trace.push_back({t, pos, area->id});
  }
  return trace;
}

std::vector<ObservationFrame> gen_observations(const EnvironmentModel& env,
                                               const GroundTruthTrace& trace, uint64_t seed) {
  Rng rng(seed);
  const std::vector<std::string> ap_list = env.plan.anchor_ids();
  std::vector<ObservationFrame> frames;
  frames.reserve(trace.size());
  for (const TracePoint& tp : trace) {
    ObservationFrame frame;
    frame.timestamp_s = tp.t;
    for (const auto& ap : ap_list) {
      if (forward_rssi_noiseless(env, ap, tp.position) < env.audibility_floor_dbm) continue;
      frame.rssi_dbm[ap] = forward_rssi(env, ap, tp.position, rng);
    }
    const MagneticSignature sig = forward_mf_noisy(env, tp.position, rng);
    // World-frame field with the horizontal part along +x, rotated into the
    // phone frame by a random yaw about gravity.
    const double yaw = rng.uniform(0.0, 2.0 * M_PI);
    frame.mf_ut = {sig.mf_h * std::cos(yaw), sig.mf_h * std::sin(yaw), sig.mf_v};
    frame.gravity_mps2 = {0.0, 0.0, kGravityMps2};
    frames.push_back(std::move(frame));
  }
  return frames;
}

Vec2 random_walkable_point(const FloorPlan& plan, Rng& rng) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const Vec2 p{rng.uniform(0.0, plan.width_m), rng.uniform(0.0, plan.height_m)};
    if (plan.is_walkable(p)) return p;
  }
  throw std::runtime_error("could not sample a walkable point");
}

namespace {

Vec2 random_point_in(const Polygon& poly, Rng& rng) {
  const BoundingBox box = polygon_bbox(poly);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const Vec2 p{rng.uniform(box.min_x, box.max_x), rng.uniform(box.min_y, box.max_y)};
    if (point_in_polygon(p, poly)) return p;
  }
  throw std::runtime_error("could not sample a point inside the polygon");
}

}  // namespace

FingerprintDatabase build_survey_db(const EnvironmentModel& env, const SurveySpec& spec,
                                    uint64_t seed) {
  std::vector<std::string> rooms = spec.rooms.empty() ? env.plan.room_ids() : spec.rooms;
  std::vector<std::string> missing;
  for (const auto& id : env.plan.room_ids()) {
    if (std::find(rooms.begin(), rooms.end(), id) == rooms.end()) missing.push_back(id);
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& id : missing) list += (list.empty() ? "" : ", ") + id;
    throw std::invalid_argument("survey spec leaves rooms uncovered: " + list);
  }

  FingerprintDatabase db;
  db.ap_list = env.plan.anchor_ids();
  db.missing_fill = kDefaultMissingFillDbm;

  size_t room_index = 0;
  for (const auto& room_id : rooms) {
    const auto it = std::find_if(env.plan.rooms.begin(), env.plan.rooms.end(),
                                 [&](const WalkableArea& r) { return r.id == room_id; });
    if (it == env.plan.rooms.end()) {
      throw std::invalid_argument("survey spec names unknown room '" + room_id + "'");
    }
    Rng rng(derive_seed(seed, room_index++));
    int collected = 0;
    Vec2 here = random_point_in(it->polygon, rng);
    while (collected < spec.instances_per_room) {
      const Vec2 next = random_point_in(it->polygon, rng);
      GroundTruthTrace leg = gen_trace(env.plan, {here, next}, spec.speed_mps, spec.rate_hz, 1.0);
      const auto frames = gen_observations(env, leg, rng.next_u64());
      for (size_t i = 0; i < frames.size(); ++i) {
        if (collected >= spec.instances_per_room) break;
        // Legs can clip a neighboring area in non-convex rooms; keep only
        // frames whose ground truth is the surveyed room.
        if (leg[i].room != room_id) continue;
        db.features.push_back(frame_to_features(frames[i], db.ap_list, db.missing_fill));
        db.labels.push_back(room_id);
        ++collected;
      }
      here = next;
    }
  }
  return db;
}

CoordFingerprintDatabase build_coord_survey_db(const EnvironmentModel& env, double grid_step_m,
                                               int samples_per_point, uint64_t seed) {
  if (grid_step_m <= 0.0 || samples_per_point <= 0) {
    throw std::invalid_argument("grid step and samples per point must be positive");
  }
  CoordFingerprintDatabase db;
  db.ap_list = env.plan.anchor_ids();
  db.missing_fill = kDefaultMissingFillDbm;

  Rng rng(seed);
  const double eps = 1e-9;
  const int nx = static_cast<int>(std::floor(env.plan.width_m / grid_step_m + eps)) + 1;
  const int ny = static_cast<int>(std::floor(env.plan.height_m / grid_step_m + eps)) + 1;
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const Vec2 p{ix * grid_step_m, iy * grid_step_m};
      if (!env.plan.is_walkable(p)) continue;
      GroundTruthTrace stay = gen_trace(env.plan, {p}, 1.0, 3.0,
                                        static_cast<double>(samples_per_point) / 3.0);
      stay.resize(std::min<size_t>(stay.size(), samples_per_point));
      const auto frames = gen_observations(env, stay, rng.next_u64());
      for (const auto& frame : frames) {
        db.features.push_back(frame_to_features(frame, db.ap_list, db.missing_fill));
        db.coords.push_back(p);
      }
    }
  }
  if (db.size() == 0) throw std::runtime_error("survey grid produced no points");
  return db;
}

void save_trace_csv(const GroundTruthTrace& trace, const std::string& path) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(trace.size());
  for (const TracePoint& tp : trace) {
    rows.push_back({format_double(tp.t), format_double(tp.position.x), format_double(tp.position.y),
                    tp.room});
  }
  write_csv(path, {"t", "x", "y", "room"}, rows);
}

GroundTruthTrace load_trace_csv(const std::string& path) {
  const CsvTable table = read_csv(path);
  const std::vector<std::string> expected{"t", "x", "y", "room"};
  if (table.header != expected) throw std::runtime_error(path + ": expected header t,x,y,room");
  GroundTruthTrace trace;
  for (size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string context = path + ":" + std::to_string(r + 2);
    if (row.size() != 4) throw std::runtime_error(context + ": expected 4 fields");
    trace.push_back({parse_double(row[0], context),
                     {parse_double(row[1], context), parse_double(row[2], context)},
                     row[3]});
  }
  return trace;
}

void save_observations_csv(const std::vector<ObservationFrame>& frames,
                           const std::vector<std::string>& ap_list, const std::string& path) {
  std::vector<std::string> header{"t"};
  header.insert(header.end(), ap_list.begin(), ap_list.end());
  for (const char* c : {"mfx", "mfy", "mfz", "gx", "gy", "gz"}) header.push_back(c);

  std::vector<std::vector<std::string>> rows;
  rows.reserve(frames.size());
  for (const auto& frame : frames) {
    std::vector<std::string> row{format_double(frame.timestamp_s)};
    for (const auto& ap : ap_list) {
      const auto it = frame.rssi_dbm.find(ap);
      row.push_back(it != frame.rssi_dbm.end() ? format_double(it->second) : "");
    }
    for (const double v : {frame.mf_ut.x, frame.mf_ut.y, frame.mf_ut.z, frame.gravity_mps2.x,
                           frame.gravity_mps2.y, frame.gravity_mps2.z}) {
      row.push_back(format_double(v));
    }
    rows.push_back(std::move(row));
  }
  write_csv(path, header, rows);
}

std::vector<ObservationFrame> load_observations_csv(const std::string& path) {
  const CsvTable table = read_csv(path);
  if (table.header.size() < 7 || table.header.front() != "t" ||
      table.header[table.header.size() - 6] != "mfx" || table.header.back() != "gz") {
    throw std::runtime_error(path + ": expected header t,<ap ids...>,mfx,mfy,mfz,gx,gy,gz");
  }
  const std::vector<std::string> ap_list(table.header.begin() + 1, table.header.end() - 6);

  std::vector<ObservationFrame> frames;
  for (size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string context = path + ":" + std::to_string(r + 2);
    if (row.size() != table.header.size()) {
      throw std::runtime_error(context + ": expected " + std::to_string(table.header.size()) +
                               " fields");
    }
    ObservationFrame frame;
    frame.timestamp_s = parse_double(row[0], context);
    for (size_t a = 0; a < ap_list.size(); ++a) {
      if (row[1 + a].empty()) continue;
      const double p = parse_double(row[1 + a], context);
      if (p < kMinRssiDbm || p > kMaxRssiDbm) {
        throw std::runtime_error(context + ": RSSI " + row[1 + a] + " outside [-120, 0] dBm");
      }
      frame.rssi_dbm[ap_list[a]] = p;
    }
    const size_t m = 1 + ap_list.size();
    frame.mf_ut = {parse_double(row[m], context), parse_double(row[m + 1], context),
                   parse_double(row[m + 2], context)};
    frame.gravity_mps2 = {parse_double(row[m + 3], context), parse_double(row[m + 4], context),
                          parse_double(row[m + 5], context)};
    if (frame.gravity_mps2.norm() <= 0.0) {
      throw std::runtime_error(context + ": zero gravity vector");
    }
    frames.push_back(std::move(frame));
  }
  return frames;
}

namespace {

nlohmann::json mf_rooms_to_json(const std::map<std::string, MfRoomField>& fields) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [id, f] : fields) {
    j[id] = {{"base_v_ut", f.base_v_ut},
             {"base_h_ut", f.base_h_ut},
             {"amp_ut", f.amp_ut},
             {"phase_rad", f.phase_rad}};
  }
  return j;
}

}  // namespace

void save_environment(const EnvironmentModel& env, const std::string& path) {
  nlohmann::json j = floor_plan_to_json(env.plan);
  // Anchors that the localizer must not see carry their true coordinates
  // with position_known = false.
  for (auto& ja : j["anchors"]) {
    const std::string id = ja.at("id").get<std::string>();
    const auto it = env.true_anchor_positions.find(id);
    if (it == env.true_anchor_positions.end()) continue;
    if (!ja.contains("x")) {
      ja["x"] = it->second.x;
      ja["y"] = it->second.y;
      ja["position_known"] = false;
    }
  }
  nlohmann::json ranging = nlohmann::json::object();
  for (const auto& [id, p] : env.truth_ranging.per_anchor) {
    ranging[id] = {{"alpha", p.alpha}, {"beta", p.beta}, {"gamma", p.gamma}, {"p_r0", p.p_r0}};
  }
  j["truth_ranging"] = ranging;
  j["los_threshold_m"] = env.truth_ranging.los_threshold_m;
  j["shadowing_sigma_db"] = env.shadowing_sigma_db;
  j["mf_noise_sigma_ut"] = env.mf_noise_sigma_ut;
  j["mf_rooms"] = mf_rooms_to_json(env.mf_rooms);
  j["audibility_floor_dbm"] = env.audibility_floor_dbm;
  save_json_file(j, path);
}

EnvironmentModel load_environment(const std::string& path) {
  const nlohmann::json j = load_json_file(path);
  EnvironmentModel env;
  env.plan = floor_plan_from_json(j);
  env.plan.validate();
  for (const auto& ja : j.at("anchors")) {
    if (ja.contains("x") && ja.contains("y")) {
      env.true_anchor_positions[ja.at("id").get<std::string>()] =
          Vec2{ja.at("x").get<double>(), ja.at("y").get<double>()};
    }
  }
  if (j.contains("truth_ranging")) {
    for (const auto& [id, jp] : j.at("truth_ranging").items()) {
      PathLossParams p;
      p.alpha = jp.at("alpha").get<double>();
      p.beta = jp.at("beta").get<double>();
      p.gamma = jp.at("gamma").get<double>();
      p.p_r0 = jp.at("p_r0").get<double>();
      env.truth_ranging.per_anchor[id] = p;
    }
  }
  if (j.contains("los_threshold_m")) {
    env.truth_ranging.los_threshold_m = j.at("los_threshold_m").get<double>();
  }
  if (j.contains("shadowing_sigma_db")) {
    env.shadowing_sigma_db = j.at("shadowing_sigma_db").get<double>();
  }
  if (j.contains("mf_noise_sigma_ut")) {
    env.mf_noise_sigma_ut = j.at("mf_noise_sigma_ut").get<double>();
  }
  if (j.contains("mf_rooms")) {
    for (const auto& [id, jf] : j.at("mf_rooms").items()) {
      MfRoomField f;
      f.base_v_ut = jf.at("base_v_ut").get<double>();
      f.base_h_ut = jf.at("base_h_ut").get<double>();
      f.amp_ut = jf.at("amp_ut").get<double>();
      f.phase_rad = jf.at("phase_rad").get<double>();
      env.mf_rooms[id] = f;
    }
  }
  if (j.contains("audibility_floor_dbm")) {
    env.audibility_floor_dbm = j.at("audibility_floor_dbm").get<double>();
  }
  for (const auto& [id, p] : env.truth_ranging.per_anchor) {
    (void)p;
    if (!env.true_anchor_positions.count(id)) {
      throw std::runtime_error(path + ": truth_ranging anchor '" + id + "' is not in the plan");
    }
  }
  return env;
}

}  // namespace pfml
