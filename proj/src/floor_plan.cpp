#include "pfml/floor_plan.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include "pfml/json_io.hpp"

namespace pfml {

const WalkableArea* FloorPlan::area_at(const Vec2& p) const {
  for (const auto& r : rooms) {
    if (point_in_polygon(p, r.polygon)) return &r;
  }
  for (const auto& c : corridors) {
    if (point_in_polygon(p, c.polygon)) return &c;
  }
  return nullptr;
}

std::vector<const Polygon*> FloorPlan::walkable_polygons() const {
  std::vector<const Polygon*> out;
  out.reserve(rooms.size() + corridors.size());
  for (const auto& r : rooms) out.push_back(&r.polygon);
  for (const auto& c : corridors) out.push_back(&c.polygon);
  return out;
}

std::vector<std::string> FloorPlan::room_ids() const {
  std::vector<std::string> out;
  out.reserve(rooms.size());
  for (const auto& r : rooms) out.push_back(r.id);
  return out;
}

std::vector<std::string> FloorPlan::anchor_ids() const {
  std::vector<std::string> out;
  out.reserve(anchors.size());
  for (const auto& a : anchors) out.push_back(a.id);
  return out;
}

std::map<std::string, Vec2> FloorPlan::known_anchor_positions() const {
  std::map<std::string, Vec2> out;
  for (const auto& a : anchors) {
    if (a.position) out[a.id] = *a.position;
  }
  return out;
}

namespace {

bool rooms_overlap(const WalkableArea& a, const WalkableArea& b) {
  // Interiors intersect if a vertex of one is strictly inside the other.
  // Shared boundaries are fine.
  for (const Vec2& v : a.polygon.vertices) {
    if (point_in_polygon(v, b.polygon, 0.0)) {
      bool on_boundary = false;
      const auto& verts = b.polygon.vertices;
      for (size_t i = 0; i < verts.size(); ++i) {
        if (point_segment_distance(v, verts[i], verts[(i + 1) % verts.size()]) <= 1e-9) {
          on_boundary = true;
          break;
        }
      }
      if (!on_boundary) return true;
    }
  }
  return false;
}

}  // namespace

void FloorPlan::validate() const {
  if (width_m <= 0.0 || height_m <= 0.0) {
    throw std::invalid_argument("floor plan bounds must be positive");
  }
  std::set<std::string> seen;
  for (const auto& list : {rooms, corridors}) {
    for (const auto& area : list) {
      validate_simple_polygon(area.polygon, area.id);
      if (!seen.insert(area.id).second) {
        throw std::invalid_argument("duplicate area id '" + area.id + "'");
      }
    }
  }
  for (size_t i = 0; i < rooms.size(); ++i) {
    for (size_t j = i + 1; j < rooms.size(); ++j) {
      if (rooms_overlap(rooms[i], rooms[j]) || rooms_overlap(rooms[j], rooms[i])) {
        throw std::invalid_argument("room polygons '" + rooms[i].id + "' and '" + rooms[j].id +
                                    "' overlap");
      }
    }
  }
}

namespace {

nlohmann::json polygon_to_json(const Polygon& poly) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Vec2& v : poly.vertices) arr.push_back({v.x, v.y});
  return arr;
}

Polygon polygon_from_json(const nlohmann::json& arr) {
  Polygon poly;
  for (const auto& pt : arr) {
    poly.vertices.push_back({pt.at(0).get<double>(), pt.at(1).get<double>()});
  }
  return poly;
}

nlohmann::json areas_to_json(const std::vector<WalkableArea>& areas) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& a : areas) {
    arr.push_back({{"id", a.id}, {"polygon", polygon_to_json(a.polygon)}});
  }
  return arr;
}

std::vector<WalkableArea> areas_from_json(const nlohmann::json& arr) {
  std::vector<WalkableArea> out;
  for (const auto& j : arr) {
    out.push_back({j.at("id").get<std::string>(), polygon_from_json(j.at("polygon"))});
  }
  return out;
}

}  // namespace

nlohmann::json floor_plan_to_json(const FloorPlan& plan) {
  nlohmann::json j;
  j["bounds"] = {{"width_m", plan.width_m}, {"height_m", plan.height_m}};
  j["grid_spacing_m"] = plan.grid_spacing_m;
  j["rooms"] = areas_to_json(plan.rooms);
  j["corridors"] = areas_to_json(plan.corridors);
  nlohmann::json anchors = nlohmann::json::array();
  for (const auto& a : plan.anchors) {
    nlohmann::json ja{{"id", a.id}};
    if (a.position) {
      ja["x"] = a.position->x;
      ja["y"] = a.position->y;
    }
    anchors.push_back(ja);
  }
  j["anchors"] = anchors;
  return j;
}

FloorPlan floor_plan_from_json(const nlohmann::json& j) {
  FloorPlan plan;
  plan.width_m = j.at("bounds").at("width_m").get<double>();
  plan.height_m = j.at("bounds").at("height_m").get<double>();
  if (j.contains("grid_spacing_m")) plan.grid_spacing_m = j.at("grid_spacing_m").get<double>();
  plan.rooms = areas_from_json(j.at("rooms"));
  if (j.contains("corridors")) plan.corridors = areas_from_json(j.at("corridors"));
  if (j.contains("anchors")) {
    for (const auto& ja : j.at("anchors")) {
      Anchor a;
      a.id = ja.at("id").get<std::string>();
      const bool known = !ja.contains("position_known") || ja.at("position_known").get<bool>();
      if (ja.contains("x") && ja.contains("y") && known) {
        a.position = Vec2{ja.at("x").get<double>(), ja.at("y").get<double>()};
      }
      plan.anchors.push_back(a);
    }
  }
  return plan;
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  nlohmann::json j;
  in >> j;
  return j;
}

void save_json_file(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

FloorPlan floor_plan_from_json_file(const std::string& path) {
  return floor_plan_from_json(load_json_file(path));
}

void floor_plan_to_json_file(const FloorPlan& plan, const std::string& path) {
  save_json_file(floor_plan_to_json(plan), path);
}

}  // namespace pfml
