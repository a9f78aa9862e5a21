#ifndef PFML_FLOOR_PLAN_HPP_
#define PFML_FLOOR_PLAN_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pfml/geometry.hpp"

namespace pfml {

struct Anchor {
  std::string id;
  std::optional<Vec2> position;  // nullopt: deployed at an unsurveyed spot
};

struct WalkableArea {
  std::string id;
  Polygon polygon;
};

// Rooms are the labeled areas used as landmark classes; corridors are
// walkable but unlabeled connectors (door openings, passages).
struct FloorPlan {
  double width_m = 0.0;
  double height_m = 0.0;
  std::vector<WalkableArea> rooms;
  std::vector<WalkableArea> corridors;
  std::vector<Anchor> anchors;
  double grid_spacing_m = 0.25;

  // First containing area in file order, rooms before corridors.
  const WalkableArea* area_at(const Vec2& p) const;
  bool is_walkable(const Vec2& p) const { return area_at(p) != nullptr; }

  std::vector<const Polygon*> walkable_polygons() const;
  std::vector<std::string> room_ids() const;
  std::vector<std::string> anchor_ids() const;
  std::map<std::string, Vec2> known_anchor_positions() const;

  // Polygon validity and pairwise-disjoint room interiors.
  void validate() const;
};

FloorPlan floor_plan_from_json_file(const std::string& path);
void floor_plan_to_json_file(const FloorPlan& plan, const std::string& path);

}  // namespace pfml

#endif
