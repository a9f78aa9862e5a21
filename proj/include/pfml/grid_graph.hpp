#ifndef PFML_GRID_GRAPH_HPP_
#define PFML_GRID_GRAPH_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pfml/floor_plan.hpp"

namespace pfml {

struct GridNode {
  double x = 0.0;
  double y = 0.0;
  uint32_t area = 0;  // index into area id table
};

// Lattice discretization of the walkable area. Nodes sit on a regular grid
// of pitch `spacing`, edges are 4-neighbor links whose segment stays inside
// the walkable union. Immutable once built.
class FloorPlanGraph {
 public:
  static FloorPlanGraph build(const FloorPlan& plan, double spacing);

  size_t node_count() const { return nodes_.size(); }
  const GridNode& node(size_t index) const;
  std::span<const uint32_t> neighbors(size_t index) const;
  const std::string& node_room(size_t index) const;
  Vec2 node_position(size_t index) const;
  double spacing() const { return spacing_; }

 private:
  std::vector<GridNode> nodes_;
  std::vector<uint32_t> adjacency_;        // flat, ascending per node
  std::vector<uint32_t> adjacency_start_;  // node_count()+1 offsets
  std::vector<std::string> area_ids_;
  double spacing_ = 0.0;

  void check_index(size_t index) const;
};

}  // namespace pfml

#endif
