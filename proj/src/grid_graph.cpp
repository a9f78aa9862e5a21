#include "pfml/grid_graph.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace pfml {

FloorPlanGraph FloorPlanGraph::build(const FloorPlan& plan, double spacing) {
  if (spacing <= 0.0) throw std::invalid_argument("grid spacing must be positive");
  plan.validate();

  FloorPlanGraph g;
  g.spacing_ = spacing;

  std::map<std::string, uint32_t> area_index;
  auto intern = [&](const std::string& id) {
    auto it = area_index.find(id);
    if (it != area_index.end()) return it->second;
    const uint32_t idx = static_cast<uint32_t>(g.area_ids_.size());
    g.area_ids_.push_back(id);
    area_index.emplace(id, idx);
    return idx;
  };

  const double eps = 1e-9;
  const int nx = static_cast<int>(std::floor(plan.width_m / spacing + eps)) + 1;
  const int ny = static_cast<int>(std::floor(plan.height_m / spacing + eps)) + 1;

  // Row-major lattice scan; first containing area wins the label.
  std::vector<int32_t> lattice(static_cast<size_t>(nx) * ny, -1);
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const Vec2 p{ix * spacing, iy * spacing};
      const WalkableArea* area = plan.area_at(p);
      if (!area) continue;
      lattice[static_cast<size_t>(iy) * nx + ix] = static_cast<int32_t>(g.nodes_.size());
      g.nodes_.push_back({p.x, p.y, intern(area->id)});
    }
  }
  if (g.nodes_.empty()) throw std::runtime_error("no nodes generated");

  const auto polys = plan.walkable_polygons();
  std::vector<std::vector<uint32_t>> adj(g.nodes_.size());
  auto try_edge = [&](int32_t u, int32_t v) {
    if (u < 0 || v < 0) return;
    const Vec2 a{g.nodes_[u].x, g.nodes_[u].y};
    const Vec2 b{g.nodes_[v].x, g.nodes_[v].y};
    if (!segment_in_union(a, b, polys)) return;
    adj[u].push_back(static_cast<uint32_t>(v));
    adj[v].push_back(static_cast<uint32_t>(u));
  };
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const int32_t here = lattice[static_cast<size_t>(iy) * nx + ix];
      if (here < 0) continue;
      if (ix + 1 < nx) try_edge(here, lattice[static_cast<size_t>(iy) * nx + ix + 1]);
      if (iy + 1 < ny) try_edge(here, lattice[static_cast<size_t>(iy + 1) * nx + ix]);
    }
  }

  g.adjacency_start_.reserve(g.nodes_.size() + 1);
  g.adjacency_start_.push_back(0);
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    g.adjacency_.insert(g.adjacency_.end(), list.begin(), list.end());
    g.adjacency_start_.push_back(static_cast<uint32_t>(g.adjacency_.size()));
  }
  return g;
}

void FloorPlanGraph::check_index(size_t index) const {
  if (index >= nodes_.size()) {
    throw std::out_of_range("node index " + std::to_string(index) + " out of range");
  }
}

const GridNode& FloorPlanGraph::node(size_t index) const {
  check_index(index);
  return nodes_[index];
}

std::span<const uint32_t> FloorPlanGraph::neighbors(size_t index) const {
  check_index(index);
  return {adjacency_.data() + adjacency_start_[index],
          adjacency_.data() + adjacency_start_[index + 1]};
}

const std::string& FloorPlanGraph::node_room(size_t index) const {
  check_index(index);
  return area_ids_[nodes_[index].area];
}

Vec2 FloorPlanGraph::node_position(size_t index) const {
  check_index(index);
  return {nodes_[index].x, nodes_[index].y};
}

}  // namespace pfml
