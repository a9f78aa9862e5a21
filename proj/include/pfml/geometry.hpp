#ifndef PFML_GEOMETRY_HPP_
#define PFML_GEOMETRY_HPP_

#include <cmath>
#include <string>
#include <vector>

namespace pfml {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  bool operator==(const Vec2& o) const = default;
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
};

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

struct Polygon {
  std::vector<Vec2> vertices;
};

struct BoundingBox {
  double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;
};

BoundingBox polygon_bbox(const Polygon& poly);

// Distance from point p to segment [a, b].
double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b);

// Even-odd rule. Points within boundary_eps of an edge count as inside.
bool point_in_polygon(const Vec2& p, const Polygon& poly, double boundary_eps = 1e-9);

// Non-degenerate (>= 3 distinct vertices, no zero-length edges) and
// non-self-intersecting. Throws std::invalid_argument naming `name` otherwise.
void validate_simple_polygon(const Polygon& poly, const std::string& name);

// True when the whole segment [a, b] lies inside the union of the polygons.
// Exact up to boundary_eps: crossing between polygons that share a boundary
// is allowed, gaps between polygons are not.
bool segment_in_union(const Vec2& a, const Vec2& b, const std::vector<const Polygon*>& polys,
                      double boundary_eps = 1e-9);

}  // namespace pfml

#endif
