#include "pfml/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace pfml {

BoundingBox polygon_bbox(const Polygon& poly) {
  BoundingBox box;
  if (poly.vertices.empty()) return box;
  box.min_x = box.max_x = poly.vertices[0].x;
  box.min_y = box.max_y = poly.vertices[0].y;
  for (const Vec2& v : poly.vertices) {
    box.min_x = std::min(box.min_x, v.x);
    box.max_x = std::max(box.max_x, v.x);
    box.min_y = std::min(box.min_y, v.y);
    box.max_y = std::max(box.max_y, v.y);
  }
  return box;
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.dot(ab);
  if (len2 <= 0.0) return distance(p, a);
  double t = (p - a).dot(ab) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, a + ab * t);
}

bool point_in_polygon(const Vec2& p, const Polygon& poly, double boundary_eps) {
  const size_t n = poly.vertices.size();
  if (n < 3) return false;
  for (size_t i = 0; i < n; ++i) {
    const Vec2& a = poly.vertices[i];
    const Vec2& b = poly.vertices[(i + 1) % n];
    if (point_segment_distance(p, a, b) <= boundary_eps) return true;
  }
  bool inside = false;
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& vi = poly.vertices[i];
    const Vec2& vj = poly.vertices[j];
    if ((vi.y > p.y) != (vj.y > p.y)) {
      const double x_cross = vj.x + (p.y - vj.y) / (vi.y - vj.y) * (vi.x - vj.x);
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

namespace {

int orientation(const Vec2& a, const Vec2& b, const Vec2& c) {
  const double v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  if (v > 1e-12) return 1;
  if (v < -1e-12) return -1;
  return 0;
}

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
  return p.x <= std::max(a.x, b.x) + 1e-12 && p.x >= std::min(a.x, b.x) - 1e-12 &&
         p.y <= std::max(a.y, b.y) + 1e-12 && p.y >= std::min(a.y, b.y) - 1e-12;
}

bool segments_intersect(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

}  // namespace

void validate_simple_polygon(const Polygon& poly, const std::string& name) {
  const size_t n = poly.vertices.size();
  if (n < 3) {
    throw std::invalid_argument("polygon '" + name + "' has fewer than 3 vertices");
  }
  for (size_t i = 0; i < n; ++i) {
    const Vec2& a = poly.vertices[i];
    const Vec2& b = poly.vertices[(i + 1) % n];
    if (distance(a, b) < 1e-12) {
      throw std::invalid_argument("polygon '" + name + "' has a zero-length edge");
    }
  }
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_intersect(poly.vertices[i], poly.vertices[(i + 1) % n], poly.vertices[j],
                             poly.vertices[(j + 1) % n])) {
        throw std::invalid_argument("polygon '" + name + "' is self-intersecting");
      }
    }
  }
}

namespace {

// Parameters t along [a,b] where the segment meets polygon edges. Collinear
// overlaps contribute the projections of the polygon edge endpoints.
void collect_crossings(const Vec2& a, const Vec2& b, const Polygon& poly, std::vector<double>& ts) {
  const Vec2 d = b - a;
  const double len2 = d.dot(d);
  if (len2 <= 0.0) return;
  const size_t n = poly.vertices.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& q1 = poly.vertices[i];
    const Vec2& q2 = poly.vertices[(i + 1) % n];
    const Vec2 e = q2 - q1;
    const double denom = d.x * e.y - d.y * e.x;
    if (std::abs(denom) > 1e-15) {
      const Vec2 w = q1 - a;
      const double t = (w.x * e.y - w.y * e.x) / denom;
      const double u = (w.x * d.y - w.y * d.x) / denom;
      if (t >= -1e-12 && t <= 1.0 + 1e-12 && u >= -1e-12 && u <= 1.0 + 1e-12) {
        ts.push_back(std::clamp(t, 0.0, 1.0));
      }
    } else {
      // Parallel: if collinear, project endpoints onto the segment.
      if (point_segment_distance(q1, a, b) < 1e-12 || point_segment_distance(a, q1, q2) < 1e-12) {
        for (const Vec2& q : {q1, q2}) {
          const double t = (q - a).dot(d) / len2;
          if (t >= -1e-12 && t <= 1.0 + 1e-12) ts.push_back(std::clamp(t, 0.0, 1.0));
        }
      }
    }
  }
}

}  // namespace

bool segment_in_union(const Vec2& a, const Vec2& b, const std::vector<const Polygon*>& polys,
                      double boundary_eps) {
  std::vector<double> ts{0.0, 1.0};
  for (const Polygon* poly : polys) collect_crossings(a, b, *poly, ts);
  std::sort(ts.begin(), ts.end());
  const Vec2 d = b - a;
  for (size_t i = 0; i + 1 < ts.size(); ++i) {
    if (ts[i + 1] - ts[i] < 1e-12) continue;
    const double tm = 0.5 * (ts[i] + ts[i + 1]);
    const Vec2 mid = a + d * tm;
    bool covered = false;
    for (const Polygon* poly : polys) {
      if (point_in_polygon(mid, *poly, boundary_eps)) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

}  // namespace pfml
