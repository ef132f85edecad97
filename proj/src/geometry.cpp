#include "apsel/geometry.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace apsel
{
namespace
{

int orientation(Point2 a, Point2 b, Point2 c)
{
  const double v = cross(b - a, c - a);
  const double scale = std::max({norm(b - a) * norm(c - a), 1e-300});
  if (std::abs(v) <= 1e-14 * scale) {
    return 0;
  }
  return v > 0.0 ? 1 : -1;
}

// c is known to be collinear with [a,b]; check it lies within the bounding box.
bool within_box(Point2 a, Point2 b, Point2 c)
{
  return std::min(a.x, b.x) - kGeometryEps <= c.x && c.x <= std::max(a.x, b.x) + kGeometryEps &&
         std::min(a.y, b.y) - kGeometryEps <= c.y && c.y <= std::max(a.y, b.y) + kGeometryEps;
}

}  // namespace

bool segments_intersect(Point2 a1, Point2 a2, Point2 b1, Point2 b2)
{
  const int o1 = orientation(a1, a2, b1);
  const int o2 = orientation(a1, a2, b2);
  const int o3 = orientation(b1, b2, a1);
  const int o4 = orientation(b1, b2, a2);

  if (o1 * o2 < 0 && o3 * o4 < 0) {
    return true;
  }
  if (o1 == 0 && within_box(a1, a2, b1)) return true;
  if (o2 == 0 && within_box(a1, a2, b2)) return true;
  if (o3 == 0 && within_box(b1, b2, a1)) return true;
  if (o4 == 0 && within_box(b1, b2, a2)) return true;
  return false;
}

std::vector<double> segment_intersection_params(Point2 a1, Point2 a2, Point2 b1, Point2 b2)
{
  std::vector<double> out;
  if (!segments_intersect(a1, a2, b1, b2)) {
    return out;
  }
  const Point2 d = a2 - a1;
  const Point2 e = b2 - b1;
  const double dd = dot(d, d);
  if (dd == 0.0) {
    out.push_back(0.0);
    return out;
  }
  const double denom = cross(d, e);
  if (std::abs(denom) > 1e-12 * std::sqrt(dd) * norm(e)) {
    const double t = cross(b1 - a1, e) / denom;
    out.push_back(std::clamp(t, 0.0, 1.0));
    return out;
  }
  // Collinear overlap.
  double t0 = dot(b1 - a1, d) / dd;
  double t1 = dot(b2 - a1, d) / dd;
  if (t0 > t1) std::swap(t0, t1);
  out.push_back(std::clamp(t0, 0.0, 1.0));
  out.push_back(std::clamp(t1, 0.0, 1.0));
  return out;
}

double point_to_segment_distance(Point2 p, Point2 a, Point2 b)
{
  const Point2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) {
    return distance(p, a);
  }
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + t * ab);
}

double point_to_polyline_distance(Point2 p, std::span<const Point2> path)
{
  if (path.size() < 2) {
    throw std::invalid_argument("polyline needs at least 2 points");
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    best = std::min(best, point_to_segment_distance(p, path[i], path[i + 1]));
  }
  return best;
}

bool on_polygon_boundary(Point2 p, std::span<const Point2> polygon, double eps)
{
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (point_to_segment_distance(p, polygon[i], polygon[(i + 1) % n]) <= eps) {
      return true;
    }
  }
  return false;
}

bool point_strictly_inside_polygon(Point2 p, std::span<const Point2> polygon)
{
  if (polygon.size() < 3 || on_polygon_boundary(p, polygon)) {
    return false;
  }
  bool inside = false;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2 a = polygon[i];
    const Point2 b = polygon[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_cross) {
        inside = !inside;
      }
    }
  }
  return inside;
}

bool point_in_polygon(Point2 p, std::span<const Point2> polygon)
{
  if (polygon.size() < 3) {
    return false;
  }
  return on_polygon_boundary(p, polygon) || point_strictly_inside_polygon(p, polygon);
}

bool is_simple_polygon(std::span<const Point2> polygon)
{
  const std::size_t n = polygon.size();
  if (n < 3) {
    return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!polygon[i].finite() || polygon[i] == polygon[(i + 1) % n]) {
      return false;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) {
        continue;
      }
      if (segments_intersect(polygon[i], polygon[(i + 1) % n], polygon[j], polygon[(j + 1) % n])) {
        return false;
      }
    }
  }
  // Adjacent edges must not fold back onto each other.
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 prev = polygon[(i + n - 1) % n];
    const Point2 cur = polygon[i];
    const Point2 next = polygon[(i + 1) % n];
    if (orientation(prev, cur, next) == 0 && dot(prev - cur, next - cur) > 0.0) {
      return false;
    }
  }
  return true;
}

Point2 polygon_centroid(std::span<const Point2> polygon)
{
  double area2 = 0.0;
  Point2 acc{};
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = polygon[i];
    const Point2 b = polygon[(i + 1) % n];
    const double c = cross(a, b);
    area2 += c;
    acc = acc + c * (a + b);
  }
  if (std::abs(area2) < 1e-15) {
    Point2 mean{};
    for (const auto& p : polygon) mean = mean + p;
    return (1.0 / static_cast<double>(std::max<std::size_t>(n, 1))) * mean;
  }
  return (1.0 / (3.0 * area2)) * acc;
}

}  // namespace apsel
