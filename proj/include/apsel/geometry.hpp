#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace apsel
{

/// Planar position in meters.
struct Point2
{
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
  friend constexpr Point2 operator*(Point2 p, double s) { return {s * p.x, s * p.y}; }
  friend constexpr bool operator==(Point2 a, Point2 b) = default;

  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

using Polygon = std::vector<Point2>;

// Tolerance used for on-edge tests (meters).
inline constexpr double kGeometryEps = 1e-9;

/// True if the closed segments [a1,a2] and [b1,b2] share at least one point.
/// Collinear overlaps count as an intersection.
bool segments_intersect(Point2 a1, Point2 a2, Point2 b1, Point2 b2);

/// Parameters t in [0,1] along [a1,a2] at which it meets [b1,b2]. A collinear
/// overlap contributes both ends of the overlapping interval.
std::vector<double> segment_intersection_params(Point2 a1, Point2 a2, Point2 b1, Point2 b2);

double point_to_segment_distance(Point2 p, Point2 a, Point2 b);

/// Minimum distance from p to the polyline. Throws std::invalid_argument if
/// the path has fewer than two points.
double point_to_polyline_distance(Point2 p, std::span<const Point2> path);

bool on_polygon_boundary(Point2 p, std::span<const Point2> polygon, double eps = kGeometryEps);

/// Even-odd rule; points on the boundary count as inside.
bool point_in_polygon(Point2 p, std::span<const Point2> polygon);

/// Even-odd rule; points on the boundary count as outside.
bool point_strictly_inside_polygon(Point2 p, std::span<const Point2> polygon);

/// At least three vertices and no two non-adjacent edges touch.
bool is_simple_polygon(std::span<const Point2> polygon);

Point2 polygon_centroid(std::span<const Point2> polygon);

}  // namespace apsel
