#pragma once

#include <array>
#include <cmath>
#include <vector>

namespace hvem {

/// Point / vector in the plane.
struct Point2 {
    double x = 0.0;
    double y = 0.0;

    Point2() = default;
    Point2(double x_, double y_) : x(x_), y(y_) {}

    Point2 operator+(const Point2& o) const { return {x + o.x, y + o.y}; }
    Point2 operator-(const Point2& o) const { return {x - o.x, y - o.y}; }
    Point2 operator*(double s) const { return {x * s, y * s}; }
    Point2 operator/(double s) const { return {x / s, y / s}; }

    double dot(const Point2& o) const { return x * o.x + y * o.y; }
    double cross(const Point2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    double squared_norm() const { return x * x + y * y; }
};

inline Point2 operator*(double s, const Point2& p) { return p * s; }

inline double distance(const Point2& a, const Point2& b) { return (a - b).norm(); }

/// Distance from point p to the closed segment [a, b].
double point_segment_distance(const Point2& p, const Point2& a, const Point2& b);

/// Twice the signed area of the triangle (a, b, c); positive if counterclockwise.
inline double orient2d(const Point2& a, const Point2& b, const Point2& c) {
    return (b - a).cross(c - a);
}

/// Signed area of a polygon given by its vertex loop (positive if counterclockwise).
double polygon_signed_area(const std::vector<Point2>& loop);

/// Area centroid of a simple polygon.
Point2 polygon_centroid(const std::vector<Point2>& loop);

/// Maximum pairwise vertex distance.
double polygon_diameter(const std::vector<Point2>& loop);

/// True if the loop is convex up to `tol` (collinear vertices allowed).
bool polygon_is_convex(const std::vector<Point2>& loop, double tol = 1e-12);

/// True if two open segments (a1,b1), (a2,b2) properly intersect or overlap,
/// ignoring contact at shared endpoints.
bool segments_cross(const Point2& a1, const Point2& b1, const Point2& a2, const Point2& b2,
                    double tol = 1e-14);

/// True if the polygon has no two non-adjacent crossing edges.
bool polygon_is_simple(const std::vector<Point2>& loop);

/// True if p lies inside the polygon or on its boundary (within tol).
bool polygon_contains(const std::vector<Point2>& loop, const Point2& p, double tol = 1e-12);

/// Clip a polygon against the half-plane { x : (b-a) x (x-a) >= 0 }, i.e. the
/// region to the left of the directed line a -> b (Sutherland-Hodgman step).
std::vector<Point2> clip_halfplane(const std::vector<Point2>& poly, const Point2& a,
                                   const Point2& b);

/// Kernel of a simple CCW polygon: intersection of the inward half-planes of
/// all edges. Empty result means the polygon is not star-shaped.
std::vector<Point2> polygon_kernel(const std::vector<Point2>& loop);

/// Radius and center of the largest ball centered in `kernel` that stays on the
/// inner side of every edge line of `loop` (Chebyshev-type estimate; a lower
/// bound for the largest inscribed ball with star center). Returns radius 0 for
/// an empty kernel.
struct InscribedBall {
    Point2 center;
    double radius = 0.0;
};
InscribedBall star_center_ball(const std::vector<Point2>& loop,
                               const std::vector<Point2>& kernel);

}  // namespace hvem
