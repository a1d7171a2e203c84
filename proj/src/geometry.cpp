#include "hvem/geometry.hpp"

#include <algorithm>
#include <limits>

namespace hvem {

double point_segment_distance(const Point2& p, const Point2& a, const Point2& b) {
    const Point2 d = b - a;
    const double len2 = d.squared_norm();
    if (len2 == 0.0) return distance(p, a);
    double t = (p - a).dot(d) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return distance(p, a + d * t);
}

double polygon_signed_area(const std::vector<Point2>& loop) {
    double twice = 0.0;
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = loop[i];
        const Point2& b = loop[(i + 1) % n];
        twice += a.cross(b);
    }
    return 0.5 * twice;
}

Point2 polygon_centroid(const std::vector<Point2>& loop) {
    double twice = 0.0;
    Point2 c{0.0, 0.0};
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = loop[i];
        const Point2& b = loop[(i + 1) % n];
        const double w = a.cross(b);
        twice += w;
        c = c + (a + b) * w;
    }
    return c / (3.0 * twice);
}

double polygon_diameter(const std::vector<Point2>& loop) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < loop.size(); ++i)
        for (std::size_t j = i + 1; j < loop.size(); ++j)
            d2 = std::max(d2, (loop[i] - loop[j]).squared_norm());
    return std::sqrt(d2);
}

bool polygon_is_convex(const std::vector<Point2>& loop, double tol) {
    const std::size_t n = loop.size();
    const double scale = polygon_diameter(loop);
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = loop[i];
        const Point2& b = loop[(i + 1) % n];
        const Point2& c = loop[(i + 2) % n];
        if (orient2d(a, b, c) < -tol * scale * scale) return false;
    }
    return true;
}

bool segments_cross(const Point2& a1, const Point2& b1, const Point2& a2, const Point2& b2,
                    double tol) {
    const double scale2 = std::max((b1 - a1).squared_norm(), (b2 - a2).squared_norm());
    const double eps = tol * scale2;
    const double d1 = orient2d(a2, b2, a1);
    const double d2 = orient2d(a2, b2, b1);
    const double d3 = orient2d(a1, b1, a2);
    const double d4 = orient2d(a1, b1, b2);
    if (((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps)) &&
        ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps)))
        return true;
    return false;
}

bool polygon_is_simple(const std::vector<Point2>& loop) {
    const std::size_t n = loop.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            // skip adjacent edges (shared endpoint)
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;
            if (segments_cross(loop[i], loop[(i + 1) % n], loop[j], loop[(j + 1) % n]))
                return false;
        }
    }
    return true;
}

bool polygon_contains(const std::vector<Point2>& loop, const Point2& p, double tol) {
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i)
        if (point_segment_distance(p, loop[i], loop[(i + 1) % n]) <= tol) return true;
    // crossing-number test
    bool inside = false;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = loop[i];
        const Point2& b = loop[(i + 1) % n];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double xint = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (p.x < xint) inside = !inside;
        }
    }
    return inside;
}

std::vector<Point2> clip_halfplane(const std::vector<Point2>& poly, const Point2& a,
                                   const Point2& b) {
    std::vector<Point2> out;
    const std::size_t n = poly.size();
    if (n == 0) return out;
    const Point2 d = b - a;
    auto side = [&](const Point2& p) { return d.cross(p - a); };
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& cur = poly[i];
        const Point2& nxt = poly[(i + 1) % n];
        const double sc = side(cur);
        const double sn = side(nxt);
        if (sc >= 0.0) out.push_back(cur);
        if ((sc > 0.0 && sn < 0.0) || (sc < 0.0 && sn > 0.0)) {
            const double t = sc / (sc - sn);
            out.push_back(cur + (nxt - cur) * t);
        }
    }
    return out;
}

std::vector<Point2> polygon_kernel(const std::vector<Point2>& loop) {
    std::vector<Point2> kernel = loop;
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n && !kernel.empty(); ++i)
        kernel = clip_halfplane(kernel, loop[i], loop[(i + 1) % n]);
    if (kernel.size() >= 3 && std::abs(polygon_signed_area(kernel)) > 0.0) return kernel;
    return {};
}

InscribedBall star_center_ball(const std::vector<Point2>& loop,
                               const std::vector<Point2>& kernel) {
    InscribedBall ball;
    if (kernel.empty()) return ball;
    const std::size_t n = loop.size();

    // signed inward distance of c to every edge line; the radius at c is the minimum
    auto radius_at = [&](const Point2& c) {
        double r = std::numeric_limits<double>::max();
        for (std::size_t i = 0; i < n; ++i) {
            const Point2& a = loop[i];
            const Point2 d = loop[(i + 1) % n] - a;
            const double len = d.norm();
            if (len == 0.0) continue;
            r = std::min(r, d.cross(c - a) / len);
        }
        return r;
    };

    // coordinate-descent refinement seeded at kernel vertices and their mean;
    // the objective is concave piecewise-linear, desk-scale polygons only.
    std::vector<Point2> seeds = kernel;
    Point2 mean{0, 0};
    for (const auto& p : kernel) mean = mean + p;
    seeds.push_back(mean / static_cast<double>(kernel.size()));

    for (const auto& seed : seeds) {
        Point2 c = seed;
        double r = radius_at(c);
        double step = polygon_diameter(loop) * 0.25;
        while (step > 1e-14) {
            bool improved = false;
            const Point2 moves[4] = {{step, 0}, {-step, 0}, {0, step}, {0, -step}};
            for (const auto& m : moves) {
                const Point2 cand = c + m;
                if (!polygon_contains(kernel, cand, 0.0)) continue;
                const double rc = radius_at(cand);
                if (rc > r) {
                    c = cand;
                    r = rc;
                    improved = true;
                }
            }
            if (!improved) step *= 0.5;
        }
        if (r > ball.radius) {
            ball.radius = r;
            ball.center = c;
        }
    }
    ball.radius = std::max(ball.radius, 0.0);
    return ball;
}

}  // namespace hvem
