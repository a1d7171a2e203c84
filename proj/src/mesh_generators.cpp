#include "hvem/mesh_generators.hpp"

#include <cmath>
#include <stdexcept>

namespace hvem {

namespace {

/// Accumulates vertices with tolerance-based dedup and element loops by position.
class MeshAccumulator {
  public:
    explicit MeshAccumulator(double tol) : tol_(tol) {}

    int vertex(const Point2& p) {
        for (std::size_t i = 0; i < points_.size(); ++i)
            if (distance(points_[i], p) <= tol_) return static_cast<int>(i);
        points_.push_back(p);
        return static_cast<int>(points_.size()) - 1;
    }

    void element(const std::vector<Point2>& loop, int layer = -1) {
        std::vector<int> ids;
        ids.reserve(loop.size());
        for (const auto& p : loop) ids.push_back(vertex(p));
        loops_.push_back(std::move(ids));
        layers_.push_back(layer);
    }

    Mesh build(DomainTag tag, bool with_layers) const {
        return Mesh::from_loops(points_, loops_, tag,
                                with_layers ? layers_ : std::vector<int>{});
    }

  private:
    double tol_;
    std::vector<Point2> points_;
    std::vector<std::vector<int>> loops_;
    std::vector<int> layers_;
};

}  // namespace

Mesh generate_square_mesh(int n) {
    if (n < 1) throw std::invalid_argument("generate_square_mesh: n must be >= 1");
    std::vector<Point2> points;
    points.reserve((n + 1) * (n + 1));
    const double h = 1.0 / n;
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) points.push_back({i * h, j * h});
    auto at = [n](int i, int j) { return j * (n + 1) + i; };
    std::vector<std::vector<int>> loops;
    loops.reserve(n * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            loops.push_back({at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)});
    return Mesh::from_loops(std::move(points), std::move(loops), DomainTag::UnitSquare);
}

Mesh generate_hexagonal_mesh(int n) {
    if (n < 1) throw std::invalid_argument("generate_hexagonal_mesh: n must be >= 1");
    const double R = 0.5 / n;  // center-to-vertex radius
    const double dx = 1.5 * R;
    const double dy = std::sqrt(3.0) * R;
    MeshAccumulator acc(1e-12 * std::sqrt(2.0));

    const std::vector<Point2> square = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    const int icount = static_cast<int>(std::ceil(1.0 / dx)) + 2;
    const int jcount = static_cast<int>(std::ceil(1.0 / dy)) + 2;
    for (int i = -1; i <= icount; ++i) {
        for (int j = -1; j <= jcount; ++j) {
            const double cx = i * dx;
            const double cy = j * dy + (std::abs(i) % 2 == 1 ? 0.5 * dy : 0.0);
            std::vector<Point2> cell;
            for (int k = 0; k < 6; ++k) {
                const double a = M_PI / 3.0 * k;
                cell.push_back({cx + R * std::cos(a), cy + R * std::sin(a)});
            }
            for (std::size_t e = 0; e < square.size(); ++e)
                cell = clip_halfplane(cell, square[e], square[(e + 1) % 4]);
            // drop duplicate points introduced by clips through corners
            std::vector<Point2> cleaned;
            for (const auto& p : cell) {
                if (cleaned.empty() || distance(cleaned.back(), p) > 1e-13)
                    cleaned.push_back(p);
            }
            while (cleaned.size() > 1 && distance(cleaned.front(), cleaned.back()) <= 1e-13)
                cleaned.pop_back();
            if (cleaned.size() < 3) continue;
            if (polygon_signed_area(cleaned) < 1e-13) continue;
            acc.element(cleaned);
        }
    }
    return acc.build(DomainTag::UnitSquare, false);
}

namespace {

// Ring pieces between the L-shaped boxes of half-width s (outer) and s' = sigma*s
// (inner). split < 0 disables the hanging-node split of inner-boundary edges.
void family_a_ring(MeshAccumulator& acc, double s, double sp, double split, int layer) {
    auto rect = [&](double x0, double x1, double y0, double y1,
                    int split_side /*0 none, 1 bottom, 2 top, 3 left, 4 right*/, double at) {
        std::vector<Point2> loop;
        auto push = [&](double x, double y) { loop.push_back({x, y}); };
        push(x0, y0);
        if (split_side == 1) push(at, y0);
        push(x1, y0);
        if (split_side == 4) push(x1, at);
        push(x1, y1);
        if (split_side == 2) push(at, y1);
        push(x0, y1);
        if (split_side == 3) push(x0, at);
        acc.element(loop, layer);
    };
    const bool cut = split > 0.0;
    // corners (never split)
    rect(sp, s, sp, s, 0, 0);      // NE
    rect(-s, -sp, sp, s, 0, 0);    // NW
    rect(sp, s, -s, -sp, 0, 0);    // SE corner
    // sides with an inner-boundary edge, split at +-split when a finer ring follows
    rect(0, sp, sp, s, cut ? 1 : 0, split);     // N right of axis, bottom edge inner
    rect(-sp, 0, sp, s, cut ? 1 : 0, -split);   // N left of axis
    rect(-s, -sp, 0, sp, cut ? 4 : 0, split);   // W, right edge inner
    rect(sp, s, 0, sp, cut ? 3 : 0, split);     // E, left edge inner
    rect(sp, s, -sp, 0, cut ? 3 : 0, -split);   // SE side, left edge inner
    rect(0, sp, -s, -sp, cut ? 2 : 0, split);   // S, top edge inner
}

void family_a_core(MeshAccumulator& acc, double s) {
    acc.element({{0, 0}, {s, 0}, {s, s}, {0, s}}, 0);
    acc.element({{-s, 0}, {0, 0}, {0, s}, {-s, s}}, 0);
    acc.element({{0, -s}, {s, -s}, {s, 0}, {0, 0}}, 0);
}

void family_b_ring(MeshAccumulator& acc, double s, double sp, int layer) {
    acc.element({{0, -s}, {s, -s}, {s, s}, {sp, sp}, {sp, -sp}, {0, -sp}}, layer);
    acc.element({{-s, 0}, {-sp, 0}, {-sp, sp}, {sp, sp}, {s, s}, {-s, s}}, layer);
}

void family_b_core(MeshAccumulator& acc, double s) {
    acc.element({{0, 0}, {0, -s}, {s, -s}, {s, s}}, 0);
    acc.element({{0, 0}, {s, s}, {-s, s}, {-s, 0}}, 0);
}

void family_c_ring(MeshAccumulator& acc, double s, double sp, int layer) {
    acc.element({{0, -s},
                 {s, -s},
                 {s, s},
                 {-s, s},
                 {-s, 0},
                 {-sp, 0},
                 {-sp, sp},
                 {sp, sp},
                 {sp, -sp},
                 {0, -sp}},
                layer);
}

void family_c_core(MeshAccumulator& acc, double s) {
    acc.element({{0, 0}, {0, -s}, {s, -s}, {s, s}, {-s, s}, {-s, 0}}, 0);
}

}  // namespace

Mesh generate_graded_mesh(GradedFamily family, double sigma, int n) {
    if (!(sigma > 0.0 && sigma < 1.0))
        throw std::invalid_argument("generate_graded_mesh: sigma must lie in (0,1)");
    if (n < 0) throw std::invalid_argument("generate_graded_mesh: n must be >= 0");

    MeshAccumulator acc(1e-12 * 2.0 * std::sqrt(2.0));
    const double core = std::pow(sigma, n);
    for (int k = 0; k < n; ++k) {
        const double s = std::pow(sigma, k);
        const double sp = std::pow(sigma, k + 1);
        const int layer = n - k;
        switch (family) {
            case GradedFamily::A: {
                const double split = (k <= n - 2) ? std::pow(sigma, k + 2) : -1.0;
                family_a_ring(acc, s, sp, split, layer);
                break;
            }
            case GradedFamily::B: family_b_ring(acc, s, sp, layer); break;
            case GradedFamily::C: family_c_ring(acc, s, sp, layer); break;
        }
    }
    switch (family) {
        case GradedFamily::A: family_a_core(acc, core); break;
        case GradedFamily::B: family_b_core(acc, core); break;
        case GradedFamily::C: family_c_core(acc, core); break;
    }
    Mesh mesh = acc.build(DomainTag::LShape, true);
    mesh.grading_sigma = sigma;
    return mesh;
}

}  // namespace hvem
