#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "hvem/harmonic_basis.hpp"
#include "hvem/mesh_generators.hpp"
#include "hvem/quadrature.hpp"

using namespace hvem;

TEST_CASE("eval at distinguished points") {
    {
        const HarmonicBasis basis(3, {0.4, -0.2}, 2.0);
        const Eigen::VectorXd at_center = basis.eval(basis.center());
        CHECK(at_center[0] == 1.0);
        for (int k = 1; k < basis.dimension(); ++k) CHECK(at_center[k] == 0.0);
    }
    {
        const HarmonicBasis basis(1, {0.0, 0.0}, 0.7);
        const Eigen::VectorXd v = basis.eval({0.7, 0.0});  // z = 1
        CHECK(v[0] == doctest::Approx(1.0));
        CHECK(v[1] == doctest::Approx(1.0));
        CHECK(v[2] == doctest::Approx(0.0));
    }
    {
        // z = i: z^2 = -1
        const HarmonicBasis basis(2, {0.0, 0.0}, 0.5);
        const Eigen::VectorXd v = basis.eval({0.0, 0.5});
        CHECK(v[0] == doctest::Approx(1.0));
        CHECK(v[1] == doctest::Approx(0.0));
        CHECK(v[2] == doctest::Approx(1.0));
        CHECK(v[3] == doctest::Approx(-1.0));
        CHECK(v[4] == doctest::Approx(0.0).epsilon(1e-15));
    }
}

TEST_CASE("gradient: exact values and finite differences") {
    const HarmonicBasis basis(4, {0.3, 0.1}, 1.7);
    {
        const Eigen::Matrix2Xd g = basis.eval_gradient({0.9, -0.4});
        CHECK(g(0, 0) == 0.0);
        CHECK(g(1, 0) == 0.0);
        CHECK(g(0, 1) == doctest::Approx(1.0 / 1.7).epsilon(1e-15));
        CHECK(g(1, 1) == doctest::Approx(0.0));
    }
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        const Point2 pt{basis.center().x + u(rng) * basis.scale(),
                        basis.center().y + u(rng) * basis.scale()};
        const double h = 1e-6 * basis.scale();
        const Eigen::Matrix2Xd g = basis.eval_gradient(pt);
        const Eigen::VectorXd fx =
            (basis.eval({pt.x + h, pt.y}) - basis.eval({pt.x - h, pt.y})) / (2.0 * h);
        const Eigen::VectorXd fy =
            (basis.eval({pt.x, pt.y + h}) - basis.eval({pt.x, pt.y - h})) / (2.0 * h);
        for (int k = 0; k < basis.dimension(); ++k) {
            const double scale = std::max(1.0, std::abs(g(0, k)) + std::abs(g(1, k)));
            CHECK(std::abs(g(0, k) - fx[k]) < 1e-7 * scale);
            CHECK(std::abs(g(1, k) - fy[k]) < 1e-7 * scale);
        }
    }
}

TEST_CASE("harmonicity via five-point discrete Laplacian") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    // fourth derivatives vanish for degree <= 3, so the stencil is roundoff-only
    for (int p : {1, 2, 3}) {
        const HarmonicBasis basis(p, {0.1, 0.2}, 1.3);
        const double h = 1e-3 * basis.scale();
        for (int trial = 0; trial < 100; ++trial) {
            const Point2 pt{basis.center().x + u(rng) * basis.scale(),
                            basis.center().y + u(rng) * basis.scale()};
            const Eigen::VectorXd lap =
                (basis.eval({pt.x + h, pt.y}) + basis.eval({pt.x - h, pt.y}) +
                 basis.eval({pt.x, pt.y + h}) + basis.eval({pt.x, pt.y - h}) -
                 4.0 * basis.eval(pt)) /
                (h * h);
            for (int k = 0; k < basis.dimension(); ++k)
                CHECK(std::abs(lap[k]) <=
                      1e-8 / (basis.scale() * basis.scale()) * std::max(1.0, 1.0));
        }
    }
    // higher degrees: the truncation term k^4 (h/scale)^2 dominates; check
    // against that bound
    for (int p : {6, 10}) {
        const HarmonicBasis basis(p, {0.0, 0.0}, 1.0);
        const double h = 1e-4;
        for (int trial = 0; trial < 100; ++trial) {
            const Point2 pt{u(rng), u(rng)};
            const Eigen::VectorXd lap =
                (basis.eval({pt.x + h, pt.y}) + basis.eval({pt.x - h, pt.y}) +
                 basis.eval({pt.x, pt.y + h}) + basis.eval({pt.x, pt.y - h}) -
                 4.0 * basis.eval(pt)) /
                (h * h);
            const double bound = 64.0 * std::pow(p, 4) * h * h + 1e-6;
            for (int k = 0; k < basis.dimension(); ++k) CHECK(std::abs(lap[k]) <= bound);
        }
    }
}

TEST_CASE("normal derivative traces") {
    // unit square centered at the origin, scaled by its diagonal
    const double scale = std::sqrt(2.0);
    const HarmonicBasis basis(3, {0.0, 0.0}, scale);
    {
        // right edge, outward normal (1,0): d_n Re z = 1/scale for all t
        for (double y : {-0.49, 0.0, 0.31}) {
            const Eigen::VectorXd dn = basis.normal_derivative({0.5, y}, {1.0, 0.0});
            CHECK(dn[0] == 0.0);  // constant
            CHECK(dn[1] == doctest::Approx(1.0 / scale).epsilon(1e-14));
        }
    }
}

TEST_CASE("zero flux: boundary integral of d_n q vanishes per basis function") {
    const Mesh mesh = generate_graded_mesh(GradedFamily::B, 0.4, 2);
    const auto rule = gauss_legendre(12);
    for (const auto& element : mesh.elements) {
        const HarmonicBasis basis(4, element.centroid, element.diameter);
        Eigen::VectorXd flux = Eigen::VectorXd::Zero(basis.dimension());
        const auto pts = mesh.element_points(element);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const Point2 a = pts[i];
            const Point2 b = pts[(i + 1) % pts.size()];
            const double len = distance(a, b);
            const Point2 tangent = (b - a) / len;
            const Point2 normal{tangent.y, -tangent.x};
            for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
                const Point2 x = (a + b) * 0.5 + (b - a) * (0.5 * rule.nodes[q]);
                flux += (0.5 * len * rule.weights[q]) * basis.normal_derivative(x, normal);
            }
        }
        for (int k = 0; k < basis.dimension(); ++k) CHECK(std::abs(flux[k]) < 1e-12);
    }
}

TEST_CASE("scaling keeps the boundary Gram conditioning") {
    // square elements of wildly different sizes: the scaled basis keeps the
    // boundary mass Gram condition number essentially unchanged
    auto gram_condition = [](double h, const Point2& corner) {
        const std::vector<Point2> loop = {corner,
                                          {corner.x + h, corner.y},
                                          {corner.x + h, corner.y + h},
                                          {corner.x, corner.y + h}};
        const Point2 c = polygon_centroid(loop);
        const HarmonicBasis basis(5, c, polygon_diameter(loop));
        Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(basis.dimension(), basis.dimension());
        const auto rule = gauss_legendre(16);
        for (std::size_t i = 0; i < loop.size(); ++i) {
            const Point2 a = loop[i];
            const Point2 b = loop[(i + 1) % loop.size()];
            const double len = distance(a, b);
            for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
                const Point2 x = (a + b) * 0.5 + (b - a) * (0.5 * rule.nodes[q]);
                const Eigen::VectorXd v = basis.eval(x);
                gram += (0.5 * len * rule.weights[q] / len) * v * v.transpose();
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
        return es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff();
    };
    const double big = gram_condition(1.0, {0.0, 0.0});
    const double tiny = gram_condition(std::pow(0.5, 20), {1e-6, 1e-6});
    CHECK(tiny / big < 10.0);
    CHECK(big / tiny < 10.0);
}
