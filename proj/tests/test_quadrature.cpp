#include <doctest.h>

#include <cmath>
#include <random>

#include "hvem/quadrature.hpp"
#include "oracles.hpp"

using namespace hvem;

namespace {

double integrate(const QuadratureRule1D& rule, const std::function<double(double)>& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(rule.nodes[i]);
    return s;
}

// closed form of int_{-1}^1 x^k dx
double monomial_integral(int k) { return (k % 2 == 1) ? 0.0 : 2.0 / (k + 1); }

}  // namespace

TEST_CASE("gauss_lobatto low orders match hand values") {
    const auto r1 = gauss_lobatto(1);
    REQUIRE(r1.nodes.size() == 2);
    CHECK(r1.nodes[0] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(r1.nodes[1] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r1.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r1.weights[1] == doctest::Approx(1.0).epsilon(1e-15));

    // p=2: solve the moment equations for nodes {-1,0,1}: weights {1/3, 4/3, 1/3}
    const auto r2 = gauss_lobatto(2);
    REQUIRE(r2.nodes.size() == 3);
    CHECK(r2.nodes[1] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(r2.weights[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(r2.weights[1] == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(r2.weights[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("gauss_lobatto p=5 reproduces int x^8 = 2/9") {
    const auto rule = gauss_lobatto(5);
    const double val = integrate(rule, [](double x) { return std::pow(x, 8); });
    CHECK(std::abs(val - 2.0 / 9.0) < 1e-14);
}

TEST_CASE("gauss_legendre low orders match hand values") {
    const auto r1 = gauss_legendre(1);
    CHECK(r1.nodes[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(r1.weights[0] == doctest::Approx(2.0).epsilon(1e-15));

    const auto r2 = gauss_legendre(2);
    CHECK(r2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(r2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(r2.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r2.weights[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("gauss_legendre m=8 integrates cos to 2 sin 1") {
    const auto rule = gauss_legendre(8);
    const double val = integrate(rule, [](double x) { return std::cos(x); });
    CHECK(std::abs(val - 2.0 * std::sin(1.0)) < 1e-14);
}

TEST_CASE("rules: exactness, positivity, symmetry, measure") {
    for (int p = 1; p <= 20; ++p) {
        for (const auto& rule : {gauss_lobatto(p), gauss_legendre(p)}) {
            double wsum = 0.0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                CHECK(rule.weights[i] > 0.0);
                if (i > 0) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
                // symmetry about 0
                const std::size_t mirror = rule.nodes.size() - 1 - i;
                CHECK(std::abs(rule.nodes[i] + rule.nodes[mirror]) < 1e-14);
                CHECK(std::abs(rule.weights[i] - rule.weights[mirror]) < 1e-14);
                wsum += rule.weights[i];
            }
            CHECK(std::abs(wsum - 2.0) < 1e-14);
            for (int k = 0; k <= rule.exactness_degree; ++k) {
                const double val = integrate(rule, [k](double x) { return std::pow(x, k); });
                CHECK(std::abs(val - monomial_integral(k)) < 1e-13);
            }
        }
    }
    CHECK(gauss_lobatto(1).exactness_degree == 1);
    CHECK_THROWS_AS(gauss_lobatto(0), std::invalid_argument);
}

TEST_CASE("gauss_lobatto includes both endpoints") {
    for (int p : {1, 2, 3, 7, 12}) {
        const auto rule = gauss_lobatto(p);
        CHECK(rule.nodes.front() == -1.0);
        CHECK(rule.nodes.back() == 1.0);
        CHECK(rule.nodes.size() == static_cast<std::size_t>(p + 1));
    }
}

TEST_CASE("composite graded rule integrates endpoint singularities") {
    // default base (16 points) reaches the acceptance tolerance
    const auto rule = composite_graded(gauss_legendre(16), 20, 0.15);
    const double v1 = rule.integrate([](double x) { return std::pow(x, -1.0 / 3.0); });
    CHECK(std::abs(v1 - 1.5) < 1e-10);

    const double v2 = rule.integrate([](double x) { return std::pow(x, 2.0 / 3.0); });
    CHECK(std::abs(v2 - 0.6) < 1e-12);

    // smooth integrands agree with the plain base rule
    const auto plain = gauss_legendre(16);
    double ref = 0.0;
    for (std::size_t i = 0; i < plain.nodes.size(); ++i)
        ref += 0.5 * plain.weights[i] * std::cos(0.5 * (1.0 + plain.nodes[i]));
    const double v3 = rule.integrate([](double x) { return std::cos(x); });
    CHECK(std::abs(v3 - ref) < 1e-12);

    // the 10-point base converges too, at its own accuracy level
    const auto coarse = composite_graded(gauss_legendre(10), 20, 0.15);
    const double v4 = coarse.integrate([](double x) { return std::pow(x, -1.0 / 3.0); });
    CHECK(std::abs(v4 - 1.5) < 5e-8);

    // right-accumulating variant; the integrand stays bounded because breakpoints
    // within an ulp of 1 cannot localize an unbounded singularity in doubles
    const auto right =
        composite_graded(gauss_legendre(16), 20, 0.15, CompositeRule::Endpoint::Right);
    const double v5 = right.integrate(
        [](double x) { return std::pow(std::max(1.0 - x, 0.0), 2.0 / 3.0); });
    CHECK(std::abs(v5 - 0.6) < 1e-10);

    CHECK_THROWS_AS(composite_graded(gauss_legendre(4), 0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(composite_graded(gauss_legendre(4), 5, 1.5), std::invalid_argument);
}

TEST_CASE("duffy_pair_integral: constant integrand") {
    const double val = duffy_pair_integral([](double, double) { return 1.0; }, 2.5, 0.75, 12);
    // int_0^1 int_0^1 t * 2 dz dt = 1, scaled by the edge lengths
    CHECK(std::abs(val - 2.5 * 0.75) < 1e-13);
}

TEST_CASE("duffy_pair_integral: perpendicular hats vs adaptive oracle") {
    // unit edges along +x and +y, u = v = linear hat vanishing at the shared vertex
    auto F = [](double s, double t) {
        return (s - t) * (s - t) / (s * s + t * t);
    };
    const double oracle = oracles::adaptive_square_integral(F, 1e-11);
    const double val = duffy_pair_integral(F, 1.0, 1.0, 20);
    CHECK(std::abs(val - oracle) < 1e-8);
}

TEST_CASE("duffy_pair_integral: convergence plateau on polynomial data") {
    // degree-4 polynomial data on edges at 120 degrees
    const Point2 a{1.0, 0.0};
    const Point2 b{std::cos(2.0 * M_PI / 3.0), std::sin(2.0 * M_PI / 3.0)};
    auto F = [&](double s, double t) {
        const double fu = s * (1.0 + s + s * s * s);  // s f(s), f degree 3
        const double gu = t * (0.5 - t * t);
        const double num = (fu - gu) * (fu + 2.0 * gu);
        return num / (a * s - b * t).squared_norm();
    };
    const double v20 = duffy_pair_integral(F, 1.0, 1.0, 20);
    const double v24 = duffy_pair_integral(F, 1.0, 1.0, 24);
    CHECK(std::abs(v20 - v24) < 1e-12);
}

TEST_CASE("duffy_pair_integral: randomized pairs vs adaptive oracle") {
    // angles and length ratios drawn from the range the mesh families realize
    // (interior angles >= pi/4, comparable edge lengths)
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> angle(M_PI / 4.0, 2.0 * M_PI - M_PI / 4.0);
    std::uniform_real_distribution<double> len(0.5, 2.0);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double phi = angle(rng);
        const double la = len(rng), lb = len(rng);
        const Point2 a{la, 0.0};
        const Point2 b{lb * std::cos(phi), lb * std::sin(phi)};
        const double c1 = coef(rng), c2 = coef(rng), c3 = coef(rng), c4 = coef(rng);
        auto F = [&](double s, double t) {
            const double fu = s * (c1 + c2 * s);
            const double gu = t * (c2 - c1 * t * t);
            const double qu = s * (c3 + c4 * s * s);
            const double ru = t * (c4 + c3 * t);
            return (fu - gu) * (qu - ru) / (a * s - b * t).squared_norm();
        };
        const double oracle = oracles::adaptive_square_integral(F, 1e-12) * la * lb;
        const double val = duffy_pair_integral(F, la, lb, 28);
        CHECK(std::abs(val - oracle) < 1e-8 * std::max(1.0, std::abs(oracle)));
    }
}

TEST_CASE("mass lumping: two-sided bound for polynomial traces") {
    // frozen empirical lower constant; the worst case over random sampling sits
    // at p = 1 with ratio 1/3
    const double c_frozen = 0.33;
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    for (int p = 1; p <= 8; ++p) {
        const auto gl = gauss_lobatto(p);
        const auto exact_rule = gauss_legendre(p + 1);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<double> c(p + 1);
            for (auto& v : c) v = coef(rng);
            auto q = [&](double x) {
                double acc = 0.0;
                for (int k = p; k >= 0; --k) acc = acc * x + c[k];
                return acc;
            };
            double lumped = 0.0;
            for (std::size_t i = 0; i < gl.nodes.size(); ++i)
                lumped += gl.weights[i] * q(gl.nodes[i]) * q(gl.nodes[i]);
            double exact = 0.0;
            for (std::size_t i = 0; i < exact_rule.nodes.size(); ++i)
                exact += exact_rule.weights[i] * q(exact_rule.nodes[i]) * q(exact_rule.nodes[i]);
            CHECK(exact <= lumped * (1.0 + 1e-13));
            CHECK(exact >= c_frozen * lumped);
        }
    }
}
