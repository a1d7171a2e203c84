#include "hvem/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace hvem {

namespace {

// Legendre polynomial P_n(x) and its derivative via the three-term recurrence.
struct LegendreEval {
    double value;
    double derivative;
};

LegendreEval legendre(int n, double x) {
    double p0 = 1.0, p1 = x;
    if (n == 0) return {1.0, 0.0};
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    const double d = n * (x * p1 - p0) / (x * x - 1.0);
    return {p1, d};
}

}  // namespace

QuadratureRule1D gauss_legendre(int m) {
    if (m < 1) throw std::invalid_argument("gauss_legendre: point count must be >= 1");
    QuadratureRule1D rule;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    rule.exactness_degree = 2 * m - 1;
    for (int i = 0; i < m; ++i) {
        // Chebyshev initial guess, Newton iteration on P_m
        double x = -std::cos(M_PI * (i + 0.75) / (m + 0.5));
        for (int it = 0; it < 100; ++it) {
            const auto [v, d] = legendre(m, x);
            const double dx = v / d;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const auto [v, d] = legendre(m, x);
        (void)v;
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * d * d);
    }
    // enforce exact symmetry
    for (int i = 0; i < m / 2; ++i) {
        const double xs = 0.5 * (rule.nodes[m - 1 - i] - rule.nodes[i]);
        rule.nodes[i] = -xs;
        rule.nodes[m - 1 - i] = xs;
        const double ws = 0.5 * (rule.weights[i] + rule.weights[m - 1 - i]);
        rule.weights[i] = rule.weights[m - 1 - i] = ws;
    }
    if (m % 2 == 1) rule.nodes[m / 2] = 0.0;
    return rule;
}

QuadratureRule1D gauss_lobatto(int p) {
    if (p < 1) throw std::invalid_argument("gauss_lobatto: degree parameter must be >= 1");
    const int n = p + 1;  // point count
    QuadratureRule1D rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    rule.exactness_degree = 2 * p - 1;
    rule.nodes.front() = -1.0;
    rule.nodes.back() = 1.0;
    const double wend = 2.0 / (p * (p + 1.0));
    rule.weights.front() = rule.weights.back() = wend;
    // interior nodes: roots of P'_p. Newton on P'_p using
    // P''_p = (2x P'_p - p(p+1) P_p) / (1 - x^2).
    for (int i = 1; i < n - 1; ++i) {
        double x = -std::cos(M_PI * i / p);  // Chebyshev-Lobatto guess
        for (int it = 0; it < 100; ++it) {
            const auto [v, d] = legendre(p, x);
            const double dd = (2.0 * x * d - p * (p + 1.0) * v) / (1.0 - x * x);
            const double dx = d / dd;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const auto [v, d] = legendre(p, x);
        (void)d;
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / (p * (p + 1.0) * v * v);
    }
    for (int i = 0; i < n / 2; ++i) {
        const double xs = 0.5 * (rule.nodes[n - 1 - i] - rule.nodes[i]);
        rule.nodes[i] = -xs;
        rule.nodes[n - 1 - i] = xs;
        const double ws = 0.5 * (rule.weights[i] + rule.weights[n - 1 - i]);
        rule.weights[i] = rule.weights[n - 1 - i] = ws;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

CompositeRule composite_graded(QuadratureRule1D base, int depth, double q,
                               CompositeRule::Endpoint endpoint) {
    if (depth < 1) throw std::invalid_argument("composite_graded: depth must be >= 1");
    if (!(q > 0.0 && q < 1.0))
        throw std::invalid_argument("composite_graded: ratio must lie in (0,1)");
    CompositeRule rule;
    rule.base = std::move(base);
    rule.depth = depth;
    rule.ratio = q;
    rule.endpoint = endpoint;
    return rule;
}

double CompositeRule::integrate(const std::function<double(double)>& f) const {
    const bool left = (endpoint == Endpoint::Left);
    auto piece = [&](double a, double b) {
        double s = 0.0;
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (std::size_t j = 0; j < base.nodes.size(); ++j)
            s += base.weights[j] * f(mid + half * base.nodes[j]);
        return s * half;
    };
    double total = 0.0;
    double hi = 1.0;
    for (int k = 0; k < depth; ++k) {
        const double lo = hi * ratio;
        total += left ? piece(lo, hi) : piece(1.0 - hi, 1.0 - lo);
        hi = lo;
    }
    total += left ? piece(0.0, hi) : piece(1.0 - hi, 1.0);
    return total;
}

double duffy_pair_integral(const std::function<double(double, double)>& F, double len_a,
                           double len_b, int m) {
    const QuadratureRule1D g = gauss_legendre(m);
    double total = 0.0;
    for (int i = 0; i < m; ++i) {
        const double t = 0.5 * (1.0 + g.nodes[i]);
        const double wt = 0.5 * g.weights[i];
        for (int j = 0; j < m; ++j) {
            const double z = 0.5 * (1.0 + g.nodes[j]);
            const double wz = 0.5 * g.weights[j];
            total += wt * wz * t * (F(t * z, t) + F(t, t * z));
        }
    }
    return len_a * len_b * total;
}

}  // namespace hvem
