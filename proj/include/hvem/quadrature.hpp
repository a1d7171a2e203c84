#pragma once

#include <functional>
#include <vector>

namespace hvem {

/// 1D quadrature rule on the reference interval [-1, 1].
struct QuadratureRule1D {
    std::vector<double> nodes;    // strictly ascending
    std::vector<double> weights;  // positive, sum to 2
    int exactness_degree = 0;     // polynomials up to this degree integrate exactly
};

/// Gauss-Lobatto rule with p+1 points (endpoints included), exact to degree 2p-1.
/// Throws std::invalid_argument for p < 1.
QuadratureRule1D gauss_lobatto(int p);

/// Gauss-Legendre rule with m points, exact to degree 2m-1.
QuadratureRule1D gauss_legendre(int m);

/// Composite rule on [0, 1] with subintervals shrinking geometrically (ratio q)
/// toward one endpoint; integrates endpoint singularities like x^(-1/3).
struct CompositeRule {
    enum class Endpoint { Left, Right };
    QuadratureRule1D base;
    int depth = 20;
    double ratio = 0.15;
    Endpoint endpoint = Endpoint::Left;

    double integrate(const std::function<double(double)>& f) const;
};

/// Composite graded rule over [0, 1]: depth geometric pieces accumulating at the
/// marked endpoint plus one terminal piece. Throws for depth < 1 or q outside (0,1).
CompositeRule composite_graded(QuadratureRule1D base, int depth, double q,
                               CompositeRule::Endpoint endpoint = CompositeRule::Endpoint::Left);

/// Double integral of the common-vertex integrand F over (0,1)^2, regularized by
/// the coordinate substitution s = t z after splitting along the diagonal:
///   len_a * len_b * int_0^1 int_0^1 t * (F(t z, t) + F(t, t z)) dz dt,
/// evaluated with an m x m tensor Gauss rule. F itself is never evaluated at the
/// singular corner (0,0).
double duffy_pair_integral(const std::function<double(double, double)>& F, double len_a,
                           double len_b, int m);

}  // namespace hvem
