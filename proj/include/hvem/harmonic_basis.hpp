#pragma once

#include <Eigen/Dense>

#include "hvem/geometry.hpp"

namespace hvem {

/// Scaled harmonic polynomial basis on one element:
///   { 1, Re z, Im z, Re z^2, Im z^2, ..., Re z^p, Im z^p },
/// where z = ((x,y) - center) / scale read as a complex number. Dimension 2p+1.
/// Centering at the centroid and scaling by the diameter keeps the basis
/// conditioning independent of the element size.
class HarmonicBasis {
  public:
    HarmonicBasis(int degree, Point2 center, double scale);

    int degree() const { return degree_; }
    int dimension() const { return 2 * degree_ + 1; }
    Point2 center() const { return center_; }
    double scale() const { return scale_; }

    /// Values of all basis functions at pt.
    Eigen::VectorXd eval(const Point2& pt) const;

    /// Gradients of all basis functions at pt; row 0 = d/dx, row 1 = d/dy.
    Eigen::Matrix2Xd eval_gradient(const Point2& pt) const;

    /// Normal derivatives grad(q_k) . n at pt for a unit normal n.
    Eigen::VectorXd normal_derivative(const Point2& pt, const Point2& unit_normal) const;

  private:
    int degree_;
    Point2 center_;
    double scale_;
};

}  // namespace hvem
