#include "hvem/harmonic_basis.hpp"

#include <stdexcept>

namespace hvem {

HarmonicBasis::HarmonicBasis(int degree, Point2 center, double scale)
    : degree_(degree), center_(center), scale_(scale) {
    if (degree < 0) throw std::invalid_argument("HarmonicBasis: degree must be >= 0");
    if (!(scale > 0.0)) throw std::invalid_argument("HarmonicBasis: scale must be positive");
}

Eigen::VectorXd HarmonicBasis::eval(const Point2& pt) const {
    Eigen::VectorXd values(dimension());
    values[0] = 1.0;
    const double zr = (pt.x - center_.x) / scale_;
    const double zi = (pt.y - center_.y) / scale_;
    double pr = 1.0, pi = 0.0;  // z^k by recurrence
    for (int k = 1; k <= degree_; ++k) {
        const double nr = pr * zr - pi * zi;
        const double ni = pr * zi + pi * zr;
        pr = nr;
        pi = ni;
        values[2 * k - 1] = pr;
        values[2 * k] = pi;
    }
    return values;
}

Eigen::Matrix2Xd HarmonicBasis::eval_gradient(const Point2& pt) const {
    Eigen::Matrix2Xd grad(2, dimension());
    grad.col(0).setZero();
    const double zr = (pt.x - center_.x) / scale_;
    const double zi = (pt.y - center_.y) / scale_;
    double pr = 1.0, pi = 0.0;  // z^(k-1)
    for (int k = 1; k <= degree_; ++k) {
        const double c = k / scale_;
        // grad Re z^k = (k/scale) (Re z^(k-1), -Im z^(k-1))
        grad(0, 2 * k - 1) = c * pr;
        grad(1, 2 * k - 1) = -c * pi;
        // grad Im z^k = (k/scale) (Im z^(k-1), Re z^(k-1))
        grad(0, 2 * k) = c * pi;
        grad(1, 2 * k) = c * pr;
        const double nr = pr * zr - pi * zi;
        const double ni = pr * zi + pi * zr;
        pr = nr;
        pi = ni;
    }
    return grad;
}

Eigen::VectorXd HarmonicBasis::normal_derivative(const Point2& pt,
                                                 const Point2& unit_normal) const {
    const Eigen::Matrix2Xd g = eval_gradient(pt);
    return g.row(0).transpose() * unit_normal.x + g.row(1).transpose() * unit_normal.y;
}

}  // namespace hvem
