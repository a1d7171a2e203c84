#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hvem/harmonic_basis.hpp"
#include "hvem/mesh.hpp"
#include "hvem/quadrature.hpp"

namespace hvem {

enum class StabChoice { L2Exact, L2Lumped, HHalf };

struct LocalDof {
    int vertex_id = -1;   // >= 0 for a vertex DoF
    int edge_id = -1;     // >= 0 for an edge-internal DoF
    int node_index = -1;  // Gauss-Lobatto node index along the canonical edge, 1..p_e-1
    Point2 position;
};

/// Boundary degrees of freedom of one element: one per vertex plus p_e - 1
/// internal Gauss-Lobatto nodes per edge; count = sum of edge degrees.
/// Ordering: vertices in loop order, then edges in loop order with internal
/// nodes in canonical edge orientation.
struct LocalDofLayout {
    int element_id = -1;

    struct EdgeRef {
        int edge_id = -1;
        int degree = 1;               // p_e
        bool forward = true;          // element traverses endpoints[0] -> endpoints[1]
        Point2 first, second;         // canonical endpoint positions
        double length = 0.0;
        Point2 outward_normal;        // unit, w.r.t. this element
        std::vector<int> dof_of_node; // canonical GL node -> local DoF index, size p_e+1
        std::vector<double> nodes;    // canonical GL nodes on [-1,1]

        Point2 point_at(double t) const {
            return (first + second) * 0.5 + (second - first) * (0.5 * t);
        }
    };

    std::vector<LocalDof> dofs;
    std::vector<EdgeRef> edges;
    double perimeter = 0.0;

    int size() const { return static_cast<int>(dofs.size()); }

    /// Values of all p_e+1 edge-nodal Lagrange polynomials at canonical t.
    Eigen::VectorXd edge_shape_values(int local_edge, double t) const;
};

LocalDofLayout build_dof_layout(const Mesh& mesh, const Element& element,
                                const std::vector<int>& edge_degrees);

/// Local matrices of the discrete bilinear form: DoF values of the basis (D),
/// the projector system (G, with the constant row replaced by the boundary-mean
/// constraint), its right-hand side (B), the projector in polynomial (Pi_poly)
/// and DoF (Pi_dof) coordinates, the stabilization S, and the stiffness K.
struct LocalOperators {
    Eigen::MatrixXd D;        // N_E x (2p+1)
    Eigen::MatrixXd G;        // (2p+1) x (2p+1)
    Eigen::MatrixXd B;        // (2p+1) x N_E
    Eigen::MatrixXd Pi_poly;  // (2p+1) x N_E
    Eigen::MatrixXd Pi_dof;   // N_E x N_E
    Eigen::MatrixXd S;        // N_E x N_E
    Eigen::MatrixXd K;        // N_E x N_E
};

/// Assemble D, G, B and the projector matrices. All edge integrals use the
/// edge's own Gauss-Lobatto rule with p_e+1 points, which is exact for every
/// integrand appearing here (degree <= 2 p_e - 1 by the maximum rule) and
/// collocates with the DoF nodes.
LocalOperators compute_projector(const LocalDofLayout& layout, const HarmonicBasis& basis);

/// Diagonal Gauss-Lobatto mass-lumped stabilization (p_E / h_E scaling).
Eigen::MatrixXd stab_l2_lumped(const LocalDofLayout& layout, int p_element, double h_element);

/// Exact boundary-mass stabilization (p_E / h_E scaling).
Eigen::MatrixXd stab_l2_exact(const LocalDofLayout& layout, int p_element, double h_element);

/// Fractional-seminorm stabilization: double sum over edge pairs of the
/// Aronszajn-Slobodeckij kernel, with the common-vertex pairs regularized by
/// duffy_pair_integral. The boundary L2 term is off by default.
Eigen::MatrixXd stab_h_half(const LocalDofLayout& layout, bool include_l2_term = false);

/// K = Pi_poly^T G0 Pi_poly + (I - Pi_dof)^T S (I - Pi_dof), where G0 restores
/// the zero row of the constant basis function.
Eigen::MatrixXd local_stiffness(const LocalOperators& ops, const Eigen::MatrixXd& S);

/// Full pipeline for one element given its layout.
LocalOperators build_local_operators(const LocalDofLayout& layout, const Element& element,
                                     int p_element, StabChoice stab);

/// Convenience: full pipeline for one element.
LocalOperators build_local_operators(const Mesh& mesh, const Element& element,
                                     const std::vector<int>& edge_degrees, int p_element,
                                     StabChoice stab);

}  // namespace hvem
