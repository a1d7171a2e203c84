#include "hvem/element.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hvem {

namespace {

// Values of the Lagrange basis on the given nodes at t (barycentric form).
Eigen::VectorXd lagrange_values(const std::vector<double>& nodes, double t) {
    const int n = static_cast<int>(nodes.size());
    Eigen::VectorXd vals = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
        if (std::abs(t - nodes[i]) < 1e-14) {
            vals[i] = 1.0;
            return vals;
        }
    }
    std::vector<double> w(n, 1.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (j != i) w[i] /= (nodes[i] - nodes[j]);
    double denom = 0.0;
    for (int i = 0; i < n; ++i) denom += w[i] / (t - nodes[i]);
    for (int i = 0; i < n; ++i) vals[i] = (w[i] / (t - nodes[i])) / denom;
    return vals;
}

}  // namespace

Eigen::VectorXd LocalDofLayout::edge_shape_values(int local_edge, double t) const {
    return lagrange_values(edges[local_edge].nodes, t);
}

LocalDofLayout build_dof_layout(const Mesh& mesh, const Element& element,
                                const std::vector<int>& edge_degrees) {
    LocalDofLayout layout;
    layout.element_id = element.id;
    const std::size_t ne = element.edge_loop.size();

    for (int v : element.vertex_loop) {
        LocalDof dof;
        dof.vertex_id = v;
        dof.position = mesh.vertices[v].position;
        layout.dofs.push_back(dof);
    }

    std::vector<int> vertex_local(ne);
    for (std::size_t i = 0; i < ne; ++i) vertex_local[i] = static_cast<int>(i);

    for (std::size_t i = 0; i < ne; ++i) {
        const Edge& edge = mesh.edges[element.edge_loop[i]];
        const int p = edge_degrees[edge.id];
        if (p < 1) throw std::invalid_argument("build_dof_layout: edge degree must be >= 1");

        LocalDofLayout::EdgeRef ref;
        ref.edge_id = edge.id;
        ref.degree = p;
        ref.first = mesh.vertices[edge.endpoints[0]].position;
        ref.second = mesh.vertices[edge.endpoints[1]].position;
        ref.length = edge.length;
        const int from = element.vertex_loop[i];
        ref.forward = (from == edge.endpoints[0]);
        const Point2 travel = (ref.forward ? ref.second - ref.first : ref.first - ref.second) /
                              ref.length;
        ref.outward_normal = {travel.y, -travel.x};
        ref.nodes = gauss_lobatto(p).nodes;

        ref.dof_of_node.assign(p + 1, -1);
        const int to_local = static_cast<int>((i + 1) % ne);
        ref.dof_of_node[0] = ref.forward ? vertex_local[i] : to_local;
        ref.dof_of_node[p] = ref.forward ? to_local : vertex_local[i];
        for (int k = 1; k < p; ++k) {
            LocalDof dof;
            dof.edge_id = edge.id;
            dof.node_index = k;
            dof.position = ref.point_at(ref.nodes[k]);
            ref.dof_of_node[k] = layout.size();
            layout.dofs.push_back(dof);
        }
        layout.perimeter += ref.length;
        layout.edges.push_back(std::move(ref));
    }
    return layout;
}

LocalOperators compute_projector(const LocalDofLayout& layout, const HarmonicBasis& basis) {
    const int nb = basis.dimension();
    const int nd = layout.size();
    LocalOperators ops;
    ops.D.setZero(nd, nb);
    ops.G.setZero(nb, nb);
    ops.B.setZero(nb, nd);

    for (int i = 0; i < nd; ++i) ops.D.row(i) = basis.eval(layout.dofs[i].position);

    for (const auto& edge : layout.edges) {
        const QuadratureRule1D rule = gauss_lobatto(edge.degree);
        const double jac = 0.5 * edge.length;
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            const Point2 x = edge.point_at(rule.nodes[j]);
            const double w = jac * rule.weights[j];
            const Eigen::VectorXd vals = basis.eval(x);
            const Eigen::VectorXd dn = basis.normal_derivative(x, edge.outward_normal);
            const int dof = edge.dof_of_node[j];
            // rows k >= 1: boundary form of the gradient pairing; the quadrature
            // nodes collocate with the DoF nodes, so B picks up single entries
            ops.G.bottomRows(nb - 1) += w * dn.tail(nb - 1) * vals.transpose();
            ops.B.col(dof).tail(nb - 1) += w * dn.tail(nb - 1);
            // row 0: boundary-mean constraint fixing the constants
            ops.G.row(0) += (w / layout.perimeter) * vals.transpose();
            ops.B(0, dof) += w / layout.perimeter;
        }
    }

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(ops.G);
    ops.Pi_poly = lu.solve(ops.B);
    const double res = (ops.G * ops.Pi_poly - ops.B).norm() / std::max(1.0, ops.B.norm());
    if (!std::isfinite(res) || res > 1e-8)
        throw std::runtime_error("compute_projector: singular projector system (degenerate element)");
    ops.Pi_dof = ops.D * ops.Pi_poly;
    return ops;
}

Eigen::MatrixXd stab_l2_lumped(const LocalDofLayout& layout, int p_element, double h_element) {
    const int nd = layout.size();
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(nd);
    for (const auto& edge : layout.edges) {
        const QuadratureRule1D rule = gauss_lobatto(edge.degree);
        const double jac = 0.5 * edge.length;
        for (std::size_t j = 0; j < rule.nodes.size(); ++j)
            diag[edge.dof_of_node[j]] += jac * rule.weights[j];
    }
    return (static_cast<double>(p_element) / h_element) * diag.asDiagonal().toDenseMatrix();
}

Eigen::MatrixXd stab_l2_exact(const LocalDofLayout& layout, int p_element, double h_element) {
    const int nd = layout.size();
    Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(nd, nd);
    for (std::size_t le = 0; le < layout.edges.size(); ++le) {
        const auto& edge = layout.edges[le];
        const QuadratureRule1D rule = gauss_legendre(edge.degree + 1);  // exact for degree 2p_e
        const double jac = 0.5 * edge.length;
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            const Eigen::VectorXd shape =
                layout.edge_shape_values(static_cast<int>(le), rule.nodes[j]);
            const double w = jac * rule.weights[j];
            for (int a = 0; a <= edge.degree; ++a)
                for (int b = 0; b <= edge.degree; ++b)
                    mass(edge.dof_of_node[a], edge.dof_of_node[b]) += w * shape[a] * shape[b];
        }
    }
    return (static_cast<double>(p_element) / h_element) * mass;
}

namespace {

// scatter a rank-1 kernel sample into S
void add_pair_sample(Eigen::MatrixXd& S, const std::vector<int>& dofs,
                     const Eigen::VectorXd& diff, double weight) {
    for (std::size_t a = 0; a < dofs.size(); ++a)
        for (std::size_t b = 0; b < dofs.size(); ++b)
            S(dofs[a], dofs[b]) += weight * diff[a] * diff[b];
}

}  // namespace

Eigen::MatrixXd stab_h_half(const LocalDofLayout& layout, bool include_l2_term) {
    const int nd = layout.size();
    const std::size_t ne = layout.edges.size();
    if (ne < 3) throw std::invalid_argument("stab_h_half: element needs at least 3 edges");
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(nd, nd);

    int pmax = 1;
    for (const auto& e : layout.edges) pmax = std::max(pmax, e.degree);
    const int m_analytic = std::max(2 * pmax + 2, 16);
    const int m_distant = std::max(2 * pmax + 2, 24);

    for (std::size_t i = 0; i < ne; ++i) {
        for (std::size_t j = i; j < ne; ++j) {
            const auto& ea = layout.edges[i];
            const auto& eb = layout.edges[j];
            const double factor = (i == j) ? 1.0 : 2.0;  // unordered pair counted twice

            if (i == j) {
                // identical edges: the divided-difference integrand is a polynomial
                // of degree 2 p_e - 2 per variable; interlacing m/m+1 tensor Gauss
                // nodes never coincide, so the ratio is evaluated directly
                const QuadratureRule1D gs = gauss_legendre(std::max(ea.degree, 2));
                const QuadratureRule1D gt = gauss_legendre(std::max(ea.degree, 2) + 1);
                std::vector<int> dofs(ea.dof_of_node);
                const int n = static_cast<int>(dofs.size());
                Eigen::VectorXd diff(n);
                for (std::size_t a = 0; a < gs.nodes.size(); ++a) {
                    const Eigen::VectorXd va = layout.edge_shape_values(static_cast<int>(i),
                                                                        gs.nodes[a]);
                    for (std::size_t b = 0; b < gt.nodes.size(); ++b) {
                        const Eigen::VectorXd vb = layout.edge_shape_values(static_cast<int>(i),
                                                                            gt.nodes[b]);
                        const double dt = gs.nodes[a] - gt.nodes[b];
                        diff = (va - vb) / dt;
                        add_pair_sample(S, dofs, diff,
                                        factor * gs.weights[a] * gt.weights[b]);
                    }
                }
                continue;
            }

            // union of the DoFs living on the two edges
            std::vector<int> dofs;
            std::vector<int> pos_a(ea.degree + 1), pos_b(eb.degree + 1);
            for (int a = 0; a <= ea.degree; ++a) {
                pos_a[a] = static_cast<int>(dofs.size());
                dofs.push_back(ea.dof_of_node[a]);
            }
            for (int b = 0; b <= eb.degree; ++b) {
                auto it = std::find(dofs.begin(), dofs.end(), eb.dof_of_node[b]);
                if (it == dofs.end()) {
                    pos_b[b] = static_cast<int>(dofs.size());
                    dofs.push_back(eb.dof_of_node[b]);
                } else {
                    pos_b[b] = static_cast<int>(it - dofs.begin());
                }
            }
            const int n = static_cast<int>(dofs.size());

            // shared vertex?
            int shared_a = -1, shared_b = -1;
            for (int a : {0, ea.degree})
                for (int b : {0, eb.degree})
                    if (ea.dof_of_node[a] == eb.dof_of_node[b]) {
                        shared_a = a;
                        shared_b = b;
                    }

            if (shared_a >= 0) {
                // common vertex: parametrize both edges away from it and hand the
                // original kernel to the regularized double integral
                const Point2 v = (shared_a == 0) ? ea.first : ea.second;
                const Point2 pa = (shared_a == 0) ? ea.second : ea.first;
                const Point2 pb = (shared_b == 0) ? eb.second : eb.first;
                const Point2 da = pa - v;
                const Point2 db = pb - v;
                if (std::abs(da.cross(db)) < 1e-14 * ea.length * eb.length &&
                    da.dot(db) > 0.0)
                    throw std::invalid_argument(
                        "stab_h_half: overlapping edges sharing a vertex (degenerate angle)");

                auto t_of_s = [](double s, int shared_node, int degree) {
                    // map arclength fraction from the shared vertex to canonical t
                    (void)degree;
                    return shared_node == 0 ? 2.0 * s - 1.0 : 1.0 - 2.0 * s;
                };
                Eigen::MatrixXd block = Eigen::MatrixXd::Zero(n, n);
                Eigen::VectorXd diff(n);
                auto accumulate = [&](double s, double t, double w) {
                    const Eigen::VectorXd va = layout.edge_shape_values(
                        static_cast<int>(i), t_of_s(s, shared_a, ea.degree));
                    const Eigen::VectorXd vb = layout.edge_shape_values(
                        static_cast<int>(j), t_of_s(t, shared_b, eb.degree));
                    diff.setZero();
                    for (int a = 0; a <= ea.degree; ++a) diff[pos_a[a]] += va[a];
                    for (int b = 0; b <= eb.degree; ++b) diff[pos_b[b]] -= vb[b];
                    const Point2 xi = v + da * s;
                    const Point2 eta = v + db * t;
                    const double r2 = (xi - eta).squared_norm();
                    for (int a = 0; a < n; ++a)
                        for (int b = 0; b < n; ++b) block(a, b) += (w / r2) * diff[a] * diff[b];
                };
                // same regularization as duffy_pair_integral, but accumulating a
                // matrix block instead of a scalar
                const QuadratureRule1D g = gauss_legendre(m_analytic);
                for (int qi = 0; qi < m_analytic; ++qi) {
                    const double t = 0.5 * (1.0 + g.nodes[qi]);
                    const double wt = 0.5 * g.weights[qi];
                    for (int qj = 0; qj < m_analytic; ++qj) {
                        const double z = 0.5 * (1.0 + g.nodes[qj]);
                        const double wz = 0.5 * g.weights[qj];
                        accumulate(t * z, t, wt * wz * t);
                        accumulate(t, t * z, wt * wz * t);
                    }
                }
                block *= ea.length * eb.length * factor;
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b) S(dofs[a], dofs[b]) += block(a, b);
                continue;
            }

            // distant edges: analytic integrand, tensor Gauss on canonical params
            {
                const double gap = std::min(
                    std::min(point_segment_distance(ea.first, eb.first, eb.second),
                             point_segment_distance(ea.second, eb.first, eb.second)),
                    std::min(point_segment_distance(eb.first, ea.first, ea.second),
                             point_segment_distance(eb.second, ea.first, ea.second)));
                if (gap < 1e-13 * std::max(ea.length, eb.length))
                    throw std::invalid_argument(
                        "stab_h_half: geometrically touching edges with distinct ids");

                const QuadratureRule1D g = gauss_legendre(m_distant);
                const double jac = 0.25 * ea.length * eb.length * factor;
                Eigen::VectorXd diff(n);
                for (int qa = 0; qa < m_distant; ++qa) {
                    const Eigen::VectorXd va =
                        layout.edge_shape_values(static_cast<int>(i), g.nodes[qa]);
                    const Point2 xi = ea.point_at(g.nodes[qa]);
                    for (int qb = 0; qb < m_distant; ++qb) {
                        const Eigen::VectorXd vb =
                            layout.edge_shape_values(static_cast<int>(j), g.nodes[qb]);
                        const Point2 eta = eb.point_at(g.nodes[qb]);
                        diff.setZero();
                        for (int a = 0; a <= ea.degree; ++a) diff[pos_a[a]] += va[a];
                        for (int b = 0; b <= eb.degree; ++b) diff[pos_b[b]] -= vb[b];
                        const double w = jac * g.weights[qa] * g.weights[qb] /
                                         (xi - eta).squared_norm();
                        add_pair_sample(S, dofs, diff, w);
                    }
                }
            }
        }
    }

    if (include_l2_term) {
        // the full inner product adds the boundary mass (unit scaling)
        Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(nd, nd);
        for (std::size_t le = 0; le < ne; ++le) {
            const auto& edge = layout.edges[le];
            const QuadratureRule1D rule = gauss_legendre(edge.degree + 1);
            const double jac = 0.5 * edge.length;
            for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
                const Eigen::VectorXd shape =
                    layout.edge_shape_values(static_cast<int>(le), rule.nodes[q]);
                const double w = jac * rule.weights[q];
                for (int a = 0; a <= edge.degree; ++a)
                    for (int b = 0; b <= edge.degree; ++b)
                        mass(edge.dof_of_node[a], edge.dof_of_node[b]) +=
                            w * shape[a] * shape[b];
            }
        }
        S += mass;
    }
    return S;
}

Eigen::MatrixXd local_stiffness(const LocalOperators& ops, const Eigen::MatrixXd& S) {
    Eigen::MatrixXd G0 = ops.G;
    G0.row(0).setZero();
    const Eigen::MatrixXd consistency = ops.Pi_poly.transpose() * G0 * ops.Pi_poly;
    const Eigen::MatrixXd complement =
        Eigen::MatrixXd::Identity(ops.Pi_dof.rows(), ops.Pi_dof.cols()) - ops.Pi_dof;
    return consistency + complement.transpose() * S * complement;
}

LocalOperators build_local_operators(const LocalDofLayout& layout, const Element& element,
                                     int p_element, StabChoice stab) {
    const HarmonicBasis basis(p_element, element.centroid, element.diameter);
    LocalOperators ops = compute_projector(layout, basis);
    switch (stab) {
        case StabChoice::L2Exact:
            ops.S = stab_l2_exact(layout, p_element, element.diameter);
            break;
        case StabChoice::L2Lumped:
            ops.S = stab_l2_lumped(layout, p_element, element.diameter);
            break;
        case StabChoice::HHalf: ops.S = stab_h_half(layout); break;
    }
    ops.K = local_stiffness(ops, ops.S);
    return ops;
}

LocalOperators build_local_operators(const Mesh& mesh, const Element& element,
                                     const std::vector<int>& edge_degrees, int p_element,
                                     StabChoice stab) {
    const LocalDofLayout layout = build_dof_layout(mesh, element, edge_degrees);
    return build_local_operators(layout, element, p_element, stab);
}

}  // namespace hvem
