#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <functional>

#include "hvem/element.hpp"
#include "hvem/mesh.hpp"

namespace hvem {

enum class DegreeMode { Uniform, LayerGraded };

/// Per-element degrees p_E and per-edge degrees p_e = max over the adjacent
/// elements (maximum rule at interfaces).
struct DegreeDistribution {
    DegreeMode mode = DegreeMode::Uniform;
    std::vector<int> element_degree;  // per element id
    std::vector<int> edge_degree;     // per edge id
};

/// Uniform: p_E = base everywhere. LayerGraded: p_E = layer + 1 (layer labels
/// required; `base` is ignored).
DegreeDistribution assign_degrees(const Mesh& mesh, DegreeMode mode, int base = 1);

/// Global boundary-DoF enumeration with continuous matching: one index per
/// vertex, then p_e - 1 per edge in canonical node order.
struct GlobalDofLayout {
    int total = 0;
    int n_free = 0;
    std::vector<int> vertex_dof;      // per vertex id
    std::vector<int> edge_dof_start;  // per edge id; internal nodes are consecutive
    std::vector<bool> dirichlet;      // per global DoF
    std::vector<Point2> position;     // per global DoF
    std::vector<int> free_index;      // per global DoF; -1 for Dirichlet

    int local_to_global(const LocalDofLayout& local, int local_dof) const {
        const LocalDof& dof = local.dofs[local_dof];
        if (dof.vertex_id >= 0) return vertex_dof[dof.vertex_id];
        return edge_dof_start[dof.edge_id] + dof.node_index - 1;
    }
};

GlobalDofLayout build_global_layout(const Mesh& mesh, const DegreeDistribution& degrees);

/// Nodal interpolation of the boundary datum: Dirichlet DoFs get g at their
/// Gauss-Lobatto positions (the per-edge Gauss-Lobatto interpolant), free DoFs 0.
Eigen::VectorXd interpolate_dirichlet(const std::function<double(Point2)>& g,
                                      const GlobalDofLayout& layout);

struct LinearSystem {
    GlobalDofLayout layout;
    Eigen::SparseMatrix<double> K_full;  // total x total, symmetric
    Eigen::SparseMatrix<double> K_ff;    // free x free, SPD
    Eigen::SparseMatrix<double> K_fd;    // free x dirichlet
    std::vector<int> dirichlet_list;     // global ids of Dirichlet DoFs
};

LinearSystem assemble(const Mesh& mesh, const DegreeDistribution& degrees, StabChoice stab);

struct DiscreteSolution {
    Eigen::VectorXd values;  // full DoF vector, Dirichlet values imposed
    DegreeDistribution degrees;
    StabChoice stab = StabChoice::L2Lumped;
    GlobalDofLayout layout;
};

/// Direct SPD factorization of the free block with a diagonally preconditioned
/// conjugate-gradient fallback; Dirichlet columns are moved to the right-hand
/// side (elimination, not penalty).
DiscreteSolution solve(const LinearSystem& system, const Eigen::VectorXd& dirichlet_values);

/// Full solve pipeline for a boundary datum g.
DiscreteSolution solve_dirichlet_problem(const Mesh& mesh, const DegreeDistribution& degrees,
                                         StabChoice stab,
                                         const std::function<double(Point2)>& g);

}  // namespace hvem
