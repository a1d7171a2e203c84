#include "hvem/solver.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <stdexcept>

#include "hvem/quadrature.hpp"

namespace hvem {

DegreeDistribution assign_degrees(const Mesh& mesh, DegreeMode mode, int base) {
    DegreeDistribution dist;
    dist.mode = mode;
    dist.element_degree.resize(mesh.elements.size());
    if (mode == DegreeMode::Uniform) {
        if (base < 1) throw std::invalid_argument("assign_degrees: base degree must be >= 1");
        for (auto& p : dist.element_degree) p = base;
    } else {
        for (const auto& e : mesh.elements) {
            if (e.layer < 0)
                throw std::invalid_argument(
                    "assign_degrees: layer-graded mode requires layer labels");
            dist.element_degree[e.id] = e.layer + 1;
        }
    }
    dist.edge_degree.assign(mesh.edges.size(), 0);
    for (const auto& edge : mesh.edges) {
        int p = 0;
        for (int el : edge.elements)
            if (el >= 0) p = std::max(p, dist.element_degree[el]);
        dist.edge_degree[edge.id] = p;
    }
    return dist;
}

GlobalDofLayout build_global_layout(const Mesh& mesh, const DegreeDistribution& degrees) {
    GlobalDofLayout layout;
    layout.vertex_dof.resize(mesh.vertices.size());
    layout.edge_dof_start.resize(mesh.edges.size());

    int next = 0;
    for (const auto& v : mesh.vertices) {
        layout.vertex_dof[v.id] = next++;
        layout.position.push_back(v.position);
        layout.dirichlet.push_back(mesh.vertex_on_boundary(v.id));
    }
    for (const auto& edge : mesh.edges) {
        const int p = degrees.edge_degree[edge.id];
        layout.edge_dof_start[edge.id] = next;
        const Point2 a = mesh.vertices[edge.endpoints[0]].position;
        const Point2 b = mesh.vertices[edge.endpoints[1]].position;
        const auto nodes = gauss_lobatto(p).nodes;
        for (int k = 1; k < p; ++k) {
            layout.position.push_back((a + b) * 0.5 + (b - a) * (0.5 * nodes[k]));
            layout.dirichlet.push_back(edge.is_boundary);
            ++next;
        }
    }
    layout.total = next;
    layout.free_index.assign(layout.total, -1);
    for (int i = 0; i < layout.total; ++i)
        if (!layout.dirichlet[i]) layout.free_index[i] = layout.n_free++;
    return layout;
}

Eigen::VectorXd interpolate_dirichlet(const std::function<double(Point2)>& g,
                                      const GlobalDofLayout& layout) {
    Eigen::VectorXd values = Eigen::VectorXd::Zero(layout.total);
    for (int i = 0; i < layout.total; ++i)
        if (layout.dirichlet[i]) values[i] = g(layout.position[i]);
    return values;
}

LinearSystem assemble(const Mesh& mesh, const DegreeDistribution& degrees, StabChoice stab) {
    LinearSystem system;
    system.layout = build_global_layout(mesh, degrees);
    const GlobalDofLayout& layout = system.layout;

    std::vector<int> dirichlet_index(layout.total, -1);
    for (int i = 0; i < layout.total; ++i)
        if (layout.dirichlet[i]) {
            dirichlet_index[i] = static_cast<int>(system.dirichlet_list.size());
            system.dirichlet_list.push_back(i);
        }

    std::vector<Eigen::Triplet<double>> full, ff, fd;
    for (const auto& element : mesh.elements) {
        const LocalDofLayout local = build_dof_layout(mesh, element, degrees.edge_degree);
        const LocalOperators ops = build_local_operators(
            local, element, degrees.element_degree[element.id], stab);
        const int n = local.size();
        std::vector<int> global(n);
        for (int i = 0; i < n; ++i) global[i] = layout.local_to_global(local, i);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const double v = ops.K(i, j);
                if (v == 0.0) continue;
                full.emplace_back(global[i], global[j], v);
                const int fi = layout.free_index[global[i]];
                if (fi < 0) continue;
                const int fj = layout.free_index[global[j]];
                if (fj >= 0)
                    ff.emplace_back(fi, fj, v);
                else
                    fd.emplace_back(fi, dirichlet_index[global[j]], v);
            }
        }
    }

    system.K_full.resize(layout.total, layout.total);
    system.K_full.setFromTriplets(full.begin(), full.end());
    system.K_ff.resize(layout.n_free, layout.n_free);
    system.K_ff.setFromTriplets(ff.begin(), ff.end());
    system.K_fd.resize(layout.n_free, static_cast<int>(system.dirichlet_list.size()));
    system.K_fd.setFromTriplets(fd.begin(), fd.end());
    return system;
}

DiscreteSolution solve(const LinearSystem& system, const Eigen::VectorXd& dirichlet_values) {
    const GlobalDofLayout& layout = system.layout;
    DiscreteSolution sol;
    sol.layout = layout;
    sol.values = Eigen::VectorXd::Zero(layout.total);
    for (int d : system.dirichlet_list) sol.values[d] = dirichlet_values[d];

    if (layout.n_free > 0) {
        Eigen::VectorXd gd(system.dirichlet_list.size());
        for (std::size_t k = 0; k < system.dirichlet_list.size(); ++k)
            gd[k] = dirichlet_values[system.dirichlet_list[k]];
        const Eigen::VectorXd rhs = -(system.K_fd * gd);

        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(system.K_ff);
        Eigen::VectorXd uf;
        bool ok = (ldlt.info() == Eigen::Success);
        if (ok) {
            uf = ldlt.solve(rhs);
            ok = (ldlt.info() == Eigen::Success) && uf.allFinite();
        }
        if (!ok) {
            Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                                     Eigen::DiagonalPreconditioner<double>>
                cg(system.K_ff);
            cg.setTolerance(1e-12);
            cg.setMaxIterations(20 * layout.n_free + 1000);
            uf = cg.solve(rhs);
            if (cg.info() != Eigen::Success)
                throw std::runtime_error(
                    "solve: factorization and CG fallback both failed "
                    "(broken stabilization or mesh?)");
        }
        for (int i = 0; i < layout.total; ++i)
            if (layout.free_index[i] >= 0) sol.values[i] = uf[layout.free_index[i]];
    }
    return sol;
}

DiscreteSolution solve_dirichlet_problem(const Mesh& mesh, const DegreeDistribution& degrees,
                                         StabChoice stab,
                                         const std::function<double(Point2)>& g) {
    const LinearSystem system = assemble(mesh, degrees, stab);
    DiscreteSolution sol = solve(system, interpolate_dirichlet(g, system.layout));
    sol.degrees = degrees;
    sol.stab = stab;
    return sol;
}

}  // namespace hvem
