#include "hvem/study.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "hvem/quadrature.hpp"

namespace hvem {

TestProblem make_square_analytic() {
    TestProblem p;
    p.name = "square-analytic";
    p.value = [](Point2 x) { return std::exp(x.x) * std::sin(x.y); };
    p.gradient = [](Point2 x) {
        return Point2{std::exp(x.x) * std::sin(x.y), std::exp(x.x) * std::cos(x.y)};
    };
    p.domain = DomainTag::UnitSquare;
    p.h1_seminorm = std::sqrt((std::exp(2.0) - 1.0) / 2.0);
    return p;
}

TestProblem make_lshape_singular() {
    constexpr double alpha = 2.0 / 3.0;
    TestProblem p;
    p.name = "lshape-singular";
    p.value = [](Point2 x) {
        const double r = x.norm();
        if (r == 0.0) return 0.0;
        const double theta = std::atan2(x.y, x.x);
        return std::pow(r, alpha) * std::sin(alpha * (theta + M_PI / 2.0));
    };
    p.gradient = [](Point2 x) {
        const double r = x.norm();
        if (r == 0.0) return Point2{0.0, 0.0};  // not differentiable; never sampled there
        const double theta = std::atan2(x.y, x.x);
        const double s = std::sin(alpha * (theta + M_PI / 2.0));
        const double c = std::cos(alpha * (theta + M_PI / 2.0));
        const double dr = alpha * std::pow(r, alpha - 1.0);
        return Point2{dr * (s * std::cos(theta) - c * std::sin(theta)),
                      dr * (s * std::sin(theta) + c * std::cos(theta))};
    };
    p.domain = DomainTag::LShape;
    p.singular_corner = true;
    p.h1_seminorm = LSHAPE_H1_SEMINORM;
    return p;
}

namespace {

// boundary loop of the generator domains, CCW
std::vector<Point2> domain_loop(DomainTag tag) {
    switch (tag) {
        case DomainTag::UnitSquare: return {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
        case DomainTag::LShape:
            return {{0, 0}, {0, -1}, {1, -1}, {1, 1}, {-1, 1}, {-1, 0}};
        case DomainTag::Custom: break;
    }
    throw std::invalid_argument("domain_loop: custom domains have no fixed boundary");
}

// |u|_{1,Omega}^2 of a harmonic u via the boundary integral over the domain loop
double harmonic_h1_seminorm_sq(const TestProblem& p, const std::vector<Point2>& loop) {
    const QuadratureRule1D rule = gauss_legendre(32);
    double total = 0.0;
    for (std::size_t i = 0; i < loop.size(); ++i) {
        const Point2 a = loop[i];
        const Point2 b = loop[(i + 1) % loop.size()];
        const double len = distance(a, b);
        const Point2 tangent = (b - a) / len;
        const Point2 normal{tangent.y, -tangent.x};
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const Point2 x = (a + b) * 0.5 + (b - a) * (0.5 * rule.nodes[q]);
            total += 0.5 * len * rule.weights[q] * p.value(x) * p.gradient(x).dot(normal);
        }
    }
    return total;
}

}  // namespace

TestProblem make_harmonic_poly(int k, Point2 z0, double scale, DomainTag domain,
                               bool imaginary_part) {
    if (k < 0) throw std::invalid_argument("make_harmonic_poly: degree must be >= 0");
    TestProblem p;
    p.name = (imaginary_part ? "harmonic-poly-im:" : "harmonic-poly-re:") + std::to_string(k);
    p.domain = domain;
    p.value = [=](Point2 x) {
        double pr = 1.0, pi = 0.0;
        const double zr = (x.x - z0.x) / scale, zi = (x.y - z0.y) / scale;
        for (int j = 0; j < k; ++j) {
            const double nr = pr * zr - pi * zi;
            pi = pr * zi + pi * zr;
            pr = nr;
        }
        return imaginary_part ? pi : pr;
    };
    p.gradient = [=](Point2 x) {
        if (k == 0) return Point2{0.0, 0.0};
        double pr = 1.0, pi = 0.0;
        const double zr = (x.x - z0.x) / scale, zi = (x.y - z0.y) / scale;
        for (int j = 0; j < k - 1; ++j) {
            const double nr = pr * zr - pi * zi;
            pi = pr * zi + pi * zr;
            pr = nr;
        }
        const double c = k / scale;
        return imaginary_part ? Point2{c * pi, c * pr} : Point2{c * pr, -c * pi};
    };
    if (k == 0) {
        p.h1_seminorm = 1.0;  // constant solution; report absolute error
    } else {
        p.h1_seminorm = std::sqrt(harmonic_h1_seminorm_sq(p, domain_loop(domain)));
    }
    return p;
}

namespace {

// error contribution of one edge: int (u - q) d_n(u - q) ds
double edge_error_term(const TestProblem& problem, const HarmonicBasis& basis,
                       const Eigen::VectorXd& coeffs, const Point2& a, const Point2& b,
                       const Point2& normal, bool graded_toward_a, bool graded_toward_b) {
    const double len = distance(a, b);
    auto integrand = [&](double s) {  // s in [0,1] from a to b
        const Point2 x = a + (b - a) * s;
        const double du = problem.value(x) - coeffs.dot(basis.eval(x));
        const Point2 gu = problem.gradient(x);
        const double dn =
            gu.dot(normal) - coeffs.dot(basis.normal_derivative(x, normal));
        return du * dn;
    };
    if (graded_toward_a || graded_toward_b) {
        const CompositeRule rule =
            composite_graded(gauss_legendre(16), 20, 0.15,
                             graded_toward_a ? CompositeRule::Endpoint::Left
                                             : CompositeRule::Endpoint::Right);
        return len * rule.integrate(integrand);
    }
    const QuadratureRule1D rule = gauss_legendre(24);
    double total = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q)
        total += 0.5 * rule.weights[q] * integrand(0.5 * (1.0 + rule.nodes[q]));
    return len * total;
}

}  // namespace

double computable_error(const Mesh& mesh, const DiscreteSolution& solution,
                        const TestProblem& problem) {
    if (solution.values.size() != solution.layout.total)
        throw std::invalid_argument("computable_error: solution not solved");
    const double corner_tol = 1e-12 * mesh.domain_diameter();
    double total = 0.0;
    for (const auto& element : mesh.elements) {
        const LocalDofLayout layout =
            build_dof_layout(mesh, element, solution.degrees.edge_degree);
        const HarmonicBasis basis(solution.degrees.element_degree[element.id],
                                  element.centroid, element.diameter);
        const LocalOperators ops = compute_projector(layout, basis);

        Eigen::VectorXd local_values(layout.size());
        for (int i = 0; i < layout.size(); ++i)
            local_values[i] = solution.values[solution.layout.local_to_global(layout, i)];
        const Eigen::VectorXd coeffs = ops.Pi_poly * local_values;

        double err2 = 0.0;
        for (const auto& edge : layout.edges) {
            const Point2 a = edge.forward ? edge.first : edge.second;
            const Point2 b = edge.forward ? edge.second : edge.first;
            const bool sing_a = problem.singular_corner && a.norm() <= corner_tol;
            const bool sing_b = problem.singular_corner && b.norm() <= corner_tol;
            err2 += edge_error_term(problem, basis, coeffs, a, b, edge.outward_normal,
                                    sing_a, sing_b);
        }
        total += std::max(err2, 0.0);
    }
    return std::sqrt(total) / problem.h1_seminorm;
}

FitResult fit(const std::vector<StudyRow>& rows, FitType type) {
    if (rows.size() < 2) throw std::invalid_argument("fit: need at least 2 rows");
    std::vector<double> xs, ys;
    for (const auto& row : rows) {
        if (!(row.error > 0.0)) throw std::invalid_argument("fit: errors must be positive");
        xs.push_back(type == FitType::Algebraic ? std::log(row.h)
                                                : std::sqrt(static_cast<double>(row.n_dofs)));
        ys.push_back(std::log(row.error));
    }
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
        syy += ys[i] * ys[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    double ss_res = 0.0, ss_tot = 0.0;
    const double ybar = sy / n;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double fit_y = slope * xs[i] + intercept;
        ss_res += (ys[i] - fit_y) * (ys[i] - fit_y);
        ss_tot += (ys[i] - ybar) * (ys[i] - ybar);
    }
    FitResult result;
    result.type = type;
    result.value = (type == FitType::Algebraic) ? slope : -slope;
    result.r_squared = (ss_tot > 0.0) ? 1.0 - ss_res / ss_tot : 1.0;
    return result;
}

namespace {

StudyRow solve_one_level(const TestProblem& problem, const Mesh& mesh,
                         const DegreeDistribution& degrees, StabChoice stab, int level) {
    const auto t0 = std::chrono::steady_clock::now();
    const DiscreteSolution sol = solve_dirichlet_problem(mesh, degrees, stab, problem.value);
    StudyRow row;
    row.level = level;
    row.n_dofs = sol.layout.total;
    row.error = computable_error(mesh, sol, problem);
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return row;
}

double max_diameter(const Mesh& mesh) {
    double h = 0.0;
    for (const auto& e : mesh.elements) h = std::max(h, e.diameter);
    return h;
}

double min_diameter(const Mesh& mesh) {
    double h = 1e300;
    for (const auto& e : mesh.elements) h = std::min(h, e.diameter);
    return h;
}

}  // namespace

StudyResult run_h_study(const TestProblem& problem, HMeshFamily family, int degree,
                        const std::vector<int>& levels, StabChoice stab) {
    if (levels.size() < 2)
        throw std::invalid_argument("run_h_study: need at least 2 refinement levels");
    std::vector<Mesh> meshes;
    for (int n : levels)
        meshes.push_back(family == HMeshFamily::Square ? generate_square_mesh(n)
                                                       : generate_hexagonal_mesh(n));
    return run_h_study_meshes(problem, meshes, degree, stab);
}

StudyResult run_h_study_meshes(const TestProblem& problem, const std::vector<Mesh>& meshes,
                               int degree, StabChoice stab) {
    StudyResult result;
    for (std::size_t i = 0; i < meshes.size(); ++i) {
        const DegreeDistribution degrees =
            assign_degrees(meshes[i], DegreeMode::Uniform, degree);
        StudyRow row = solve_one_level(problem, meshes[i], degrees, stab,
                                       static_cast<int>(i));
        row.h = max_diameter(meshes[i]);
        result.rows.push_back(row);
    }
    result.fit = fit(result.rows, FitType::Algebraic);
    return result;
}

StudyResult run_hp_study(const TestProblem& problem, GradedFamily family, double sigma,
                         DegreeMode degree_mode, int n_max, StabChoice stab) {
    StudyResult result;
    for (int n = 0; n <= n_max; ++n) {
        const Mesh mesh = generate_graded_mesh(family, sigma, n);
        const DegreeDistribution degrees = assign_degrees(mesh, degree_mode, n + 1);
        StudyRow row = solve_one_level(problem, mesh, degrees, stab, n);
        row.h = min_diameter(mesh);
        result.rows.push_back(row);
    }
    result.fit = fit(result.rows, FitType::Exponential);
    return result;
}

void write_study_csv(const std::vector<StudyRow>& rows, std::ostream& out) {
    out << "n,h,N,sqrtN,error,seconds\n";
    char buf[256];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof(buf), "%d,%.12e,%d,%.12e,%.12e,%.3e\n", row.level, row.h,
                      row.n_dofs, std::sqrt(static_cast<double>(row.n_dofs)), row.error,
                      row.seconds);
        out << buf;
    }
}

void write_gnuplot_script(const std::string& csv_path, FitType type, std::ostream& out) {
    out << "set datafile separator ','\n";
    out << "set logscale y\n";
    if (type == FitType::Algebraic) {
        out << "set logscale x\n";
        out << "set xlabel 'h'\n";
        out << "plot '" << csv_path << "' every ::1 using 2:5 with linespoints title 'error'\n";
    } else {
        out << "set xlabel 'sqrt(N)'\n";
        out << "plot '" << csv_path << "' every ::1 using 4:5 with linespoints title 'error'\n";
    }
}

}  // namespace hvem
