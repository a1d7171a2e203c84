#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "hvem/mesh_generators.hpp"
#include "hvem/solver.hpp"

namespace hvem {

/// Harmonic test problem with known solution and gradient.
struct TestProblem {
    std::string name;
    std::function<double(Point2)> value;
    std::function<Point2(Point2)> gradient;
    DomainTag domain = DomainTag::Custom;
    bool singular_corner = false;
    double h1_seminorm = 1.0;  // |u|_{1,Omega}, the error normalizer
};

/// u(x,y) = exp(x) sin(y) on the unit square; |u|_{1,Omega} = sqrt((e^2-1)/2).
TestProblem make_square_analytic();

/// u(r,theta) = r^(2/3) sin((2/3)(theta + pi/2)) on the L-shaped domain
/// (-1,1)^2 \ (-1,0]^2, vanishing on the two boundary legs meeting at the
/// reentrant corner. The normalizer is the frozen constant LSHAPE_H1_SEMINORM.
TestProblem make_lshape_singular();

/// |u|_{1,Omega} of the L-shape singular solution, precomputed once to machine
/// precision (see tests for the independent cross-checks).
inline constexpr double LSHAPE_H1_SEMINORM = 1.3550744119328512;

/// Harmonic polynomial Re((z - z0)/s)^k or Im(...) as a patch-test solution;
/// the normalizer is computed from the boundary integral over the domain.
TestProblem make_harmonic_poly(int k, Point2 z0, double scale, DomainTag domain,
                               bool imaginary_part = false);

/// Normalized broken H1 distance between u and the element-wise energy
/// projection of the discrete solution, evaluated edge-wise as
/// sum_E  int_{dE} (u - q) d_n(u - q) ds  with q the projected polynomial
/// (both are harmonic, so no interior quadrature is needed). Edges meeting the
/// singular corner use the composite graded rule.
double computable_error(const Mesh& mesh, const DiscreteSolution& solution,
                        const TestProblem& problem);

struct StudyRow {
    int level = 0;
    double h = 0.0;
    int n_dofs = 0;
    double error = 0.0;
    double seconds = 0.0;
};

enum class FitType { Algebraic, Exponential };

struct FitResult {
    FitType type = FitType::Algebraic;
    double value = 0.0;      // algebraic rate r, or exponential slope b
    double r_squared = 0.0;  // coefficient of determination
};

/// Least squares on (log h, log e) for algebraic fits or (sqrt N, log e) for
/// exponential fits e ~ exp(-b sqrt(N)).
FitResult fit(const std::vector<StudyRow>& rows, FitType type);

enum class HMeshFamily { Square, Hexagonal };

struct StudyResult {
    std::vector<StudyRow> rows;
    FitResult fit;
};

StudyResult run_h_study(const TestProblem& problem, HMeshFamily family, int degree,
                        const std::vector<int>& levels,
                        StabChoice stab = StabChoice::L2Lumped);

/// Same driver over a caller-supplied mesh sequence (e.g. imported meshes).
StudyResult run_h_study_meshes(const TestProblem& problem, const std::vector<Mesh>& meshes,
                               int degree, StabChoice stab = StabChoice::L2Lumped);

StudyResult run_hp_study(const TestProblem& problem, GradedFamily family, double sigma,
                         DegreeMode degree_mode, int n_max,
                         StabChoice stab = StabChoice::L2Lumped);

/// CSV with columns n,h,N,sqrtN,error,seconds (deterministic formatting).
void write_study_csv(const std::vector<StudyRow>& rows, std::ostream& out);

/// Gnuplot script plotting log error against sqrt(N) from the CSV.
void write_gnuplot_script(const std::string& csv_path, FitType type, std::ostream& out);

}  // namespace hvem
