#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "hvem/mesh_generators.hpp"
#include "hvem/mesh_io.hpp"
#include "hvem/quadrature.hpp"
#include "hvem/study.hpp"

namespace {

hvem::StabChoice parse_stab(const std::string& name) {
    if (name == "l2-exact") return hvem::StabChoice::L2Exact;
    if (name == "l2-lumped") return hvem::StabChoice::L2Lumped;
    if (name == "h-half") return hvem::StabChoice::HHalf;
    throw CLI::ValidationError("--stab", "unknown stabilization '" + name + "'");
}

hvem::GradedFamily parse_family(const std::string& name) {
    if (name == "a") return hvem::GradedFamily::A;
    if (name == "b") return hvem::GradedFamily::B;
    if (name == "c") return hvem::GradedFamily::C;
    throw CLI::ValidationError("--family", "unknown graded family '" + name + "'");
}

hvem::TestProblem parse_problem(const std::string& name) {
    if (name == "square-analytic") return hvem::make_square_analytic();
    if (name == "lshape-singular") return hvem::make_lshape_singular();
    if (name.rfind("harmonic-poly:", 0) == 0) {
        const int k = std::stoi(name.substr(14));
        return hvem::make_harmonic_poly(k, {0.35, 0.27}, 1.0, hvem::DomainTag::Custom);
    }
    throw CLI::ValidationError("--problem", "unknown problem '" + name + "'");
}

void dump_quadrature(int p) {
    const auto rule = hvem::gauss_lobatto(p);
    std::printf("node,weight\n");
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        std::printf("%.17e,%.17e\n", rule.nodes[i], rule.weights[i]);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"harmonic virtual element solver for the 2D Laplace equation"};
    app.require_subcommand(0, 1);

    int dump_p = 0;
    app.add_option("--dump-quadrature", dump_p, "print the Gauss-Lobatto rule for degree p");

    // ---- mesh ----
    auto* mesh_cmd = app.add_subcommand("mesh", "generate or convert meshes");
    std::string family = "a", mesh_out = "mesh.pm", mesh_in;
    double sigma = 0.5;
    int layers = 4, square_n = 0, hex_n = 0;
    mesh_cmd->add_option("--family", family, "graded family: a, b or c");
    mesh_cmd->add_option("--sigma", sigma, "grading ratio in (0,1)");
    mesh_cmd->add_option("--layers", layers, "number of layers (n+1)");
    mesh_cmd->add_option("--square", square_n, "instead: n x n unit-square mesh");
    mesh_cmd->add_option("--hexagonal", hex_n, "instead: hexagonal mesh of resolution n");
    mesh_cmd->add_option("--import", mesh_in, "instead: validate and re-emit a mesh file");
    mesh_cmd->add_option("--out", mesh_out, "output file");

    // ---- solve ----
    auto* solve_cmd = app.add_subcommand("solve", "solve one Dirichlet problem");
    std::string mesh_path, degrees_spec = "uniform:1", stab_name = "l2-lumped";
    std::string problem_name = "square-analytic", solution_out = "solution.csv";
    std::string dump_ops_path;
    solve_cmd->add_option("--mesh", mesh_path, "mesh file (.pm)")->required();
    solve_cmd->add_option("--p", degrees_spec, "'uniform:<p>' or 'graded'");
    solve_cmd->add_option("--stab", stab_name, "l2-exact | l2-lumped | h-half");
    solve_cmd->add_option("--problem", problem_name,
                          "square-analytic | lshape-singular | harmonic-poly:<k>");
    solve_cmd->add_option("--out", solution_out, "solution CSV (index,x,y,value)");
    solve_cmd->add_option("--dump-local-ops", dump_ops_path,
                          "write per-element operator matrices as CSV sections");

    // ---- study ----
    auto* study_cmd = app.add_subcommand("study", "run a convergence study");
    std::string kind = "hp", study_family = "a", degrees_mode = "uniform";
    std::string study_stab = "l2-lumped", study_out = "study.csv";
    std::string study_problem;
    double study_sigma = 0.5;
    int nmax = 6, study_p = 1;
    std::vector<int> h_levels{4, 8, 16, 32};
    bool emit_gnuplot = false;
    study_cmd->add_option("--kind", kind, "h | hp");
    study_cmd->add_option("--family", study_family, "hp: a|b|c; h: square|hex");
    study_cmd->add_option("--sigma", study_sigma, "hp grading ratio");
    study_cmd->add_option("--degrees", degrees_mode, "hp: uniform | graded");
    study_cmd->add_option("--nmax", nmax, "hp: largest layer index n");
    study_cmd->add_option("--p", study_p, "h: uniform degree");
    study_cmd->add_option("--levels", h_levels, "h: mesh resolutions")->delimiter(',');
    study_cmd->add_option("--stab", study_stab, "stabilization");
    study_cmd->add_option("--problem", study_problem, "override the default test problem");
    study_cmd->add_option("--out", study_out, "CSV output");
    study_cmd->add_flag("--emit-gnuplot", emit_gnuplot, "also write <out>.gp");

    CLI11_PARSE(app, argc, argv);

    try {
        if (dump_p > 0) {
            dump_quadrature(dump_p);
            return 0;
        }

        if (mesh_cmd->parsed()) {
            hvem::Mesh mesh;
            if (!mesh_in.empty())
                mesh = hvem::import_mesh(mesh_in);
            else if (square_n > 0)
                mesh = hvem::generate_square_mesh(square_n);
            else if (hex_n > 0)
                mesh = hvem::generate_hexagonal_mesh(hex_n);
            else
                mesh = hvem::generate_graded_mesh(parse_family(family), sigma, layers - 1);
            hvem::export_mesh(mesh, mesh_out);
            std::printf("wrote %s: %zu vertices, %zu edges, %zu elements\n", mesh_out.c_str(),
                        mesh.vertices.size(), mesh.edges.size(), mesh.elements.size());
            return 0;
        }

        if (solve_cmd->parsed()) {
            hvem::Mesh mesh = hvem::import_mesh(mesh_path);
            hvem::DegreeDistribution degrees;
            if (degrees_spec.rfind("uniform:", 0) == 0) {
                degrees = hvem::assign_degrees(mesh, hvem::DegreeMode::Uniform,
                                               std::stoi(degrees_spec.substr(8)));
            } else if (degrees_spec == "graded") {
                if (mesh.n_layers() == 0) mesh = hvem::assign_layers(mesh);
                degrees = hvem::assign_degrees(mesh, hvem::DegreeMode::LayerGraded);
            } else {
                throw CLI::ValidationError("--p", "expected 'uniform:<p>' or 'graded'");
            }
            const hvem::TestProblem problem = parse_problem(problem_name);
            const hvem::StabChoice stab = parse_stab(stab_name);

            if (!dump_ops_path.empty()) {
                std::ofstream ops_out(dump_ops_path);
                const Eigen::IOFormat csv(Eigen::FullPrecision, Eigen::DontAlignCols, ",", "\n");
                for (const auto& element : mesh.elements) {
                    const auto ops = hvem::build_local_operators(
                        mesh, element, degrees.edge_degree,
                        degrees.element_degree[element.id], stab);
                    ops_out << "# element " << element.id << " D\n" << ops.D.format(csv) << "\n";
                    ops_out << "# element " << element.id << " G\n" << ops.G.format(csv) << "\n";
                    ops_out << "# element " << element.id << " B\n" << ops.B.format(csv) << "\n";
                    ops_out << "# element " << element.id << " Pi_dof\n"
                            << ops.Pi_dof.format(csv) << "\n";
                    ops_out << "# element " << element.id << " S\n" << ops.S.format(csv) << "\n";
                    ops_out << "# element " << element.id << " K\n" << ops.K.format(csv) << "\n";
                }
            }

            const auto solution =
                hvem::solve_dirichlet_problem(mesh, degrees, stab, problem.value);
            std::ofstream out(solution_out);
            out << "index,x,y,value\n";
            char buf[160];
            for (int i = 0; i < solution.layout.total; ++i) {
                std::snprintf(buf, sizeof(buf), "%d,%.12e,%.12e,%.12e\n", i,
                              solution.layout.position[i].x, solution.layout.position[i].y,
                              solution.values[i]);
                out << buf;
            }
            const double err = hvem::computable_error(mesh, solution, problem);
            std::printf("N = %d, error = %.6e\n", solution.layout.total, err);
            return 0;
        }

        if (study_cmd->parsed()) {
            hvem::StudyResult result;
            if (kind == "hp") {
                hvem::TestProblem problem = study_problem.empty()
                                                ? hvem::make_lshape_singular()
                                                : parse_problem(study_problem);
                const hvem::DegreeMode mode = (degrees_mode == "graded")
                                                  ? hvem::DegreeMode::LayerGraded
                                                  : hvem::DegreeMode::Uniform;
                result = hvem::run_hp_study(problem, parse_family(study_family), study_sigma,
                                            mode, nmax, parse_stab(study_stab));
            } else if (kind == "h") {
                hvem::TestProblem problem = study_problem.empty()
                                                ? hvem::make_square_analytic()
                                                : parse_problem(study_problem);
                const hvem::HMeshFamily fam = (study_family == "hex")
                                                  ? hvem::HMeshFamily::Hexagonal
                                                  : hvem::HMeshFamily::Square;
                result = hvem::run_h_study(problem, fam, study_p, h_levels,
                                           parse_stab(study_stab));
            } else {
                throw CLI::ValidationError("--kind", "expected 'h' or 'hp'");
            }
            std::ofstream out(study_out);
            hvem::write_study_csv(result.rows, out);
            if (emit_gnuplot) {
                std::ofstream gp(study_out + ".gp");
                hvem::write_gnuplot_script(study_out,
                                           kind == "hp" ? hvem::FitType::Exponential
                                                        : hvem::FitType::Algebraic,
                                           gp);
            }
            const char* label = (kind == "hp") ? "slope b" : "rate";
            std::printf("wrote %s; fitted %s = %.4f (R^2 = %.4f)\n", study_out.c_str(), label,
                        result.fit.value, result.fit.r_squared);
            return 0;
        }

        std::cout << app.help() << std::endl;
        return 0;
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 1;
    }
}
