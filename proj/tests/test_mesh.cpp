#include <doctest.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "hvem/mesh_generators.hpp"
#include "hvem/mesh_io.hpp"

using namespace hvem;

namespace {

void check_conforming(const Mesh& mesh) {
    for (const auto& edge : mesh.edges) {
        const int count = (edge.elements[0] >= 0 ? 1 : 0) + (edge.elements[1] >= 0 ? 1 : 0);
        CHECK(count >= 1);
        CHECK(edge.is_boundary == (count == 1));
        CHECK(edge.length > 0.0);
    }
    for (const auto& e : mesh.elements) {
        CHECK(polygon_signed_area(mesh.element_points(e)) > 0.0);
        CHECK(e.edge_loop.size() == e.vertex_loop.size());
    }
}

}  // namespace

TEST_CASE("square mesh: counts and area") {
    CHECK_THROWS_AS(generate_square_mesh(0), std::invalid_argument);

    const Mesh m1 = generate_square_mesh(1);
    CHECK(m1.elements.size() == 1);
    CHECK(m1.vertices.size() == 4);
    CHECK(m1.edges.size() == 4);

    const Mesh m2 = generate_square_mesh(2);
    CHECK(m2.elements.size() == 4);
    CHECK(m2.vertices.size() == 9);
    CHECK(m2.edges.size() == 12);
    check_conforming(m2);

    const Mesh m4 = generate_square_mesh(4);
    CHECK(m4.elements.size() == 16);
    CHECK(std::abs(m4.total_area() - 1.0) < 1e-12);
}

TEST_CASE("hexagonal mesh: covering, conformity, interior degree 3") {
    const Mesh m1 = generate_hexagonal_mesh(1);
    CHECK(std::abs(m1.total_area() - 1.0) < 1e-10);
    check_conforming(m1);

    const Mesh m2 = generate_hexagonal_mesh(2);
    CHECK(std::abs(m2.total_area() - 1.0) < 1e-10);
    check_conforming(m2);
    for (const auto& e : m2.elements) CHECK(polygon_is_convex(m2.element_points(e), 1e-9));

    // every interior vertex of the tiling has exactly 3 incident edges
    std::vector<int> degree(m2.vertices.size(), 0);
    for (const auto& edge : m2.edges) {
        degree[edge.endpoints[0]]++;
        degree[edge.endpoints[1]]++;
    }
    int interior = 0;
    for (const auto& v : m2.vertices) {
        if (!m2.vertex_on_boundary(v.id)) {
            ++interior;
            CHECK(degree[v.id] == 3);
        }
    }
    CHECK(interior > 0);

    for (int n : {3, 5}) check_conforming(generate_hexagonal_mesh(n));
}

TEST_CASE("mesh file round trip") {
    const Mesh original = generate_square_mesh(2);
    std::stringstream buffer;
    write_mesh(original, buffer);
    const Mesh copy = read_mesh(buffer, "<roundtrip>");
    REQUIRE(copy.vertices.size() == original.vertices.size());
    REQUIRE(copy.elements.size() == original.elements.size());
    REQUIRE(copy.edges.size() == original.edges.size());
    for (std::size_t i = 0; i < copy.vertices.size(); ++i)
        CHECK(distance(copy.vertices[i].position, original.vertices[i].position) == 0.0);
    for (std::size_t i = 0; i < copy.elements.size(); ++i)
        CHECK(copy.elements[i].vertex_loop == original.elements[i].vertex_loop);
}

TEST_CASE("import rejects malformed and nonconforming files") {
    {
        std::stringstream bad("POLYMESH 2\n");
        CHECK_THROWS_WITH_AS(read_mesh(bad, "f"), doctest::Contains("POLYMESH"), MeshError);
    }
    {
        std::stringstream bad("POLYMESH 1\nVERTICES 2\n0 0\nbroken line\n");
        try {
            read_mesh(bad, "f");
            FAIL("expected parse error");
        } catch (const MeshError& err) {
            CHECK(std::string(err.what()).find("f:4") != std::string::npos);
        }
    }
    {
        // edge (0,1) is shared by three triangles
        std::stringstream bad(
            "POLYMESH 1\nVERTICES 5\n0 0\n1 0\n0 1\n0.5 -0.5\n0.4 0.4\n"
            "ELEMENTS 3\n0 1 2\n0 3 1\n0 1 4\n");
        CHECK_THROWS_WITH_AS(read_mesh(bad, "f"),
                             doctest::Contains("more than two elements"), MeshError);
    }
    {
        // unmaterialized hanging node: vertex 4 sits inside edge (1,2)
        std::stringstream bad(
            "POLYMESH 1\nVERTICES 6\n0 0\n1 0\n1 1\n0 1\n1 0.5\n2 0\n"
            "ELEMENTS 3\n0 1 2 3\n1 5 4\n4 5 2\n");
        CHECK_THROWS_WITH_AS(read_mesh(bad, "f"), doctest::Contains("hanging"), MeshError);
    }
}

TEST_CASE("imported Voronoi mesh") {
    const Mesh voro = import_mesh("data/voronoi64.pm");
    CHECK(voro.elements.size() == 64);
    CHECK(std::abs(voro.total_area() - 1.0) < 1e-8);
    check_conforming(voro);
}

TEST_CASE("graded meshes: layers, grading and conformity") {
    CHECK_THROWS_AS(generate_graded_mesh(GradedFamily::A, 1.2, 2), std::invalid_argument);
    CHECK_THROWS_AS(generate_graded_mesh(GradedFamily::A, 0.0, 2), std::invalid_argument);

    {
        const Mesh m = generate_graded_mesh(GradedFamily::A, 0.5, 0);
        CHECK(m.n_layers() == 1);
        CHECK(m.elements.size() == 3);
        CHECK(std::abs(m.total_area() - 3.0) < 1e-12);
    }
    for (const GradedFamily family : {GradedFamily::A, GradedFamily::B, GradedFamily::C}) {
        for (const double sigma : {0.5, std::sqrt(2.0) - 1.0}) {
            for (const int n : {1, 3, 5}) {
                const Mesh m = generate_graded_mesh(family, sigma, n);
                check_conforming(m);
                CHECK(m.n_layers() == n + 1);
                CHECK(std::abs(m.total_area() - 3.0) < 1e-10 * 3.0);
                // layer partition: every element labeled once, L_0 nonempty
                std::vector<int> cardinality(n + 1, 0);
                for (const auto& e : m.elements) {
                    REQUIRE(e.layer >= 0);
                    REQUIRE(e.layer <= n);
                    cardinality[e.layer]++;
                }
                for (int j = 0; j <= n; ++j) CHECK(cardinality[j] > 0);
            }
        }
    }
    {
        // diameter ratio across layers tracks sigma^n
        const Mesh m = generate_graded_mesh(GradedFamily::A, 0.5, 3);
        CHECK(m.n_layers() == 4);
        double h0 = 0.0, h3 = 1e300;
        for (const auto& e : m.elements) {
            if (e.layer == 0) h0 = std::max(h0, e.diameter);
            if (e.layer == 3) h3 = std::min(h3, e.diameter);
        }
        const double ratio = h0 / h3;
        CHECK(ratio < 4.0 * 0.125);
        CHECK(ratio > 0.125 / 4.0);
    }
    {
        // family-a grading: dist(E,0)/h_E uniformly bounded on layers j >= 1
        for (int n : {2, 4, 6}) {
            const Mesh m = generate_graded_mesh(GradedFamily::A, 0.5, n);
            for (const auto& e : m.elements) {
                if (e.layer == 0) continue;
                double dist_to_corner = 1e300;
                for (int v : e.vertex_loop)
                    dist_to_corner =
                        std::min(dist_to_corner, m.vertices[v].position.norm());
                const double ratio = dist_to_corner / e.diameter;
                CHECK(ratio < 4.0);
                CHECK(ratio >= 0.0);
                if (e.layer >= 2) CHECK(ratio > 0.1);
            }
        }
    }
}

TEST_CASE("assign_layers recomputation matches generator labels") {
    for (const GradedFamily family : {GradedFamily::A, GradedFamily::B, GradedFamily::C}) {
        const Mesh m = generate_graded_mesh(family, 0.5, 4);
        std::vector<int> expected;
        for (const auto& e : m.elements) expected.push_back(e.layer);
        const Mesh relabeled = assign_layers(m);
        for (const auto& e : relabeled.elements) CHECK(e.layer == expected[e.id]);
    }
    // single element containing the corner gets layer 0
    const Mesh single = generate_graded_mesh(GradedFamily::C, 0.5, 0);
    const Mesh relabeled = assign_layers(single);
    CHECK(relabeled.elements[0].layer == 0);

    // mesh away from the origin: layer assignment must fail
    const Mesh square = generate_square_mesh(2);
    std::vector<Point2> shifted;
    for (const auto& v : square.vertices)
        shifted.push_back({v.position.x + 5.0, v.position.y + 5.0});
    std::vector<std::vector<int>> loops;
    for (const auto& e : square.elements) loops.push_back(e.vertex_loop);
    const Mesh far = Mesh::from_loops(shifted, loops, DomainTag::Custom);
    CHECK_THROWS_AS(assign_layers(far), MeshError);
}

TEST_CASE("validate_geometry: star-shapedness and edge ratios") {
    CHECK_THROWS_AS(validate_geometry(generate_square_mesh(1), 0.7), std::invalid_argument);

    {
        const Mesh m = generate_square_mesh(1);
        const GeometryReport report = validate_geometry(m, 0.3);
        CHECK(report.d1_pass);
        CHECK(report.d2_pass);
        // closed-form: inscribed ball radius 0.5, diameter sqrt(2)
        CHECK(report.per_element[0].star_radius_ratio ==
              doctest::Approx(0.5 / std::sqrt(2.0)).epsilon(1e-6));
        CHECK(report.per_element[0].edge_count == 4);
        CHECK(report.per_element[0].min_edge_ratio ==
              doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    }
    {
        // convex polygons: kernel equals the polygon itself
        const Mesh hexm = generate_hexagonal_mesh(2);
        for (const auto& e : hexm.elements) {
            const auto pts = hexm.element_points(e);
            const auto kernel = polygon_kernel(pts);
            REQUIRE(!kernel.empty());
            CHECK(std::abs(polygon_signed_area(kernel) - e.area) < 1e-10 * e.area);
        }
    }
    {
        // family c rings are not star-shaped: D1 must fail, and the kernel of a
        // decagon is empty
        const Mesh m = generate_graded_mesh(GradedFamily::C, 0.5, 2);
        const GeometryReport report = validate_geometry(m, 0.1);
        CHECK(!report.d1_pass);
        bool found_empty_kernel = false;
        for (const auto& e : m.elements) {
            if (e.vertex_loop.size() == 10)
                found_empty_kernel =
                    found_empty_kernel || polygon_kernel(m.element_points(e)).empty();
        }
        CHECK(found_empty_kernel);
        CHECK(report.layer_cardinality.size() == 3);
        CHECK(report.layer_cardinality[0] == 1);
    }
    {
        // families a and b satisfy the star-shapedness assumption
        for (const GradedFamily family : {GradedFamily::A, GradedFamily::B}) {
            const Mesh m = generate_graded_mesh(family, 0.5, 3);
            const GeometryReport report = validate_geometry(m, 0.05);
            CHECK(report.d1_pass);
            CHECK(report.d3_pass);
        }
    }
}
