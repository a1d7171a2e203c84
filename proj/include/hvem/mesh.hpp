#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hvem/geometry.hpp"

namespace hvem {

struct MeshError : std::runtime_error {
    explicit MeshError(const std::string& what) : std::runtime_error(what) {}
};

struct Vertex {
    int id = -1;
    Point2 position;
};

struct Edge {
    int id = -1;
    std::array<int, 2> endpoints{-1, -1};  // vertex ids, canonical orientation
    std::array<int, 2> elements{-1, -1};   // adjacent element ids, -1 if none
    bool is_boundary = false;
    double length = 0.0;
};

struct Element {
    int id = -1;
    std::vector<int> vertex_loop;  // counterclockwise
    std::vector<int> edge_loop;    // edge_loop[i] joins vertex_loop[i] -> vertex_loop[i+1]
    double diameter = 0.0;
    double area = 0.0;
    Point2 centroid;
    int layer = -1;  // -1 when unset
};

enum class DomainTag { UnitSquare, LShape, Custom };

/// Conforming polygonal mesh. Immutable once built; edges are derived from the
/// element vertex loops, never stored in files.
class Mesh {
  public:
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    std::vector<Element> elements;
    DomainTag domain_tag = DomainTag::Custom;
    std::optional<double> grading_sigma;

    /// Build from vertex positions and CCW element loops. Derives edges and
    /// validates all mesh invariants (orientation, simplicity, conformity,
    /// cracks, area closure for known domains). Throws MeshError on violation.
    static Mesh from_loops(std::vector<Point2> points,
                           std::vector<std::vector<int>> element_loops, DomainTag tag,
                           std::vector<int> layers = {});

    int n_layers() const;
    double domain_diameter() const;
    double total_area() const;

    /// Loop positions of one element.
    std::vector<Point2> element_points(const Element& e) const;

    /// True if the vertex is on the domain boundary (incident to a boundary edge).
    bool vertex_on_boundary(int vertex_id) const;

    /// Elements sharing at least one vertex with `elem` (closure contact).
    std::vector<int> closure_neighbors(int element_id) const;

  private:
    std::vector<std::vector<int>> vertex_to_elements_;
    std::vector<bool> boundary_vertex_;
    friend Mesh assign_layers(Mesh mesh, Point2 corner);
};

/// Known area of the generator domains; nullopt for Custom.
std::optional<double> domain_area(DomainTag tag);

/// Recompute layer labels: L_0 = elements whose closure contains `corner`,
/// L_j = closure neighbors of L_{j-1} not yet labeled. Throws MeshError if no
/// element touches the corner.
Mesh assign_layers(Mesh mesh, Point2 corner = {0.0, 0.0});

struct ElementGeometry {
    int element_id = -1;
    double star_radius_ratio = 0.0;  // inscribed-ball estimate over h_E; 0 if not star-shaped
    double min_edge_ratio = 0.0;     // min edge length over h_E
    int edge_count = 0;
    double max_interior_angle = 0.0;
    double min_exterior_angle = 0.0;
};

/// Read-only diagnostics against the mesh assumptions: star-shapedness w.r.t. a
/// ball (polygon-kernel construction), edge-length ratios, and layer-wise
/// grading statistics when sigma is set.
struct GeometryReport {
    std::vector<ElementGeometry> per_element;
    std::vector<int> layer_cardinality;
    std::vector<double> layer_max_diameter;
    std::vector<double> layer_min_diameter;
    std::vector<double> grading_ratios;  // layer_max_diameter[j] / sigma^(n-j), when sigma set
    bool d1_pass = false;
    bool d2_pass = false;
    bool d3_pass = false;
};

GeometryReport validate_geometry(const Mesh& mesh, double rho0);

}  // namespace hvem
