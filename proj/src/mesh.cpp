#include "hvem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace hvem {

std::optional<double> domain_area(DomainTag tag) {
    switch (tag) {
        case DomainTag::UnitSquare: return 1.0;
        case DomainTag::LShape: return 3.0;
        case DomainTag::Custom: return std::nullopt;
    }
    return std::nullopt;
}

std::vector<Point2> Mesh::element_points(const Element& e) const {
    std::vector<Point2> pts;
    pts.reserve(e.vertex_loop.size());
    for (int v : e.vertex_loop) pts.push_back(vertices[v].position);
    return pts;
}

double Mesh::domain_diameter() const {
    double lox = 1e300, hix = -1e300, loy = 1e300, hiy = -1e300;
    for (const auto& v : vertices) {
        lox = std::min(lox, v.position.x);
        hix = std::max(hix, v.position.x);
        loy = std::min(loy, v.position.y);
        hiy = std::max(hiy, v.position.y);
    }
    return std::hypot(hix - lox, hiy - loy);
}

double Mesh::total_area() const {
    double a = 0.0;
    for (const auto& e : elements) a += e.area;
    return a;
}

bool Mesh::vertex_on_boundary(int vertex_id) const { return boundary_vertex_[vertex_id]; }

std::vector<int> Mesh::closure_neighbors(int element_id) const {
    std::set<int> out;
    for (int v : elements[element_id].vertex_loop)
        for (int e : vertex_to_elements_[v])
            if (e != element_id) out.insert(e);
    return {out.begin(), out.end()};
}

int Mesh::n_layers() const {
    int n = 0;
    for (const auto& e : elements) n = std::max(n, e.layer + 1);
    return n;
}

Mesh Mesh::from_loops(std::vector<Point2> points, std::vector<std::vector<int>> element_loops,
                      DomainTag tag, std::vector<int> layers) {
    Mesh mesh;
    mesh.domain_tag = tag;
    mesh.vertices.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!std::isfinite(points[i].x) || !std::isfinite(points[i].y))
            throw MeshError("vertex " + std::to_string(i) + " has non-finite coordinates");
        mesh.vertices.push_back({static_cast<int>(i), points[i]});
    }
    const double diam = mesh.vertices.empty() ? 1.0 : mesh.domain_diameter();
    const double tol = 1e-12 * diam;

    // vertex uniqueness up to tolerance
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (distance(points[i], points[j]) <= tol)
                throw MeshError("vertices " + std::to_string(i) + " and " + std::to_string(j) +
                                " coincide");

    if (!layers.empty() && layers.size() != element_loops.size())
        throw MeshError("layer label count does not match element count");

    std::map<std::pair<int, int>, int> edge_index;
    for (std::size_t el = 0; el < element_loops.size(); ++el) {
        const auto& loop = element_loops[el];
        if (loop.size() < 3)
            throw MeshError("element " + std::to_string(el) + " has fewer than 3 vertices");
        for (int v : loop)
            if (v < 0 || v >= static_cast<int>(points.size()))
                throw MeshError("element " + std::to_string(el) + " references vertex " +
                                std::to_string(v) + " out of range");
        std::set<int> distinct(loop.begin(), loop.end());
        if (distinct.size() != loop.size())
            throw MeshError("element " + std::to_string(el) + " repeats a vertex");

        Element elem;
        elem.id = static_cast<int>(el);
        elem.vertex_loop = loop;
        std::vector<Point2> pts;
        for (int v : loop) pts.push_back(points[v]);
        elem.area = polygon_signed_area(pts);
        if (elem.area <= 0.0)
            throw MeshError("element " + std::to_string(el) +
                            " is not counterclockwise (signed area <= 0)");
        if (!polygon_is_simple(pts))
            throw MeshError("element " + std::to_string(el) + " is self-intersecting");
        elem.diameter = polygon_diameter(pts);
        elem.centroid = polygon_centroid(pts);
        elem.layer = layers.empty() ? -1 : layers[el];

        for (std::size_t i = 0; i < loop.size(); ++i) {
            const int a = loop[i];
            const int b = loop[(i + 1) % loop.size()];
            const auto key = std::minmax(a, b);
            auto it = edge_index.find(key);
            if (it == edge_index.end()) {
                Edge edge;
                edge.id = static_cast<int>(mesh.edges.size());
                edge.endpoints = {key.first, key.second};
                edge.length = distance(points[a], points[b]);
                if (edge.length <= tol)
                    throw MeshError("element " + std::to_string(el) + " has a zero-length edge");
                edge.elements[0] = elem.id;
                it = edge_index.emplace(key, edge.id).first;
                mesh.edges.push_back(edge);
            } else {
                Edge& edge = mesh.edges[it->second];
                if (edge.elements[1] != -1)
                    throw MeshError("nonconforming mesh: edge (" + std::to_string(key.first) +
                                    "," + std::to_string(key.second) +
                                    ") borders more than two elements");
                edge.elements[1] = elem.id;
            }
            elem.edge_loop.push_back(it->second);
        }
        mesh.elements.push_back(std::move(elem));
    }

    for (auto& edge : mesh.edges) edge.is_boundary = (edge.elements[1] == -1);

    // cracks: a vertex lying strictly inside some edge means an unmaterialized
    // hanging node
    for (const auto& v : mesh.vertices) {
        for (const auto& edge : mesh.edges) {
            if (edge.endpoints[0] == v.id || edge.endpoints[1] == v.id) continue;
            const Point2& a = mesh.vertices[edge.endpoints[0]].position;
            const Point2& b = mesh.vertices[edge.endpoints[1]].position;
            if (point_segment_distance(v.position, a, b) <= tol) {
                std::ostringstream os;
                os << "nonconforming mesh: vertex " << v.id << " lies inside edge ("
                   << edge.endpoints[0] << "," << edge.endpoints[1]
                   << "); hanging nodes must be materialized";
                throw MeshError(os.str());
            }
        }
    }

    if (auto area = domain_area(tag)) {
        const double covered = mesh.total_area();
        if (std::abs(covered - *area) > 1e-10 * (*area))
            throw MeshError("element areas sum to " + std::to_string(covered) +
                            ", expected domain area " + std::to_string(*area));
    }

    mesh.vertex_to_elements_.assign(mesh.vertices.size(), {});
    for (const auto& e : mesh.elements)
        for (int v : e.vertex_loop) mesh.vertex_to_elements_[v].push_back(e.id);
    mesh.boundary_vertex_.assign(mesh.vertices.size(), false);
    for (const auto& edge : mesh.edges)
        if (edge.is_boundary)
            for (int v : edge.endpoints) mesh.boundary_vertex_[v] = true;

    return mesh;
}

Mesh assign_layers(Mesh mesh, Point2 corner) {
    const double tol = 1e-12 * mesh.domain_diameter();
    for (auto& e : mesh.elements) e.layer = -1;

    std::vector<int> frontier;
    for (const auto& e : mesh.elements) {
        bool touches = false;
        for (int v : e.vertex_loop)
            if (distance(mesh.vertices[v].position, corner) <= tol) touches = true;
        if (!touches && polygon_contains(mesh.element_points(e), corner, tol)) touches = true;
        if (touches) {
            mesh.elements[e.id].layer = 0;
            frontier.push_back(e.id);
        }
    }
    if (frontier.empty())
        throw MeshError("assign_layers: no element touches the singular corner");

    int layer = 0;
    while (!frontier.empty()) {
        ++layer;
        std::vector<int> next;
        for (int id : frontier) {
            for (int nb : mesh.closure_neighbors(id)) {
                if (mesh.elements[nb].layer == -1) {
                    mesh.elements[nb].layer = layer;
                    next.push_back(nb);
                }
            }
        }
        frontier = std::move(next);
    }
    for (const auto& e : mesh.elements)
        if (e.layer == -1) throw MeshError("assign_layers: mesh is not connected");
    return mesh;
}

GeometryReport validate_geometry(const Mesh& mesh, double rho0) {
    if (!(rho0 > 0.0 && rho0 < 0.5))
        throw std::invalid_argument("validate_geometry: rho0 must lie in (0, 1/2)");
    GeometryReport report;
    report.d1_pass = true;
    report.d2_pass = true;
    for (const auto& elem : mesh.elements) {
        ElementGeometry g;
        g.element_id = elem.id;
        g.edge_count = static_cast<int>(elem.edge_loop.size());
        const auto pts = mesh.element_points(elem);

        const auto kernel = polygon_kernel(pts);
        const auto ball = star_center_ball(pts, kernel);
        g.star_radius_ratio = ball.radius / elem.diameter;

        double min_edge = 1e300;
        for (int eid : elem.edge_loop) min_edge = std::min(min_edge, mesh.edges[eid].length);
        g.min_edge_ratio = min_edge / elem.diameter;

        const std::size_t n = pts.size();
        double max_int = 0.0, min_ext = 2.0 * M_PI;
        for (std::size_t i = 0; i < n; ++i) {
            const Point2 prev = pts[(i + n - 1) % n] - pts[i];
            const Point2 next = pts[(i + 1) % n] - pts[i];
            // interior angle for a CCW loop, in (0, 2pi)
            double ang = std::atan2(next.cross(prev), next.dot(prev));
            if (ang < 0) ang += 2.0 * M_PI;
            max_int = std::max(max_int, ang);
            min_ext = std::min(min_ext, 2.0 * M_PI - ang);
        }
        g.max_interior_angle = max_int;
        g.min_exterior_angle = min_ext;

        if (g.star_radius_ratio < rho0) report.d1_pass = false;
        if (g.min_edge_ratio < rho0) report.d2_pass = false;
        report.per_element.push_back(g);
    }

    const int layers = mesh.n_layers();
    if (layers > 0) {
        report.layer_cardinality.assign(layers, 0);
        report.layer_max_diameter.assign(layers, 0.0);
        report.layer_min_diameter.assign(layers, 1e300);
        for (const auto& e : mesh.elements) {
            if (e.layer < 0) continue;
            report.layer_cardinality[e.layer]++;
            report.layer_max_diameter[e.layer] =
                std::max(report.layer_max_diameter[e.layer], e.diameter);
            report.layer_min_diameter[e.layer] =
                std::min(report.layer_min_diameter[e.layer], e.diameter);
        }
        if (mesh.grading_sigma) {
            const double sigma = *mesh.grading_sigma;
            const int n = layers - 1;
            report.grading_ratios.resize(layers);
            report.d3_pass = true;
            for (int j = 0; j < layers; ++j) {
                const double expected = std::pow(sigma, n - j);
                report.grading_ratios[j] = report.layer_max_diameter[j] / expected;
                // report-only flag with a generous factor; the ratios carry the detail
                if (report.grading_ratios[j] > 8.0 ||
                    report.layer_min_diameter[j] / expected < 1.0 / 8.0)
                    report.d3_pass = false;
            }
        }
    }
    return report;
}

}  // namespace hvem
