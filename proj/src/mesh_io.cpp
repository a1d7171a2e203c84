#include "hvem/mesh_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace hvem {

namespace {

[[noreturn]] void parse_fail(const std::string& origin, int line, const std::string& msg) {
    throw MeshError(origin + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

Mesh read_mesh(std::istream& in, const std::string& origin) {
    int lineno = 0;
    std::string line;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            const auto pos = line.find_first_not_of(" \t\r");
            if (pos == std::string::npos) continue;  // skip blank lines
            if (line[pos] == '#') continue;
            return true;
        }
        return false;
    };

    if (!next_line()) parse_fail(origin, lineno, "empty file");
    {
        std::istringstream is(line);
        std::string magic;
        int version = 0;
        is >> magic >> version;
        if (magic != "POLYMESH" || version != 1)
            parse_fail(origin, lineno, "expected header 'POLYMESH 1'");
    }

    if (!next_line()) parse_fail(origin, lineno, "missing VERTICES section");
    std::size_t nv = 0;
    {
        std::istringstream is(line);
        std::string kw;
        is >> kw >> nv;
        if (kw != "VERTICES" || is.fail())
            parse_fail(origin, lineno, "expected 'VERTICES <count>'");
    }
    std::vector<Point2> points(nv);
    for (std::size_t i = 0; i < nv; ++i) {
        if (!next_line()) parse_fail(origin, lineno, "unexpected end of vertex list");
        std::istringstream is(line);
        if (!(is >> points[i].x >> points[i].y))
            parse_fail(origin, lineno, "malformed vertex coordinates");
    }

    if (!next_line()) parse_fail(origin, lineno, "missing ELEMENTS section");
    std::size_t ne = 0;
    {
        std::istringstream is(line);
        std::string kw;
        is >> kw >> ne;
        if (kw != "ELEMENTS" || is.fail())
            parse_fail(origin, lineno, "expected 'ELEMENTS <count>'");
    }
    std::vector<std::vector<int>> loops(ne);
    for (std::size_t i = 0; i < ne; ++i) {
        if (!next_line()) parse_fail(origin, lineno, "unexpected end of element list");
        std::istringstream is(line);
        int idx;
        while (is >> idx) loops[i].push_back(idx);
        if (loops[i].size() < 3)
            parse_fail(origin, lineno, "element needs at least 3 vertex indices");
    }

    std::vector<int> layers;
    if (next_line()) {
        std::istringstream is(line);
        std::string kw;
        is >> kw;
        if (kw != "LAYERS") parse_fail(origin, lineno, "unexpected trailing content");
        layers.resize(ne);
        for (std::size_t i = 0; i < ne; ++i) {
            while (!(is >> layers[i])) {
                if (!next_line()) parse_fail(origin, lineno, "LAYERS needs one label per element");
                is = std::istringstream(line);
            }
        }
    }

    try {
        return Mesh::from_loops(std::move(points), std::move(loops), DomainTag::Custom,
                                std::move(layers));
    } catch (const MeshError& err) {
        throw MeshError(origin + ": " + err.what());
    }
}

Mesh import_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MeshError("cannot open mesh file '" + path + "'");
    return read_mesh(in, path);
}

void write_mesh(const Mesh& mesh, std::ostream& out) {
    out << "POLYMESH 1\n";
    out << "VERTICES " << mesh.vertices.size() << "\n";
    out << std::setprecision(17);
    for (const auto& v : mesh.vertices) out << v.position.x << " " << v.position.y << "\n";
    out << "ELEMENTS " << mesh.elements.size() << "\n";
    for (const auto& e : mesh.elements) {
        for (std::size_t i = 0; i < e.vertex_loop.size(); ++i)
            out << (i ? " " : "") << e.vertex_loop[i];
        out << "\n";
    }
    if (mesh.n_layers() > 0) {
        out << "LAYERS";
        for (const auto& e : mesh.elements) out << " " << e.layer;
        out << "\n";
    }
}

void export_mesh(const Mesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw MeshError("cannot write mesh file '" + path + "'");
    write_mesh(mesh, out);
}

}  // namespace hvem
