#pragma once

#include <iosfwd>
#include <string>

#include "hvem/mesh.hpp"

namespace hvem {

/// Line-oriented mesh format:
///   POLYMESH 1
///   VERTICES k
///   x y                (k lines)
///   ELEMENTS m
///   i0 i1 i2 ...       (m lines, counterclockwise 0-based vertex indices)
///   LAYERS l0 l1 ...   (optional, m integers)
/// Edges are derived on import, never stored.
Mesh import_mesh(const std::string& path);
Mesh read_mesh(std::istream& in, const std::string& origin = "<stream>");

void export_mesh(const Mesh& mesh, const std::string& path);
void write_mesh(const Mesh& mesh, std::ostream& out);

}  // namespace hvem
