#pragma once

#include "hvem/mesh.hpp"

namespace hvem {

/// n x n congruent squares tiling the unit square (0,1)^2.
Mesh generate_square_mesh(int n);

/// Hexagon-dominant conforming tiling of (0,1)^2; boundary cells are clipped to
/// the square (pentagons/quads), all cells convex. Characteristic size ~ 1/n.
Mesh generate_hexagonal_mesh(int n);

enum class GradedFamily { A, B, C };

/// Geometrically graded mesh of the L-shaped domain (-1,1)^2 \ (-1,0]^2 with
/// n+1 layers shrinking by sigma toward the reentrant corner at the origin.
/// Family A: axis-aligned rectangles per ring (hanging nodes materialized as
/// split collinear edges). Family B: rings cut by the diagonal into nonconvex
/// hexagons, core of two quadrilaterals. Family C: one nonstar-shaped decagon
/// per ring around an L-shaped hexagonal core.
/// Layer labels are set by construction.
Mesh generate_graded_mesh(GradedFamily family, double sigma, int n);

}  // namespace hvem
