#pragma once

#include <vector>

#include "cutcell/geometry.hpp"

namespace cutcell {

enum class SimplexKind { Triangle, Tetrahedron, Pyramid };

inline int vertex_count(SimplexKind k) {
  switch (k) {
    case SimplexKind::Triangle: return 3;
    case SimplexKind::Tetrahedron: return 4;
    case SimplexKind::Pyramid: return 5;
  }
  return 0;
}

// Tessellation cell at level rho+1. Pyramid vertices are stored as the base
// cycle (b0, b0+e1, b0+e1+e2, b0+e2) followed by the apex; triangles and
// tetrahedra are oriented so the signed volume is positive.
struct SimplexCell {
  SimplexKind kind = SimplexKind::Triangle;
  std::array<Point, 5> vertices{};
  int level = 0;

  int nverts() const { return vertex_count(kind); }
  double volume(int dim) const;
};

// Piecewise-linear boundary piece: segment in 2D, triangle in 3D.
struct Facet {
  std::array<Point, 3> vertices{};
  int nverts = 2;

  double measure(int dim) const;
};

struct TessellationResult {
  std::vector<SimplexCell> interior_cells;   // positive side
  std::vector<SimplexCell> exterior_cells;   // negative side, kept for testing
  std::vector<Facet> boundary_facets;
  Point midpoint{};
};

// Midpoint tessellation of a cut quadrilateral cell. vertex_values are the
// level-set samples at the 4 vertices in lexicographic vertex order.
TessellationResult tessellate_2d(const std::array<double, 4>& vertex_values,
                                 const BoxCell& cell, double eps_zero);

// Midpoint tessellation of a cut cube; the 2D procedure runs on each face
// and the pieces are extruded to the cell midpoint (pyramids for untrimmed
// faces, tetrahedra for trimmed-face triangles).
TessellationResult tessellate_3d(const std::array<double, 8>& vertex_values,
                                 const BoxCell& cell, double eps_zero);

}  // namespace cutcell
