#include "cutcell/tessellation.hpp"

#include <algorithm>
#include <cassert>

namespace cutcell {

namespace {

// Discard slivers produced by zero points collapsing onto corners.
constexpr double kVolumeFloor = 1e-14;

double signed_area_z(const Point& a, const Point& b, const Point& c) {
  return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]));
}

double tet_signed_volume(const Point& a, const Point& b, const Point& c,
                         const Point& d) {
  return dot(cross(b - a, c - a), d - a) / 6.0;
}

Point zero_point(const Point& a, double va, const Point& b, double vb) {
  double t = va / (va - vb);
  t = std::clamp(t, 0.0, 1.0);
  return a + t * (b - a);
}

struct FaceTriangle {
  Point a, b, c;
  int sign;
};

struct FaceResult {
  bool trimmed = false;
  int uniform_sign = 1;                      // set when not trimmed
  Point midpoint{};
  std::vector<FaceTriangle> triangles;       // edge pieces extruded to midpoint
  std::vector<std::array<Point, 2>> boundary_segments;
};

// Midpoint procedure on one quadrilateral: corners and values in cycle order
// (00, 10, 11, 01). Trims the edges, locates the diagonal zero points, forms
// the approximate midpoint and extrudes every edge piece toward it.
FaceResult tessellate_face(const std::array<Point, 4>& corner,
                           const std::array<double, 4>& value,
                           double eps_zero) {
  FaceResult out;

  int sign[4];
  for (int i = 0; i < 4; ++i) sign[i] = sign_of(value[i], eps_zero);

  const double center_value =
      0.25 * (value[0] + value[1] + value[2] + value[3]);
  const int center_sign = sign_of(center_value, eps_zero);
  const Point center =
      0.25 * (corner[0] + corner[1] + corner[2] + corner[3]);

  const bool mixed = sign[0] != sign[1] || sign[1] != sign[2] ||
                     sign[2] != sign[3] || sign[3] != center_sign;
  if (!mixed) {
    out.trimmed = false;
    out.uniform_sign = sign[0];
    return out;
  }
  out.trimmed = true;

  std::vector<Point> edge_zeros;
  bool edge_split[4] = {false, false, false, false};
  Point edge_zero_pt[4];
  for (int e = 0; e < 4; ++e) {
    const int i = e, j = (e + 1) % 4;
    if (sign[i] != sign[j]) {
      edge_zero_pt[e] = zero_point(corner[i], value[i], corner[j], value[j]);
      edge_split[e] = true;
      edge_zeros.push_back(edge_zero_pt[e]);
    }
  }

  std::vector<Point> diag_zeros;
  for (int i = 0; i < 4; ++i) {
    if (sign[i] != center_sign)
      diag_zeros.push_back(zero_point(center, center_value, corner[i], value[i]));
  }

  const std::vector<Point>& mids = diag_zeros.empty() ? edge_zeros : diag_zeros;
  assert(!mids.empty());
  Point m{0.0, 0.0, 0.0};
  for (const Point& z : mids) m = m + z;
  out.midpoint = (1.0 / static_cast<double>(mids.size())) * m;

  for (const Point& z : edge_zeros)
    out.boundary_segments.push_back({z, out.midpoint});

  for (int e = 0; e < 4; ++e) {
    const int i = e, j = (e + 1) % 4;
    if (edge_split[e]) {
      out.triangles.push_back({corner[i], edge_zero_pt[e], out.midpoint, sign[i]});
      out.triangles.push_back({edge_zero_pt[e], corner[j], out.midpoint, sign[j]});
    } else {
      out.triangles.push_back({corner[i], corner[j], out.midpoint, sign[i]});
    }
  }
  return out;
}

}  // namespace

double SimplexCell::volume(int dim) const {
  switch (kind) {
    case SimplexKind::Triangle:
      return std::abs(signed_area_z(vertices[0], vertices[1], vertices[2]));
    case SimplexKind::Tetrahedron:
      return std::abs(
          tet_signed_volume(vertices[0], vertices[1], vertices[2], vertices[3]));
    case SimplexKind::Pyramid: {
      const Point e1 = vertices[1] - vertices[0];
      const Point e2 = vertices[3] - vertices[0];
      return std::abs(dot(cross(e1, e2), vertices[4] - vertices[0])) / 3.0;
    }
  }
  return 0.0;
}

double Facet::measure(int dim) const {
  if (nverts == 2) return norm(vertices[1] - vertices[0]);
  return 0.5 * norm(cross(vertices[1] - vertices[0], vertices[2] - vertices[0]));
}

TessellationResult tessellate_2d(const std::array<double, 4>& vertex_values,
                                 const BoxCell& cell, double eps_zero) {
  // lexicographic corner order -> counterclockwise cycle (00, 10, 11, 01)
  static constexpr int cycle[4] = {0, 2, 3, 1};
  std::array<Point, 4> corner;
  std::array<double, 4> value;
  for (int i = 0; i < 4; ++i) {
    corner[i] = cell.vertex(cycle[i], 2);
    value[i] = vertex_values[cycle[i]];
  }

  FaceResult face = tessellate_face(corner, value, eps_zero);
  if (!face.trimmed)
    throw NotCutError("all vertex samples share one sign");

  TessellationResult out;
  out.midpoint = face.midpoint;
  const double floor = kVolumeFloor * cell.volume(2);
  for (const FaceTriangle& t : face.triangles) {
    SimplexCell c;
    c.kind = SimplexKind::Triangle;
    c.level = cell.level + 1;
    c.vertices[0] = t.a;
    c.vertices[1] = t.b;
    c.vertices[2] = t.c;
    if (signed_area_z(t.a, t.b, t.c) < 0.0) std::swap(c.vertices[1], c.vertices[2]);
    if (c.volume(2) <= floor) continue;
    (t.sign > 0 ? out.interior_cells : out.exterior_cells).push_back(c);
  }
  const double facet_floor = kVolumeFloor * cell.size;
  for (const auto& seg : face.boundary_segments) {
    Facet f;
    f.nverts = 2;
    f.vertices[0] = seg[0];
    f.vertices[1] = seg[1];
    if (f.measure(2) > facet_floor) out.boundary_facets.push_back(f);
  }
  return out;
}

TessellationResult tessellate_3d(const std::array<double, 8>& vertex_values,
                                 const BoxCell& cell, double eps_zero) {
  int sign[8];
  for (int i = 0; i < 8; ++i) sign[i] = sign_of(vertex_values[i], eps_zero);
  double center_value = 0.0;
  for (int i = 0; i < 8; ++i) center_value += vertex_values[i];
  center_value *= 0.125;
  const int center_sign = sign_of(center_value, eps_zero);

  bool mixed = false;
  for (int i = 0; i < 8; ++i) mixed = mixed || sign[i] != center_sign;
  if (!mixed) throw NotCutError("all vertex samples share one sign");

  const Point center = cell.center(3);

  // cell midpoint from the zero points on the center-to-vertex diagonals,
  // falling back to the cube-edge intersections for one-sided cuts
  std::vector<Point> diag_zeros;
  for (int i = 0; i < 8; ++i) {
    if (sign[i] != center_sign)
      diag_zeros.push_back(zero_point(center, center_value,
                                      cell.vertex(i, 3), vertex_values[i]));
  }
  std::vector<Point> edge_zeros;
  for (int i = 0; i < 8; ++i) {
    for (int bit = 0; bit < 3; ++bit) {
      const int j = i | (1 << bit);
      if (j == i || sign[i] == sign[j]) continue;
      edge_zeros.push_back(zero_point(cell.vertex(i, 3), vertex_values[i],
                                      cell.vertex(j, 3), vertex_values[j]));
    }
  }
  const std::vector<Point>& mids = diag_zeros.empty() ? edge_zeros : diag_zeros;
  assert(!mids.empty());
  Point m{0.0, 0.0, 0.0};
  for (const Point& z : mids) m = m + z;
  const Point midpoint = (1.0 / static_cast<double>(mids.size())) * m;

  TessellationResult out;
  out.midpoint = midpoint;
  const double floor = kVolumeFloor * cell.volume(3);

  // faces in fixed axis/side order; corners listed as the cycle
  // (00, 10, 11, 01) in the two in-plane axes
  for (int axis = 0; axis < 3; ++axis) {
    for (int side = 0; side < 2; ++side) {
      const int u = axis == 0 ? 1 : 0;
      const int v = axis == 2 ? 1 : 2;
      auto corner_index = [&](int bu, int bv) {
        int idx = side << (2 - axis);
        idx |= bu << (2 - u);
        idx |= bv << (2 - v);
        return idx;
      };
      const int cyc[4][2] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
      std::array<Point, 4> fcorner;
      std::array<double, 4> fvalue;
      for (int i = 0; i < 4; ++i) {
        const int ci = corner_index(cyc[i][0], cyc[i][1]);
        fcorner[i] = cell.vertex(ci, 3);
        fvalue[i] = vertex_values[ci];
      }

      FaceResult face = tessellate_face(fcorner, fvalue, eps_zero);
      if (!face.trimmed) {
        SimplexCell pyr;
        pyr.kind = SimplexKind::Pyramid;
        pyr.level = cell.level + 1;
        for (int i = 0; i < 4; ++i) pyr.vertices[i] = fcorner[i];
        pyr.vertices[4] = midpoint;
        const Point e1 = pyr.vertices[1] - pyr.vertices[0];
        const Point e2 = pyr.vertices[3] - pyr.vertices[0];
        if (dot(cross(e1, e2), pyr.vertices[4] - pyr.vertices[0]) < 0.0)
          std::swap(pyr.vertices[1], pyr.vertices[3]);
        if (pyr.volume(3) > floor)
          (face.uniform_sign > 0 ? out.interior_cells : out.exterior_cells)
              .push_back(pyr);
        continue;
      }

      for (const FaceTriangle& t : face.triangles) {
        SimplexCell tet;
        tet.kind = SimplexKind::Tetrahedron;
        tet.level = cell.level + 1;
        tet.vertices[0] = t.a;
        tet.vertices[1] = t.b;
        tet.vertices[2] = t.c;
        tet.vertices[3] = midpoint;
        if (tet_signed_volume(tet.vertices[0], tet.vertices[1], tet.vertices[2],
                              tet.vertices[3]) < 0.0)
          std::swap(tet.vertices[1], tet.vertices[2]);
        if (tet.volume(3) <= floor) continue;
        (t.sign > 0 ? out.interior_cells : out.exterior_cells).push_back(tet);
      }
      const double facet_floor = kVolumeFloor * cell.size * cell.size;
      for (const auto& seg : face.boundary_segments) {
        Facet f;
        f.nverts = 3;
        f.vertices[0] = seg[0];
        f.vertices[1] = seg[1];
        f.vertices[2] = midpoint;
        if (f.measure(3) > facet_floor) out.boundary_facets.push_back(f);
      }
    }
  }
  return out;
}

}  // namespace cutcell
