#pragma once

#include <functional>

#include "cutcell/common.hpp"

namespace cutcell {

// Scalar field over the element; positive values mark the interior domain.
struct LevelSetField {
  int dim = 2;
  std::function<double(const Point&)> eval;

  double operator()(const Point& x) const { return eval(x); }
};

// Axis-aligned cube sub-cell of the bisection hierarchy.
struct BoxCell {
  int level = 0;
  Point origin{0.0, 0.0, 0.0};
  double size = 1.0;

  Point vertex(int corner, int dim) const {
    Point v = origin;
    for (int a = 0; a < dim; ++a) {
      int shift = dim - 1 - a;
      if ((corner >> shift) & 1) v[a] += size;
    }
    return v;
  }
  Point center(int dim) const {
    Point c = origin;
    for (int a = 0; a < dim; ++a) c[a] += 0.5 * size;
    return c;
  }
  double volume(int dim) const { return std::pow(size, dim); }
};

enum class CellClass { Inside, Outside, Cut };

// Level-set samples at the 2^d vertices (lexicographic by coordinate) plus
// the cell center.
struct SignPattern {
  int dim = 2;
  std::array<double, 8> corner_values{};
  double center_value = 0.0;
  CellClass classification = CellClass::Cut;
};

// Exclusion of an ellipsoid centered at the element origin, major axis in
// the x1-x2 plane at inclination phi. Field is positive outside the
// ellipsoid (the computational domain) and -1 at the center.
LevelSetField make_ellipsoid_exclusion(double r1, double r2, double phi_deg,
                                       int dim);

// Half-space {dot(normal, x) + offset > 0}; exact under linear interpolation,
// used for calibration and testing.
LevelSetField make_halfspace(const Point& normal, double offset, int dim);

SignPattern classify_cell(const LevelSetField& field, const BoxCell& cell,
                          double eps_zero);

// Classification from already-sampled values (vertex order irrelevant).
CellClass classify_samples(const double* values, int count, double eps_zero);

}  // namespace cutcell
