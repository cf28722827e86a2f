#include "cutcell/geometry.hpp"

#include <cmath>

namespace cutcell {

LevelSetField make_ellipsoid_exclusion(double r1, double r2, double phi_deg,
                                       int dim) {
  if (r1 <= 0.0 || r2 <= 0.0)
    throw InvalidArgument("ellipsoid radii must be positive");
  if (dim != 2 && dim != 3) throw InvalidArgument("dim must be 2 or 3");

  const double phi = phi_deg * M_PI / 180.0;
  const double c = std::cos(phi), s = std::sin(phi);
  LevelSetField f;
  f.dim = dim;
  f.eval = [r1, r2, c, s, dim](const Point& x) {
    const double x1 = x[0] * c - x[1] * s;
    const double x2 = x[0] * s + x[1] * c;
    double v = (x1 / r1) * (x1 / r1) + (x2 / r2) * (x2 / r2);
    if (dim == 3) v += (x[2] / r2) * (x[2] / r2);
    return v - 1.0;
  };
  return f;
}

LevelSetField make_halfspace(const Point& normal, double offset, int dim) {
  if (dim != 2 && dim != 3) throw InvalidArgument("dim must be 2 or 3");
  LevelSetField f;
  f.dim = dim;
  f.eval = [normal, offset](const Point& x) { return dot(normal, x) + offset; };
  return f;
}

CellClass classify_samples(const double* values, int count, double eps_zero) {
  bool all_pos = true, all_neg = true;
  for (int i = 0; i < count; ++i) {
    const double v = values[i];
    if (std::isnan(v)) throw InvalidGeometry("level set evaluated to NaN");
    if (!(v > eps_zero)) all_pos = false;
    if (!(v < -eps_zero)) all_neg = false;
  }
  if (all_pos) return CellClass::Inside;
  if (all_neg) return CellClass::Outside;
  return CellClass::Cut;
}

SignPattern classify_cell(const LevelSetField& field, const BoxCell& cell,
                          double eps_zero) {
  SignPattern p;
  p.dim = field.dim;
  const int nc = 1 << field.dim;
  double samples[9];
  for (int c = 0; c < nc; ++c) {
    p.corner_values[c] = field(cell.vertex(c, field.dim));
    samples[c] = p.corner_values[c];
  }
  p.center_value = field(cell.center(field.dim));
  samples[nc] = p.center_value;
  p.classification = classify_samples(samples, nc + 1, eps_zero);
  return p;
}

}  // namespace cutcell
