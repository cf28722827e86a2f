#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cutcell {

// Coordinate in element units. The third component is ignored for d = 2.
using Point = std::array<double, 3>;

inline Point operator+(const Point& a, const Point& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Point operator-(const Point& a, const Point& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Point operator*(double s, const Point& a) {
  return {s * a[0], s * a[1], s * a[2]};
}
inline double dot(const Point& a, const Point& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline Point cross(const Point& a, const Point& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}
inline double norm(const Point& a) { return std::sqrt(dot(a, a)); }

struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidGeometry : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown by the tessellation when all samples share one sign.
struct NotCutError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-SPD Gramian factorization; carries the offending pivot.
struct ConditioningError : std::runtime_error {
  int pivot;
  ConditioningError(const std::string& what, int pivot_index)
      : std::runtime_error(what), pivot(pivot_index) {}
};

// Samples within eps of the zero level set count as interior.
inline constexpr double kZeroTolScale = 1e-12;

inline int sign_of(double v, double eps_zero) { return v >= -eps_zero ? 1 : -1; }

}  // namespace cutcell
