#pragma once

#include <Eigen/Dense>

#include "cutcell/common.hpp"

namespace cutcell {

enum class SobolevNorm { L2, H1 };
enum class BasisKind { ShiftedLegendre, Monomial };

// Tensor-product polynomial space of per-direction degree k over the
// background element, with the Sobolev norm defining the Gramian. The
// internal basis is tensor shifted-Legendre (orthonormal on the untrimmed
// element) for conditioning; the worst-case error itself is basis
// independent. Multi-indices run lexicographically with the last direction
// fastest.
struct PolynomialSpace {
  int k = 8;
  int dim = 2;
  SobolevNorm norm = SobolevNorm::H1;
  BasisKind basis = BasisKind::ShiftedLegendre;
  Point element_origin{0.0, 0.0, 0.0};
  double element_size = 1.0;

  int size() const {
    int n = 1;
    for (int a = 0; a < dim; ++a) n *= k + 1;
    return n;
  }

  // values of all basis functions at x (physical element coordinates)
  void eval(const Point& x, double* phi) const;
  // values plus gradients; grad is laid out n_p x dim, row-major
  void eval_with_grad(const Point& x, double* phi, double* grad) const;

  Eigen::VectorXd eval(const Point& x) const {
    Eigen::VectorXd v(size());
    eval(x, v.data());
    return v;
  }
};

}  // namespace cutcell
