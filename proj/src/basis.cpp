#include "cutcell/basis.hpp"

namespace cutcell {

namespace {

// shifted Legendre on [0,1], orthonormal: L_n(t) = sqrt(2n+1) P_n(2t-1),
// evaluated together with the derivative via the standard recurrences
void legendre_1d(int k, double t, double* val, double* der) {
  const double u = 2.0 * t - 1.0;
  double p[32], dp[32];
  p[0] = 1.0;
  dp[0] = 0.0;
  if (k >= 1) {
    p[1] = u;
    dp[1] = 1.0;
  }
  for (int n = 2; n <= k; ++n) {
    p[n] = ((2.0 * n - 1.0) * u * p[n - 1] - (n - 1.0) * p[n - 2]) / n;
    dp[n] = dp[n - 2] + (2.0 * n - 1.0) * p[n - 1];
  }
  for (int n = 0; n <= k; ++n) {
    const double s = std::sqrt(2.0 * n + 1.0);
    val[n] = s * p[n];
    if (der) der[n] = s * dp[n] * 2.0;  // chain rule for u = 2t-1
  }
}

void monomial_1d(int k, double t, double* val, double* der) {
  double p = 1.0;
  for (int n = 0; n <= k; ++n) {
    val[n] = p;
    if (der) der[n] = n == 0 ? 0.0 : n * val[n - 1];
    p *= t;
  }
}

}  // namespace

void PolynomialSpace::eval(const Point& x, double* phi) const {
  eval_with_grad(x, phi, nullptr);
}

void PolynomialSpace::eval_with_grad(const Point& x, double* phi,
                                     double* grad) const {
  const int m = k + 1;
  double v[3][32], d[3][32];
  for (int a = 0; a < dim; ++a) {
    const double t = (x[a] - element_origin[a]) / element_size;
    if (basis == BasisKind::ShiftedLegendre)
      legendre_1d(k, t, v[a], grad ? d[a] : nullptr);
    else
      monomial_1d(k, t, v[a], grad ? d[a] : nullptr);
    if (grad)
      for (int n = 0; n <= k; ++n) d[a][n] /= element_size;
  }

  if (dim == 2) {
    int i = 0;
    for (int a0 = 0; a0 < m; ++a0)
      for (int a1 = 0; a1 < m; ++a1, ++i) {
        phi[i] = v[0][a0] * v[1][a1];
        if (grad) {
          grad[2 * i] = d[0][a0] * v[1][a1];
          grad[2 * i + 1] = v[0][a0] * d[1][a1];
        }
      }
  } else {
    int i = 0;
    for (int a0 = 0; a0 < m; ++a0)
      for (int a1 = 0; a1 < m; ++a1)
        for (int a2 = 0; a2 < m; ++a2, ++i) {
          phi[i] = v[0][a0] * v[1][a1] * v[2][a2];
          if (grad) {
            grad[3 * i] = d[0][a0] * v[1][a1] * v[2][a2];
            grad[3 * i + 1] = v[0][a0] * d[1][a1] * v[2][a2];
            grad[3 * i + 2] = v[0][a0] * v[1][a1] * d[2][a2];
          }
        }
  }
}

}  // namespace cutcell
