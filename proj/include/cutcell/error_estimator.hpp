#pragma once

#include <vector>

#include "cutcell/basis.hpp"
#include "cutcell/quadrature.hpp"

namespace cutcell {

// Oracle integrals of the basis, one column per integrable sub-cell.
// Computed once per element; the adaptive loop reuses them for the moment
// vector and the localized errors.
struct MomentCache {
  Eigen::MatrixXd cell_moments;  // n_p x m
  int oracle_degree = 0;

  Eigen::VectorXd total() const { return cell_moments.rowwise().sum(); }
};

// default oracle exactness 2*d*k, enough for every Gramian entry
int default_oracle_degree(const PolynomialSpace& space);

MomentCache compute_moment_cache(const Partition& p, const PolynomialSpace& space,
                                 int oracle_degree = -1, int threads = 0);

// xi_i = integral of basis function i over the partitioned element
Eigen::VectorXd exact_moments(const Partition& p, const PolynomialSpace& space,
                              int oracle_degree = -1);

// Sobolev Gramian of the basis over the partitioned element; SPD.
Eigen::MatrixXd gramian(const Partition& p, const PolynomialSpace& space,
                        int oracle_degree = -1, int threads = 0);

// quadrature integrals of the basis for one scheme
Eigen::VectorXd approximate_moments(const QuadratureScheme& scheme,
                                    const PolynomialSpace& space);

struct WorstCase {
  double e_total = 0.0;
  Eigen::VectorXd coeffs;  // unit-norm worst polynomial, internal basis
  bool defined = false;    // false when xi_bar matches xi to round-off
};

// e = ||xi - xi_bar||_{G^-1}, the square root of the single nonzero
// eigenvalue of the rank-one generalized eigenproblem; coeffs is the
// corresponding unit-norm eigenvector direction.
WorstCase worst_case_error(const Eigen::VectorXd& xi,
                           const Eigen::VectorXd& xi_bar,
                           const Eigen::MatrixXd& G);
WorstCase worst_case_error(const Eigen::VectorXd& xi,
                           const Eigen::VectorXd& xi_bar,
                           const Eigen::LLT<Eigen::MatrixXd>& llt,
                           double xi_norm);

// Cholesky with the failed pivot surfaced; no silent regularization.
Eigen::LLT<Eigen::MatrixXd> factor_gramian(const Eigen::MatrixXd& G);

// e_cell = |int_cell p_max - sum_q w p_max(x)| for every integrable cell
std::vector<double> localized_errors(const Partition& p,
                                     const QuadratureScheme& scheme,
                                     const PolynomialSpace& space,
                                     const Eigen::VectorXd& worst_coeffs,
                                     const MomentCache& cache);
std::vector<double> localized_errors(const Partition& p,
                                     const QuadratureScheme& scheme,
                                     const PolynomialSpace& space,
                                     const Eigen::VectorXd& worst_coeffs);

struct Indicators {
  std::vector<double> value;   // e_cell / added point count; 0 when depleted
  std::vector<bool> depleted;
};

Indicators indicators(const std::vector<double>& per_cell_error,
                      const RuleIndexList& idx, const Partition& p);

struct ErrorReport {
  Eigen::VectorXd xi;
  Eigen::VectorXd xi_bar;
  Eigen::MatrixXd gramian;
  double e_total = 0.0;
  Eigen::VectorXd worst_coeffs;
  bool worst_defined = false;
  std::vector<double> per_cell_error;
};

// full evaluation of one index list (assemble, moments, worst case,
// localization); the one-shot path used by the sweeps and the CLI
ErrorReport evaluate_indices(const Partition& p, const PolynomialSpace& space,
                             const RuleIndexList& idx, BoxRuleKind box_kind,
                             const MomentCache& cache, const Eigen::MatrixXd& G);

}  // namespace cutcell
