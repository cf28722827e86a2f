#pragma once

#include <optional>
#include <vector>

#include "cutcell/octree.hpp"

namespace cutcell {

struct Rule1D {
  std::vector<double> x;  // nodes on [0,1]
  std::vector<double> w;
};

// n-point Gauss-Legendre rule on [0,1]; exact for degree 2n-1.
Rule1D gauss_1d(int n);

// n-point Gauss-Jacobi rule for int_0^1 f(x) (1-x)^alpha dx.
Rule1D gauss_jacobi_1d(int n, int alpha);

enum class BoxRuleKind { Gauss, Uniform };

struct QuadRule {
  std::vector<Point> points;
  std::vector<double> weights;
  int size() const { return static_cast<int>(points.size()); }
};

// Tensor-product rule on a box cell: Gauss-Legendre or the midpoint-uniform
// rule with n points per direction.
QuadRule box_rule(BoxRuleKind kind, int n_per_dir, const BoxCell& cell, int dim);

// Nested catalog of rules per cell kind, indexed by iota >= 0, with strictly
// increasing point counts and exactness degrees. See src/quadrature.cpp for
// the tables.
int catalog_entries(SimplexKind kind);
int catalog_degree(SimplexKind kind, int index);
int catalog_points(SimplexKind kind, int index);
// smallest index whose exactness degree is >= degree (clamped at the top)
int catalog_index_for_degree(SimplexKind kind, int degree);

QuadRule simplex_rule(SimplexKind kind, int index, const SimplexCell& cell);

// Per-cell quadrature-index list iota, one entry per integrable sub-cell.
struct RuleIndexList {
  std::vector<int> indices;

  static RuleIndexList zeros(const Partition& p) {
    return RuleIndexList{std::vector<int>(p.cells().size(), 0)};
  }
};

// Number of points the cell's rule would use at the given index.
int rule_point_count(const SubCell& cell, int index, int dim);
// Highest valid index for the cell (boxes are unbounded; catalogs deplete).
std::optional<int> max_rule_index(const SubCell& cell);

QuadRule cell_rule(const SubCell& cell, int index, BoxRuleKind box_kind, int dim);

struct QuadratureScheme {
  std::vector<Point> points;
  std::vector<double> weights;
  std::vector<std::pair<int, int>> per_cell;  // cell id -> [begin, end)
  long total() const { return static_cast<long>(points.size()); }
};

QuadratureScheme assemble_scheme(const Partition& p, const RuleIndexList& idx,
                                 BoxRuleKind box_kind);

// Scheme exact (to round-off) for all polynomials of total degree
// <= target_degree on every sub-cell; the oracle behind the moment vectors
// and the Gramian.
QuadratureScheme reference_scheme(const Partition& p, int target_degree);

// Reference rule on a single cell; shared by the oracle and the localized
// error evaluation.
QuadRule reference_cell_rule(const SubCell& cell, int target_degree, int dim);

}  // namespace cutcell
