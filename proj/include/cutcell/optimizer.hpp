#pragma once

#include <optional>

#include "cutcell/error_estimator.hpp"

namespace cutcell {

enum class Marking { SubCell, Level };

enum class Termination { BudgetReached, TargetReached, Depleted };

struct TraceStep {
  int iteration = 0;          // 0 is the initial all-zeros scheme
  long total_points = 0;
  double e_total = 0.0;
  std::vector<int> marked_cells;  // empty on the final record
  int marked_level = -1;          // set under level marking
};

struct OptimizationTrace {
  std::vector<TraceStep> steps;
  RuleIndexList final_idx;
  Termination termination = Termination::BudgetReached;
  long final_points = 0;
  double final_error = 0.0;
};

struct OptimizeOptions {
  std::optional<long> budget;          // q*: stop once total points >= budget
  std::optional<double> target_error;  // e*: stop once e_total <= target
  Marking marking = Marking::SubCell;
  BoxRuleKind box_kind = BoxRuleKind::Gauss;
  int oracle_degree = -1;
  int threads = 0;
  bool record_index_snapshots = false;
};

// Greedy quadrature optimization: starting from one point per sub-cell,
// repeatedly evaluate the worst polynomial, localize its error, divide by
// the cost of the next rule, and increment the argmax cell (or every cell
// of the argmax level). Depleted cells are skipped; ties break toward the
// lowest level, then the lowest cell id.
OptimizationTrace optimize(const Partition& p, const PolynomialSpace& space,
                           const OptimizeOptions& opts);

struct SweepRow {
  int order = 0;  // exactness degree requested on every sub-cell
  long total_points = 0;
  double e_total = 0.0;
};

// Equal-order baseline: the same exactness degree on every sub-cell
// (boxes: Gauss/uniform with ceil((q+1)/2) points per direction; simplex
// cells: the first catalog entry of at least that degree, clamped at the
// top entry).
std::vector<SweepRow> equal_order_sweep(const Partition& p,
                                        const PolynomialSpace& space,
                                        BoxRuleKind box_kind, int max_order,
                                        int threads = 0);

// index list realizing one equal-order row
RuleIndexList equal_order_indices(const Partition& p, int order);

enum class ThumbRule { A_MinimalLowering, B_UniformLowering };

// Fixed per-level Gauss-degree schedules approximating the optimized
// distribution; returns the per-level degrees for levels 1..rho+1.
std::vector<int> rule_of_thumb_degrees(int max_depth, ThumbRule strategy,
                                       int k_max);
RuleIndexList rule_of_thumb(const Partition& p, ThumbRule strategy, int k_max);

}  // namespace cutcell
