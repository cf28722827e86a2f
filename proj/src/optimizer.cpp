#include "cutcell/optimizer.hpp"

#include <algorithm>

namespace cutcell {

namespace {

// per-cell state of the evolving scheme
struct CellState {
  int iota = 0;
  long points = 0;
  Eigen::VectorXd xi_bar;  // quadrature moments of this cell's rule
};

Eigen::VectorXd cell_quadrature_moments(const SubCell& cell, int iota,
                                        BoxRuleKind box_kind,
                                        const PolynomialSpace& space) {
  const QuadRule r = cell_rule(cell, iota, box_kind, space.dim);
  const int n_p = space.size();
  Eigen::VectorXd mom = Eigen::VectorXd::Zero(n_p);
  std::vector<double> phi(n_p);
  for (int q = 0; q < r.size(); ++q) {
    space.eval(r.points[q], phi.data());
    for (int i = 0; i < n_p; ++i) mom[i] += r.weights[q] * phi[i];
  }
  return mom;
}

}  // namespace

OptimizationTrace optimize(const Partition& p, const PolynomialSpace& space,
                           const OptimizeOptions& opts) {
  if (p.cells().empty())
    throw InvalidArgument("optimize requires a non-empty partition");
  if (opts.budget.has_value() == opts.target_error.has_value())
    throw InvalidArgument("set exactly one of budget and target_error");

  const int m = static_cast<int>(p.cells().size());
  const MomentCache cache =
      compute_moment_cache(p, space, opts.oracle_degree, opts.threads);
  const Eigen::VectorXd xi = cache.total();
  const double xi_norm = xi.norm();
  const Eigen::MatrixXd G = gramian(p, space, opts.oracle_degree, opts.threads);
  const Eigen::LLT<Eigen::MatrixXd> llt = factor_gramian(G);

  std::vector<CellState> state(m);
  Eigen::VectorXd xi_bar = Eigen::VectorXd::Zero(space.size());
  long total = 0;
  for (int c = 0; c < m; ++c) {
    state[c].iota = 0;
    state[c].points = rule_point_count(p.cells()[c], 0, p.dim);
    state[c].xi_bar =
        cell_quadrature_moments(p.cells()[c], 0, opts.box_kind, space);
    xi_bar += state[c].xi_bar;
    total += state[c].points;
  }

  // levels present in the partition, ascending
  std::vector<int> levels;
  for (const SubCell& c : p.cells())
    if (std::find(levels.begin(), levels.end(), c.level) == levels.end())
      levels.push_back(c.level);
  std::sort(levels.begin(), levels.end());

  OptimizationTrace trace;
  trace.final_idx = RuleIndexList::zeros(p);
  Termination termination = Termination::Depleted;

  for (int iter = 0;; ++iter) {
    const WorstCase wc = worst_case_error(xi, xi_bar, llt, xi_norm);

    if (opts.budget && total >= *opts.budget) {
      termination = Termination::BudgetReached;
      trace.steps.push_back({iter, total, wc.e_total, {}, -1});
      break;
    }
    if (opts.target_error && wc.e_total <= *opts.target_error) {
      termination = Termination::TargetReached;
      trace.steps.push_back({iter, total, wc.e_total, {}, -1});
      break;
    }

    // localized errors against the cached per-cell oracle moments
    std::vector<double> cell_err(m, 0.0);
    if (wc.defined) {
      for (int c = 0; c < m; ++c)
        cell_err[c] =
            std::abs(wc.coeffs.dot(cache.cell_moments.col(c) - state[c].xi_bar));
    }

    // indicators with depleted cells excluded
    std::vector<double> ind(m, 0.0);
    std::vector<bool> depleted(m, false);
    bool any_candidate = false;
    for (int c = 0; c < m; ++c) {
      const SubCell& cell = p.cells()[c];
      const auto top = max_rule_index(cell);
      if (top && state[c].iota >= *top) {
        depleted[c] = true;
        continue;
      }
      const int dq = rule_point_count(cell, state[c].iota + 1, p.dim) -
                     rule_point_count(cell, state[c].iota, p.dim);
      ind[c] = cell_err[c] / dq;
      any_candidate = true;
    }
    if (!any_candidate) {
      termination = Termination::Depleted;
      trace.steps.push_back({iter, total, wc.e_total, {}, -1});
      break;
    }

    std::vector<int> marked;
    int marked_level = -1;
    if (opts.marking == Marking::SubCell) {
      int best = -1;
      for (int c = 0; c < m; ++c) {
        if (depleted[c]) continue;
        if (best < 0 || ind[c] > ind[best] ||
            (ind[c] == ind[best] &&
             (p.cells()[c].level < p.cells()[best].level ||
              (p.cells()[c].level == p.cells()[best].level && c < best))))
          best = c;
      }
      marked.push_back(best);
    } else {
      double best_sum = -1.0;
      for (int l : levels) {
        double sum = 0.0;
        bool candidate = false;
        for (int c = 0; c < m; ++c) {
          if (p.cells()[c].level != l || depleted[c]) continue;
          sum += ind[c];
          candidate = true;
        }
        if (!candidate) continue;  // fully depleted level
        if (sum > best_sum) {
          best_sum = sum;
          marked_level = l;
        }
      }
      for (int c = 0; c < m; ++c)
        if (p.cells()[c].level == marked_level && !depleted[c]) marked.push_back(c);
    }

    trace.steps.push_back({iter, total, wc.e_total, marked, marked_level});

    for (int c : marked) {
      state[c].iota += 1;
      trace.final_idx.indices[c] = state[c].iota;
      const long new_points = rule_point_count(p.cells()[c], state[c].iota, p.dim);
      total += new_points - state[c].points;
      state[c].points = new_points;
      const Eigen::VectorXd mom =
          cell_quadrature_moments(p.cells()[c], state[c].iota, opts.box_kind, space);
      xi_bar += mom - state[c].xi_bar;
      state[c].xi_bar = mom;
    }
  }

  trace.termination = termination;
  trace.final_points = total;
  trace.final_error = trace.steps.back().e_total;
  return trace;
}

RuleIndexList equal_order_indices(const Partition& p, int order) {
  RuleIndexList idx = RuleIndexList::zeros(p);
  const int n_dir = std::max(1, (order + 2) / 2);  // ceil((order+1)/2)
  for (const SubCell& c : p.cells()) {
    idx.indices[c.id] =
        c.is_box ? n_dir - 1 : catalog_index_for_degree(c.simplex.kind, order);
  }
  return idx;
}

std::vector<SweepRow> equal_order_sweep(const Partition& p,
                                        const PolynomialSpace& space,
                                        BoxRuleKind box_kind, int max_order,
                                        int threads) {
  const MomentCache cache = compute_moment_cache(p, space, -1, threads);
  const Eigen::MatrixXd G = gramian(p, space, -1, threads);
  std::vector<SweepRow> rows;
  for (int q = 0; q <= max_order; ++q) {
    const RuleIndexList idx = equal_order_indices(p, q);
    const ErrorReport rep = evaluate_indices(p, space, idx, box_kind, cache, G);
    const QuadratureScheme s = assemble_scheme(p, idx, box_kind);
    rows.push_back({q, s.total(), rep.e_total});
  }
  return rows;
}

std::vector<int> rule_of_thumb_degrees(int max_depth, ThumbRule strategy,
                                       int k_max) {
  if (k_max < 0) throw InvalidArgument("k_max must be >= 0");
  std::vector<int> deg(max_depth + 1, 0);  // levels 1..max_depth+1
  if (strategy == ThumbRule::A_MinimalLowering) {
    for (int l = 1; l <= max_depth + 1; ++l)
      deg[l - 1] = std::max(0, k_max - 2 * (l - 1));
  } else {
    // degree k_max at level 1, zero from level max_depth on, linear in
    // between rounded down to even degrees
    for (int l = 1; l <= max_depth + 1; ++l) {
      if (l >= max_depth) {
        deg[l - 1] = 0;
      } else if (max_depth == 1) {
        deg[l - 1] = 0;
      } else {
        const double v = k_max * static_cast<double>(max_depth - l) /
                         static_cast<double>(max_depth - 1);
        deg[l - 1] = 2 * static_cast<int>(std::floor(v / 2.0));
      }
    }
    if (max_depth > 1) deg[0] = k_max;
  }
  return deg;
}

RuleIndexList rule_of_thumb(const Partition& p, ThumbRule strategy, int k_max) {
  const std::vector<int> deg =
      rule_of_thumb_degrees(p.max_depth, strategy, k_max);
  RuleIndexList idx = RuleIndexList::zeros(p);
  for (const SubCell& c : p.cells()) {
    const int level = std::max(1, c.level);  // level-0 cell of an untrimmed element
    const int q = deg[std::min<int>(level, p.max_depth + 1) - 1];
    idx.indices[c.id] = c.is_box
                            ? std::max(1, (q + 2) / 2) - 1
                            : catalog_index_for_degree(c.simplex.kind, q);
  }
  return idx;
}

}  // namespace cutcell
