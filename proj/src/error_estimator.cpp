#include "cutcell/error_estimator.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

namespace cutcell {

namespace {

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  const char* env = std::getenv("CUTQUAD_THREADS");
  if (env) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// run fn(chunk_index, cell_begin, cell_end) over fixed-size chunks; chunk
// results must be combined in chunk order by the caller for determinism
template <typename Fn>
void for_chunks(int m, int threads, int chunk, Fn&& fn) {
  const int nchunks = (m + chunk - 1) / chunk;
  if (threads <= 1 || nchunks <= 1) {
    for (int c = 0; c < nchunks; ++c)
      fn(c, c * chunk, std::min(m, (c + 1) * chunk));
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      const int c = next.fetch_add(1);
      if (c >= nchunks) return;
      fn(c, c * chunk, std::min(m, (c + 1) * chunk));
    }
  };
  std::vector<std::thread> pool;
  const int nt = std::min(threads, nchunks);
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

// 1D mass and stiffness moments of the basis over [a, a+s] in physical
// coordinates; exact Gauss with k+1 points
void gramian_1d(const PolynomialSpace& space, int axis, double a, double s,
                Eigen::MatrixXd& mass, Eigen::MatrixXd& stiff) {
  const int m = space.k + 1;
  mass.setZero(m, m);
  stiff.setZero(m, m);
  const Rule1D g = gauss_1d(m);
  std::vector<double> val(m), der(m);
  for (int q = 0; q < m; ++q) {
    const double x = a + s * g.x[q];
    const double w = s * g.w[q];
    const double t = (x - space.element_origin[axis]) / space.element_size;
    if (space.basis == BasisKind::ShiftedLegendre) {
      const double u = 2.0 * t - 1.0;
      double pv[32], dv[32];
      pv[0] = 1.0;
      dv[0] = 0.0;
      if (space.k >= 1) {
        pv[1] = u;
        dv[1] = 1.0;
      }
      for (int n = 2; n <= space.k; ++n) {
        pv[n] = ((2.0 * n - 1.0) * u * pv[n - 1] - (n - 1.0) * pv[n - 2]) / n;
        dv[n] = dv[n - 2] + (2.0 * n - 1.0) * pv[n - 1];
      }
      for (int n = 0; n < m; ++n) {
        const double sc = std::sqrt(2.0 * n + 1.0);
        val[n] = sc * pv[n];
        der[n] = sc * dv[n] * 2.0 / space.element_size;
      }
    } else {
      double pw = 1.0;
      for (int n = 0; n < m; ++n) {
        val[n] = pw;
        der[n] = n == 0 ? 0.0
                        : n * val[n - 1] / space.element_size;
        pw *= t;
      }
    }
    for (int i = 0; i < m; ++i)
      for (int j = 0; j <= i; ++j) {
        mass(i, j) += w * val[i] * val[j];
        stiff(i, j) += w * der[i] * der[j];
      }
  }
  mass = mass.selfadjointView<Eigen::Lower>();
  stiff = stiff.selfadjointView<Eigen::Lower>();
}

void add_box_gramian(const PolynomialSpace& space, const BoxCell& box,
                     Eigen::MatrixXd& G) {
  const int d = space.dim;
  const int m = space.k + 1;
  Eigen::MatrixXd mass[3], stiff[3];
  for (int a = 0; a < d; ++a)
    gramian_1d(space, a, box.origin[a], box.size, mass[a], stiff[a]);

  const bool h1 = space.norm == SobolevNorm::H1;
  const int n_p = space.size();
  auto decode = [&](int i, int* idx) {
    for (int a = d - 1; a >= 0; --a) {
      idx[a] = i % m;
      i /= m;
    }
  };
  int ia[3], ja[3];
  for (int i = 0; i < n_p; ++i) {
    decode(i, ia);
    for (int j = 0; j <= i; ++j) {
      decode(j, ja);
      double l2 = 1.0;
      for (int a = 0; a < d; ++a) l2 *= mass[a](ia[a], ja[a]);
      double v = l2;
      if (h1) {
        for (int b = 0; b < d; ++b) {
          double term = stiff[b](ia[b], ja[b]);
          for (int a = 0; a < d; ++a)
            if (a != b) term *= mass[a](ia[a], ja[a]);
          v += term;
        }
      }
      G(i, j) += v;
      if (i != j) G(j, i) += v;
    }
  }
}

void add_simplex_gramian(const PolynomialSpace& space, const SubCell& cell,
                         int oracle_degree, Eigen::MatrixXd& G) {
  const QuadRule r = reference_cell_rule(cell, oracle_degree, space.dim);
  const int n_p = space.size();
  const int npts = r.size();
  const int d = space.dim;
  const bool h1 = space.norm == SobolevNorm::H1;
  Eigen::MatrixXd A(n_p, npts);
  Eigen::MatrixXd B;
  if (h1) B.resize(n_p * d, npts);
  std::vector<double> phi(n_p), grad(n_p * d);
  for (int q = 0; q < npts; ++q) {
    const double sw = std::sqrt(r.weights[q]);
    space.eval_with_grad(r.points[q], phi.data(), h1 ? grad.data() : nullptr);
    for (int i = 0; i < n_p; ++i) A(i, q) = sw * phi[i];
    if (h1)
      for (int i = 0; i < n_p; ++i)
        for (int a = 0; a < d; ++a) B(a * n_p + i, q) = sw * grad[i * d + a];
  }
  G.selfadjointView<Eigen::Lower>().rankUpdate(A, 1.0);
  if (h1)
    for (int a = 0; a < d; ++a)
      G.selfadjointView<Eigen::Lower>().rankUpdate(
          B.middleRows(a * n_p, n_p), 1.0);
}

}  // namespace

int default_oracle_degree(const PolynomialSpace& space) {
  return 2 * space.dim * space.k;
}

MomentCache compute_moment_cache(const Partition& p, const PolynomialSpace& space,
                                 int oracle_degree, int threads) {
  const int deg = oracle_degree < 0 ? default_oracle_degree(space) : oracle_degree;
  const int n_p = space.size();
  const int m = static_cast<int>(p.cells().size());
  MomentCache cache;
  cache.oracle_degree = deg;
  cache.cell_moments.setZero(n_p, m);
  const int nt = resolve_threads(threads);
  for_chunks(m, nt, 4, [&](int, int begin, int end) {
    std::vector<double> phi(n_p);
    for (int c = begin; c < end; ++c) {
      const QuadRule r = reference_cell_rule(p.cells()[c], deg, p.dim);
      Eigen::VectorXd col = Eigen::VectorXd::Zero(n_p);
      for (int q = 0; q < r.size(); ++q) {
        space.eval(r.points[q], phi.data());
        for (int i = 0; i < n_p; ++i) col[i] += r.weights[q] * phi[i];
      }
      cache.cell_moments.col(c) = col;
    }
  });
  return cache;
}

Eigen::VectorXd exact_moments(const Partition& p, const PolynomialSpace& space,
                              int oracle_degree) {
  return compute_moment_cache(p, space, oracle_degree).total();
}

Eigen::MatrixXd gramian(const Partition& p, const PolynomialSpace& space,
                        int oracle_degree, int threads) {
  const int deg = oracle_degree < 0 ? default_oracle_degree(space) : oracle_degree;
  const int n_p = space.size();
  const int m = static_cast<int>(p.cells().size());
  const int nt = resolve_threads(threads);
  const int chunk = 4;
  const int nchunks = (m + chunk - 1) / chunk;
  std::vector<Eigen::MatrixXd> partial(nchunks);
  for_chunks(m, nt, chunk, [&](int ci, int begin, int end) {
    Eigen::MatrixXd Gp = Eigen::MatrixXd::Zero(n_p, n_p);
    for (int c = begin; c < end; ++c) {
      const SubCell& cell = p.cells()[c];
      if (cell.is_box)
        add_box_gramian(space, cell.box, Gp);
      else
        add_simplex_gramian(space, cell, deg, Gp);
    }
    partial[ci] = std::move(Gp);
  });
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n_p, n_p);
  for (const auto& Gp : partial) G += Gp;
  return G.selfadjointView<Eigen::Lower>();
}

Eigen::VectorXd approximate_moments(const QuadratureScheme& scheme,
                                    const PolynomialSpace& space) {
  const int n_p = space.size();
  Eigen::VectorXd xi_bar = Eigen::VectorXd::Zero(n_p);
  std::vector<double> phi(n_p);
  for (size_t q = 0; q < scheme.points.size(); ++q) {
    space.eval(scheme.points[q], phi.data());
    for (int i = 0; i < n_p; ++i) xi_bar[i] += scheme.weights[q] * phi[i];
  }
  return xi_bar;
}

Eigen::LLT<Eigen::MatrixXd> factor_gramian(const Eigen::MatrixXd& G) {
  Eigen::LLT<Eigen::MatrixXd> llt(G);
  if (llt.info() != Eigen::Success) {
    // locate the offending pivot for the diagnostic
    const int n = static_cast<int>(G.rows());
    Eigen::MatrixXd L = G;
    int pivot = n - 1;
    for (int k = 0; k < n; ++k) {
      double diag = L(k, k);
      for (int j = 0; j < k; ++j) diag -= L(k, j) * L(k, j);
      if (!(diag > 0.0)) {
        pivot = k;
        break;
      }
      L(k, k) = std::sqrt(diag);
      for (int i = k + 1; i < n; ++i) {
        double v = L(i, k);
        for (int j = 0; j < k; ++j) v -= L(i, j) * L(k, j);
        L(i, k) = v / L(k, k);
      }
    }
    throw ConditioningError("Gramian factorization failed at pivot " +
                                std::to_string(pivot),
                            pivot);
  }
  return llt;
}

WorstCase worst_case_error(const Eigen::VectorXd& xi,
                           const Eigen::VectorXd& xi_bar,
                           const Eigen::LLT<Eigen::MatrixXd>& llt,
                           double xi_norm) {
  const Eigen::VectorXd delta = xi - xi_bar;
  const Eigen::VectorXd y = llt.solve(delta);
  const double e2 = delta.dot(y);
  WorstCase out;
  out.e_total = e2 > 0.0 ? std::sqrt(e2) : 0.0;
  if (out.e_total > 1e-14 * xi_norm) {
    out.coeffs = y / out.e_total;
    out.defined = true;
  } else {
    out.coeffs = Eigen::VectorXd::Zero(xi.size());
    out.defined = false;
  }
  return out;
}

WorstCase worst_case_error(const Eigen::VectorXd& xi,
                           const Eigen::VectorXd& xi_bar,
                           const Eigen::MatrixXd& G) {
  return worst_case_error(xi, xi_bar, factor_gramian(G), xi.norm());
}

std::vector<double> localized_errors(const Partition& p,
                                     const QuadratureScheme& scheme,
                                     const PolynomialSpace& space,
                                     const Eigen::VectorXd& worst_coeffs,
                                     const MomentCache& cache) {
  const int m = static_cast<int>(p.cells().size());
  const int n_p = space.size();
  std::vector<double> err(m, 0.0);
  if (worst_coeffs.size() == 0) return err;
  std::vector<double> phi(n_p);
  for (int c = 0; c < m; ++c) {
    const double exact = worst_coeffs.dot(cache.cell_moments.col(c));
    double approx = 0.0;
    const auto [begin, end] = scheme.per_cell[c];
    for (int q = begin; q < end; ++q) {
      space.eval(scheme.points[q], phi.data());
      double v = 0.0;
      for (int i = 0; i < n_p; ++i) v += worst_coeffs[i] * phi[i];
      approx += scheme.weights[q] * v;
    }
    err[c] = std::abs(exact - approx);
  }
  return err;
}

std::vector<double> localized_errors(const Partition& p,
                                     const QuadratureScheme& scheme,
                                     const PolynomialSpace& space,
                                     const Eigen::VectorXd& worst_coeffs) {
  return localized_errors(p, scheme, space, worst_coeffs,
                          compute_moment_cache(p, space));
}

Indicators indicators(const std::vector<double>& per_cell_error,
                      const RuleIndexList& idx, const Partition& p) {
  const int m = static_cast<int>(p.cells().size());
  Indicators out;
  out.value.assign(m, 0.0);
  out.depleted.assign(m, false);
  for (int c = 0; c < m; ++c) {
    const SubCell& cell = p.cells()[c];
    const int iota = idx.indices[c];
    const auto top = max_rule_index(cell);
    if (top && iota >= *top) {
      out.depleted[c] = true;
      continue;
    }
    const int dq = rule_point_count(cell, iota + 1, p.dim) -
                   rule_point_count(cell, iota, p.dim);
    out.value[c] = per_cell_error[c] / dq;
  }
  return out;
}

ErrorReport evaluate_indices(const Partition& p, const PolynomialSpace& space,
                             const RuleIndexList& idx, BoxRuleKind box_kind,
                             const MomentCache& cache, const Eigen::MatrixXd& G) {
  ErrorReport rep;
  rep.xi = cache.total();
  rep.gramian = G;
  const QuadratureScheme scheme = assemble_scheme(p, idx, box_kind);
  rep.xi_bar = approximate_moments(scheme, space);
  const WorstCase wc = worst_case_error(rep.xi, rep.xi_bar, G);
  rep.e_total = wc.e_total;
  rep.worst_coeffs = wc.coeffs;
  rep.worst_defined = wc.defined;
  rep.per_cell_error = localized_errors(p, scheme, space, wc.coeffs, cache);
  return rep;
}

}  // namespace cutcell
