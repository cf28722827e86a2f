#include "cutcell/quadrature.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace cutcell {

namespace {

// Golub-Welsch on the symmetric Jacobi matrix of the weight's orthogonal
// polynomials; nodes mapped from [-1,1] to [0,1].
Rule1D golub_welsch(int n, double alpha, double beta, double mu0) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double kk = k;
    const double denom = (2.0 * kk + alpha + beta) * (2.0 * kk + alpha + beta + 2.0);
    double a = 0.0;
    if (denom != 0.0) a = (beta * beta - alpha * alpha) / denom;
    J(k, k) = a;
    if (k + 1 < n) {
      const double k1 = kk + 1.0;
      const double num = 4.0 * k1 * (k1 + alpha) * (k1 + beta) * (k1 + alpha + beta);
      const double den = std::pow(2.0 * k1 + alpha + beta, 2) *
                         (2.0 * k1 + alpha + beta + 1.0) *
                         (2.0 * k1 + alpha + beta - 1.0);
      const double b = std::sqrt(num / den);
      J(k, k + 1) = b;
      J(k + 1, k) = b;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  Rule1D r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    r.x[i] = 0.5 * (es.eigenvalues()[i] + 1.0);
    const double v0 = es.eigenvectors()(0, i);
    r.w[i] = mu0 * v0 * v0;
  }
  return r;
}

std::mutex cache_mutex;

const Rule1D& cached_gauss(int n) {
  static std::map<int, Rule1D> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    // weight 1 on [0,1]: mu0 = 2 on [-1,1], halved by the affine map
    Rule1D r = golub_welsch(n, 0.0, 0.0, 2.0);
    for (double& w : r.w) w *= 0.5;
    it = cache.emplace(n, std::move(r)).first;
  }
  return it->second;
}

const Rule1D& cached_jacobi(int n, int alpha) {
  static std::map<std::pair<int, int>, Rule1D> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = cache.find({n, alpha});
  if (it == cache.end()) {
    // weight (1-x)^alpha on [-1,1]: mu0 = 2^(alpha+1)/(alpha+1); mapping to
    // [0,1] rescales the weight by 2^-(alpha+1)
    Rule1D r = golub_welsch(n, static_cast<double>(alpha), 0.0,
                            std::pow(2.0, alpha + 1) / (alpha + 1.0));
    for (double& w : r.w) w /= std::pow(2.0, alpha + 1);
    it = cache.emplace(std::make_pair(n, alpha), std::move(r)).first;
  }
  return it->second;
}

// ---- simplex rule tables -------------------------------------------------
//
// Barycentric orbit tables, weights normalized to sum to one. Entries are
// chosen so point counts strictly increase along each catalog (nested
// exactness with positive point cost, as the refinement indicators require):
//   triangle:    degree 1,2,3,4,5,6  ->  1,3,4,6,7,12 points
//   tetrahedron: degree 1,3,5,6,7    ->  1,8,14,24,31 points
//   pyramid:     degree 1,3,5,7      ->  1,8,27,64 points (conical product)
// Triangle degree 3 and tetrahedron degree 3 are conical-product rules; the
// tetrahedron ladder mirrors the odd exactness steps of the tensor Gauss
// ladder on boxes; degrees 4-7 are the classic symmetric tables (the
// degree-7 31-point rule carries one negative-weight orbit, as published).

struct Orbit {
  enum Kind { Centroid, S21, S111, S31, S22, S211 } kind;
  double w;
  double a = 0.0, b = 0.0;
};

void expand_orbit(const Orbit& o, int dim, std::vector<std::vector<double>>& bary,
                  std::vector<double>& wts) {
  auto push = [&](std::initializer_list<double> l) {
    bary.emplace_back(l);
    wts.push_back(o.w);
  };
  switch (o.kind) {
    case Orbit::Centroid:
      if (dim == 2)
        push({1.0 / 3, 1.0 / 3, 1.0 / 3});
      else
        push({0.25, 0.25, 0.25, 0.25});
      break;
    case Orbit::S21: {
      const double a = o.a, c = 1.0 - 2.0 * a;
      push({a, a, c});
      push({a, c, a});
      push({c, a, a});
      break;
    }
    case Orbit::S111: {
      const double a = o.a, b = o.b, c = 1.0 - a - b;
      push({a, b, c});
      push({a, c, b});
      push({b, a, c});
      push({b, c, a});
      push({c, a, b});
      push({c, b, a});
      break;
    }
    case Orbit::S31: {
      const double a = o.a, c = 1.0 - 3.0 * a;
      push({a, a, a, c});
      push({a, a, c, a});
      push({a, c, a, a});
      push({c, a, a, a});
      break;
    }
    case Orbit::S22: {
      const double a = o.a, c = 0.5 - a;
      push({a, a, c, c});
      push({a, c, a, c});
      push({a, c, c, a});
      push({c, a, a, c});
      push({c, a, c, a});
      push({c, c, a, a});
      break;
    }
    case Orbit::S211: {
      const double a = o.a, b = o.b, c = 1.0 - 2.0 * a - b;
      const double v[4] = {a, a, b, c};
      // all distinct permutations of (a,a,b,c)
      int idx[4] = {0, 1, 2, 3};
      std::vector<std::vector<double>> seen;
      do {
        std::vector<double> p = {v[idx[0]], v[idx[1]], v[idx[2]], v[idx[3]]};
        bool dup = false;
        for (const auto& q : seen) {
          if (std::abs(q[0] - p[0]) < 1e-15 && std::abs(q[1] - p[1]) < 1e-15 &&
              std::abs(q[2] - p[2]) < 1e-15) {
            dup = true;
            break;
          }
        }
        if (!dup) {
          seen.push_back(p);
          bary.push_back(p);
          wts.push_back(o.w);
        }
      } while (std::next_permutation(idx, idx + 4));
      break;
    }
  }
}

struct SimplexTable {
  int degree;
  std::vector<std::vector<double>> bary;
  std::vector<double> weights;  // sum to 1
};

// conical product: Gauss-Jacobi in the collapsed directions gives exactness
// for total degree 2n-1 on the simplex
SimplexTable conical_simplex(int n, int dim) {
  SimplexTable t;
  t.degree = 2 * n - 1;
  const Rule1D& g0 = cached_jacobi(n, 0);
  const Rule1D& g1 = cached_jacobi(n, 1);
  const Rule1D& g2 = cached_jacobi(n, 2);
  if (dim == 2) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double x = g1.x[i];
        const double y = g0.x[j] * (1.0 - x);
        t.bary.push_back({1.0 - x - y, x, y});  // (lambda0, x, y)
        t.weights.push_back(g1.w[i] * g0.w[j] * 2.0);
      }
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          const double x = g2.x[i];
          const double y = g1.x[j] * (1.0 - x);
          const double z = g0.x[k] * (1.0 - x - y);
          t.bary.push_back({1.0 - x - y - z, x, y, z});
          t.weights.push_back(g2.w[i] * g1.w[j] * g0.w[k] * 6.0);
        }
  }
  return t;
}

SimplexTable orbit_table(int degree, std::initializer_list<Orbit> orbits, int dim) {
  SimplexTable t;
  t.degree = degree;
  for (const Orbit& o : orbits) expand_orbit(o, dim, t.bary, t.weights);
  return t;
}

const std::vector<SimplexTable>& triangle_catalog() {
  static const std::vector<SimplexTable> cat = [] {
    std::vector<SimplexTable> c;
    c.push_back(orbit_table(1, {{Orbit::Centroid, 1.0}}, 2));
    c.push_back(orbit_table(2, {{Orbit::S21, 1.0 / 3, 1.0 / 6}}, 2));
    c.push_back(conical_simplex(2, 2));  // degree 3, 4 points
    c.push_back(orbit_table(4,
                            {{Orbit::S21, 0.223381589678011465695, 0.4459484909159648863183},
                             {Orbit::S21, 0.1099517436553218676383, 0.09157621350977074345957}},
                            2));
    c.push_back(orbit_table(5,
                            {{Orbit::Centroid, 0.225},
                             {Orbit::S21, 0.1323941527885061807376, 0.4701420641051150897704},
                             {Orbit::S21, 0.1259391805448271525957, 0.101286507323456338801}},
                            2));
    c.push_back(orbit_table(6,
                            {{Orbit::S21, 0.1167862757263793660253, 0.2492867451709104212916},
                             {Orbit::S21, 0.05084490637020681692094, 0.06308901449150222834033},
                             {Orbit::S111, 0.08285107561837357519355, 0.3103524510337844054166,
                              0.6365024991213986472301}},
                            2));
    return c;
  }();
  return cat;
}

const std::vector<SimplexTable>& tetrahedron_catalog() {
  static const std::vector<SimplexTable> cat = [] {
    std::vector<SimplexTable> c;
    c.push_back(orbit_table(1, {{Orbit::Centroid, 1.0}}, 3));
    c.push_back(conical_simplex(2, 3));  // degree 3, 8 points
    c.push_back(orbit_table(5,
                            {{Orbit::S31, 0.1126879257180158507992, 0.3108859192633006097973},
                             {Orbit::S31, 0.07349304311636194954371, 0.09273525031089122640232},
                             {Orbit::S22, 0.04254602077708146643807, 0.04550370412564964949188}},
                            3));
    c.push_back(orbit_table(6,
                            {{Orbit::S31, 0.03992275025816749209969, 0.2146028712591520292888},
                             {Orbit::S31, 0.01007721105532064294801, 0.04067395853461135311558},
                             {Orbit::S31, 0.05535718154365472209515, 0.322337890142275510344},
                             {Orbit::S211, 0.04821428571428571428571, 0.06366100187501752529924,
                              0.2696723314583158080341}},
                            3));
    c.push_back(orbit_table(7,
                            {{Orbit::Centroid, 0.1095853407966529217472},
                             {Orbit::S22, 0.00582010582010582010582, 0.5},
                             {Orbit::S31, 0.06359964914648212149848, 0.07821319233031806437399},
                             {Orbit::S31, -0.3751064406859911101488, 0.1218432166639051746522},
                             {Orbit::S31, 0.02934855157844099630877, 0.3325391644464206241529},
                             {Orbit::S211, 0.1653439153439153439153, 0.1, 0.6}},
                            3));
    return c;
  }();
  return cat;
}

constexpr int kPyramidCatalogSize = 4;  // n = 1..4 per direction, degree 2n-1

}  // namespace

Rule1D gauss_1d(int n) {
  if (n < 1) throw InvalidArgument("gauss_1d requires n >= 1");
  return cached_gauss(n);
}

Rule1D gauss_jacobi_1d(int n, int alpha) {
  if (n < 1) throw InvalidArgument("gauss_jacobi_1d requires n >= 1");
  return cached_jacobi(n, alpha);
}

QuadRule box_rule(BoxRuleKind kind, int n_per_dir, const BoxCell& cell, int dim) {
  if (n_per_dir < 1) throw InvalidArgument("box_rule requires n_per_dir >= 1");
  Rule1D r1;
  if (kind == BoxRuleKind::Gauss) {
    r1 = cached_gauss(n_per_dir);
  } else {
    r1.x.resize(n_per_dir);
    r1.w.assign(n_per_dir, 1.0 / n_per_dir);
    for (int i = 0; i < n_per_dir; ++i) r1.x[i] = (i + 0.5) / n_per_dir;
  }

  QuadRule q;
  const int n = n_per_dir;
  const int total = dim == 2 ? n * n : n * n * n;
  q.points.reserve(total);
  q.weights.reserve(total);
  const double scale = std::pow(cell.size, dim);
  if (dim == 2) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        q.points.push_back({cell.origin[0] + cell.size * r1.x[i],
                            cell.origin[1] + cell.size * r1.x[j], 0.0});
        q.weights.push_back(scale * r1.w[i] * r1.w[j]);
      }
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          q.points.push_back({cell.origin[0] + cell.size * r1.x[i],
                              cell.origin[1] + cell.size * r1.x[j],
                              cell.origin[2] + cell.size * r1.x[k]});
          q.weights.push_back(scale * r1.w[i] * r1.w[j] * r1.w[k]);
        }
  }
  return q;
}

int catalog_entries(SimplexKind kind) {
  switch (kind) {
    case SimplexKind::Triangle:
      return static_cast<int>(triangle_catalog().size());
    case SimplexKind::Tetrahedron:
      return static_cast<int>(tetrahedron_catalog().size());
    case SimplexKind::Pyramid:
      return kPyramidCatalogSize;
  }
  return 0;
}

int catalog_degree(SimplexKind kind, int index) {
  if (index < 0 || index >= catalog_entries(kind))
    throw InvalidArgument("catalog index out of range");
  switch (kind) {
    case SimplexKind::Triangle:
      return triangle_catalog()[index].degree;
    case SimplexKind::Tetrahedron:
      return tetrahedron_catalog()[index].degree;
    case SimplexKind::Pyramid:
      return 2 * (index + 1) - 1;
  }
  return 0;
}

int catalog_points(SimplexKind kind, int index) {
  if (index < 0 || index >= catalog_entries(kind))
    throw InvalidArgument("catalog index out of range");
  switch (kind) {
    case SimplexKind::Triangle:
      return static_cast<int>(triangle_catalog()[index].bary.size());
    case SimplexKind::Tetrahedron:
      return static_cast<int>(tetrahedron_catalog()[index].bary.size());
    case SimplexKind::Pyramid: {
      const int n = index + 1;
      return n * n * n;
    }
  }
  return 0;
}

int catalog_index_for_degree(SimplexKind kind, int degree) {
  const int n = catalog_entries(kind);
  for (int i = 0; i < n; ++i)
    if (catalog_degree(kind, i) >= degree) return i;
  return n - 1;
}

namespace {

QuadRule map_to_triangle(const SimplexTable& t, const SimplexCell& cell) {
  QuadRule q;
  const Point& p0 = cell.vertices[0];
  const Point e1 = cell.vertices[1] - p0;
  const Point e2 = cell.vertices[2] - p0;
  const double vol = cell.volume(2);
  for (size_t i = 0; i < t.bary.size(); ++i) {
    const double x = t.bary[i][1], y = t.bary[i][2];
    q.points.push_back(p0 + x * e1 + y * e2);
    q.weights.push_back(t.weights[i] * vol);
  }
  return q;
}

QuadRule map_to_tetrahedron(const SimplexTable& t, const SimplexCell& cell) {
  QuadRule q;
  const Point& p0 = cell.vertices[0];
  const Point e1 = cell.vertices[1] - p0;
  const Point e2 = cell.vertices[2] - p0;
  const Point e3 = cell.vertices[3] - p0;
  const double vol = cell.volume(3);
  for (size_t i = 0; i < t.bary.size(); ++i) {
    const double x = t.bary[i][1], y = t.bary[i][2], z = t.bary[i][3];
    q.points.push_back(p0 + x * e1 + y * e2 + z * e3);
    q.weights.push_back(t.weights[i] * vol);
  }
  return q;
}

// conical product on the pyramid: tensor Gauss over the base, Gauss-Jacobi
// with weight (1-w)^2 toward the apex
QuadRule pyramid_conical(int n, const SimplexCell& cell) {
  const Rule1D& g = cached_gauss(n);
  const Rule1D& j2 = cached_jacobi(n, 2);
  const Point& b0 = cell.vertices[0];
  const Point e1 = cell.vertices[1] - b0;
  const Point e2 = cell.vertices[3] - b0;
  const Point& apex = cell.vertices[4];
  const double v0 = std::abs(dot(cross(e1, e2), apex - b0));
  QuadRule q;
  for (int i = 0; i < n; ++i)
    for (int jj = 0; jj < n; ++jj)
      for (int k = 0; k < n; ++k) {
        const double u = g.x[i], v = g.x[jj], w = j2.x[k];
        const Point base = b0 + u * e1 + v * e2;
        q.points.push_back((1.0 - w) * base + w * apex);
        q.weights.push_back(g.w[i] * g.w[jj] * j2.w[k] * v0);
      }
  return q;
}

}  // namespace

QuadRule simplex_rule(SimplexKind kind, int index, const SimplexCell& cell) {
  if (index < 0 || index >= catalog_entries(kind))
    throw std::out_of_range("quadrature sequence depleted");
  switch (kind) {
    case SimplexKind::Triangle:
      return map_to_triangle(triangle_catalog()[index], cell);
    case SimplexKind::Tetrahedron:
      return map_to_tetrahedron(tetrahedron_catalog()[index], cell);
    case SimplexKind::Pyramid:
      return pyramid_conical(index + 1, cell);
  }
  return {};
}

int rule_point_count(const SubCell& cell, int index, int dim) {
  if (cell.is_box) {
    const int n = index + 1;
    return dim == 2 ? n * n : n * n * n;
  }
  return catalog_points(cell.simplex.kind, index);
}

std::optional<int> max_rule_index(const SubCell& cell) {
  if (cell.is_box) return std::nullopt;
  return catalog_entries(cell.simplex.kind) - 1;
}

QuadRule cell_rule(const SubCell& cell, int index, BoxRuleKind box_kind, int dim) {
  if (cell.is_box) return box_rule(box_kind, index + 1, cell.box, dim);
  return simplex_rule(cell.simplex.kind, index, cell.simplex);
}

QuadratureScheme assemble_scheme(const Partition& p, const RuleIndexList& idx,
                                 BoxRuleKind box_kind) {
  if (idx.indices.size() != p.cells().size())
    throw InvalidArgument("rule index list does not cover the partition");
  QuadratureScheme s;
  s.per_cell.resize(p.cells().size());
  for (const SubCell& c : p.cells()) {
    const int begin = static_cast<int>(s.points.size());
    QuadRule r = cell_rule(c, idx.indices[c.id], box_kind, p.dim);
    for (int i = 0; i < r.size(); ++i) {
      s.points.push_back(r.points[i]);
      s.weights.push_back(r.weights[i]);
    }
    s.per_cell[c.id] = {begin, static_cast<int>(s.points.size())};
  }
  return s;
}

QuadRule reference_cell_rule(const SubCell& cell, int target_degree, int dim) {
  if (cell.is_box) {
    const int n = (target_degree + 2) / 2;  // ceil((q+1)/2)
    return box_rule(BoxRuleKind::Gauss, std::max(1, n), cell.box, dim);
  }
  // collapsed tensor Gauss; the collapse Jacobian raises the degree by at
  // most d-1, hence the ceil((q+d)/2)+1 point count per direction
  const int n = std::max(1, (target_degree + dim + 1) / 2 + 1);
  const SimplexCell& sc = cell.simplex;
  const Rule1D& g = cached_gauss(n);
  QuadRule q;
  if (sc.kind == SimplexKind::Triangle) {
    const Point& p0 = sc.vertices[0];
    const Point e1 = sc.vertices[1] - p0;
    const Point e2 = sc.vertices[2] - p0;
    const double vol2 = 2.0 * sc.volume(2);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double x = g.x[i];
        const double y = g.x[j] * (1.0 - x);
        q.points.push_back(p0 + x * e1 + y * e2);
        q.weights.push_back(g.w[i] * g.w[j] * (1.0 - x) * vol2);
      }
  } else if (sc.kind == SimplexKind::Tetrahedron) {
    const Point& p0 = sc.vertices[0];
    const Point e1 = sc.vertices[1] - p0;
    const Point e2 = sc.vertices[2] - p0;
    const Point e3 = sc.vertices[3] - p0;
    const double vol6 = 6.0 * sc.volume(3);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          const double x = g.x[i];
          const double y = g.x[j] * (1.0 - x);
          const double z = g.x[k] * (1.0 - x - y);
          q.points.push_back(p0 + x * e1 + y * e2 + z * e3);
          q.weights.push_back(g.w[i] * g.w[j] * g.w[k] * (1.0 - x) *
                              (1.0 - x - y) * vol6);
        }
  } else {
    // pyramid: tensor Gauss with the (1-w)^2 apex Jacobian absorbed into
    // the weights
    const Point& b0 = sc.vertices[0];
    const Point e1 = sc.vertices[1] - b0;
    const Point e2 = sc.vertices[3] - b0;
    const Point& apex = sc.vertices[4];
    const double v0 = std::abs(dot(cross(e1, e2), apex - b0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          const double u = g.x[i], v = g.x[j], w = g.x[k];
          const Point base = b0 + u * e1 + v * e2;
          q.points.push_back((1.0 - w) * base + w * apex);
          q.weights.push_back(g.w[i] * g.w[j] * g.w[k] * (1.0 - w) * (1.0 - w) * v0);
        }
  }
  return q;
}

QuadratureScheme reference_scheme(const Partition& p, int target_degree) {
  if (target_degree < 0) throw InvalidArgument("target_degree must be >= 0");
  QuadratureScheme s;
  s.per_cell.resize(p.cells().size());
  for (const SubCell& c : p.cells()) {
    const int begin = static_cast<int>(s.points.size());
    QuadRule r = reference_cell_rule(c, target_degree, p.dim);
    for (int i = 0; i < r.size(); ++i) {
      s.points.push_back(r.points[i]);
      s.weights.push_back(r.weights[i]);
    }
    s.per_cell[c.id] = {begin, static_cast<int>(s.points.size())};
  }
  return s;
}

}  // namespace cutcell
