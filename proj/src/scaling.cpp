#include "cutcell/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace cutcell {

namespace {

int level_hat(double eta_s, int dim) {
  const int l = static_cast<int>(
      std::ceil(std::log2(eta_s) / static_cast<double>(1 - dim)));
  return std::max(1, l);
}

}  // namespace

ScalingPrediction predict_counts(const ScalingInputs& in) {
  if (in.rho_max < 1) throw InvalidArgument("rho_max must be >= 1");
  if (!(in.eta_s > 0.0)) throw InvalidArgument("eta_s must be positive");
  if (!(in.eta > 0.0 && in.eta < 1.0))
    throw InvalidArgument("eta must lie in (0,1)");
  if (static_cast<int>(in.q_bar.size()) != in.rho_max + 1)
    throw InvalidArgument("q_bar must cover levels 1..rho_max+1");

  const int d = in.dim;
  const int rho = in.rho_max;
  ScalingPrediction out;
  out.l_hat = level_hat(in.eta_s, d);

  out.m0.resize(rho + 1);
  for (int l = 0; l <= rho; ++l)
    out.m0[l] = l < out.l_hat ? 1.0 : in.eta_s * std::exp2(l * (d - 1));

  out.m_plus.resize(rho);
  for (int l = 1; l <= rho; ++l) {
    if (l <= out.l_hat)
      out.m_plus[l - 1] = in.eta > 0.5 ? std::exp2(d) - 1.0 : 0.0;
    else
      out.m_plus[l - 1] = in.eta_s * std::exp2(l * (d - 1) - 1);
  }

  out.n.resize(rho + 1);
  for (int l = 1; l <= rho; ++l)
    out.n[l - 1] = in.q_bar[l - 1] * out.m_plus[l - 1];
  out.n[rho] = in.q_bar[rho] * in.t_bar * in.eta_s * std::exp2(rho * (d - 1));

  out.n_total = 0.0;
  for (double v : out.n) out.n_total += v;
  return out;
}

double asymptotic_points(const ScalingInputs& in) {
  const int d = in.dim;
  const double q_tes = in.q_bar.empty() ? 1.0 : in.q_bar.back();
  return in.eta_s *
         (q_tes * in.t_bar +
          std::pow(in.q_line, d) / (2.0 - std::exp2(2 - d))) *
         std::exp2(in.rho_max * (d - 1));
}

SurfaceFractions measure_surface_fraction(const Partition& p, double s_bar) {
  SurfaceFractions out;
  for (const Facet& f : p.boundary_facets) out.surface += f.measure(p.dim);
  out.eta = partition_volume(p) / std::pow(p.element_size, p.dim);
  out.eta_s = out.surface / (s_bar * std::pow(p.element_size, p.dim - 1));
  return out;
}

SurfaceFractions measure_surface_fraction(const Partition& p) {
  return measure_surface_fraction(
      p, p.dim == 2 ? kMeanCutSurface2D : kMeanCutSurface3D);
}

double fit_mean_cut_surface(int dim, int samples, std::uint64_t seed) {
  if (dim != 2 && dim != 3) throw InvalidArgument("dim must be 2 or 3");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double acc = 0.0;

  for (int s = 0; s < samples; ++s) {
    Point n{0.0, 0.0, 0.0};
    if (dim == 2) {
      const double theta = unit(rng) * M_PI;
      n = {std::cos(theta), std::sin(theta), 0.0};
    } else {
      // uniform direction on the sphere
      const double z = 2.0 * unit(rng) - 1.0;
      const double phi = 2.0 * M_PI * unit(rng);
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      n = {r * std::cos(phi), r * std::sin(phi), z};
    }

    double lo = 0.0, hi = 0.0;
    const int nc = 1 << dim;
    for (int c = 0; c < nc; ++c) {
      Point v{static_cast<double>((c >> (dim - 1)) & 1),
              static_cast<double>((c >> (dim - 2)) & 1),
              dim == 3 ? static_cast<double>(c & 1) : 0.0};
      const double val = dot(n, v);
      if (c == 0) {
        lo = hi = val;
      } else {
        lo = std::min(lo, val);
        hi = std::max(hi, val);
      }
    }
    const double offset = lo + unit(rng) * (hi - lo);

    // intersection points of {dot(n,x) = offset} with the cube edges
    std::vector<Point> pts;
    for (int c = 0; c < nc; ++c) {
      for (int bit = 0; bit < dim; ++bit) {
        const int c2 = c | (1 << bit);
        if (c2 == c) continue;
        Point a{static_cast<double>((c >> (dim - 1)) & 1),
                static_cast<double>(dim >= 2 ? (c >> (dim - 2)) & 1 : 0),
                dim == 3 ? static_cast<double>(c & 1) : 0.0};
        Point b{static_cast<double>((c2 >> (dim - 1)) & 1),
                static_cast<double>(dim >= 2 ? (c2 >> (dim - 2)) & 1 : 0),
                dim == 3 ? static_cast<double>(c2 & 1) : 0.0};
        const double va = dot(n, a) - offset, vb = dot(n, b) - offset;
        if ((va > 0.0) == (vb > 0.0)) continue;
        const double t = va / (va - vb);
        pts.push_back(a + t * (b - a));
      }
    }
    if (pts.size() < 2) continue;

    if (dim == 2) {
      double best = 0.0;
      for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
          best = std::max(best, norm(pts[j] - pts[i]));
      acc += best;
    } else {
      // polygon area: order vertices around the centroid in the cut plane
      Point c0{0.0, 0.0, 0.0};
      for (const Point& q : pts) c0 = c0 + q;
      c0 = (1.0 / pts.size()) * c0;
      Point u = pts[0] - c0;
      u = (1.0 / std::max(norm(u), 1e-300)) * u;
      Point v = cross(n, u);
      std::vector<std::pair<double, Point>> ordered;
      for (const Point& q : pts)
        ordered.push_back({std::atan2(dot(q - c0, v), dot(q - c0, u)), q});
      std::sort(ordered.begin(), ordered.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      double area = 0.0;
      for (size_t i = 0; i < ordered.size(); ++i) {
        const Point& a = ordered[i].second;
        const Point& b = ordered[(i + 1) % ordered.size()].second;
        area += 0.5 * dot(cross(a - c0, b - c0), n);
      }
      acc += std::abs(area);
    }
  }
  return acc / samples;
}

}  // namespace cutcell
