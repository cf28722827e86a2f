#pragma once

#include <cstdint>
#include <vector>

#include "cutcell/octree.hpp"

namespace cutcell {

// Inputs of the sub-cell and point count predictions. q_bar holds the
// average points per sub-cell for levels 1..rho_max followed by the
// tessellation level rho_max+1.
struct ScalingInputs {
  int dim = 2;
  int rho_max = 3;
  double eta_s = 1.0;   // surface fraction S / (s_bar h^(d-1))
  double eta = 0.5;     // volume fraction
  std::vector<double> q_bar;
  double t_bar = 4.0;   // tessellated cells per cut leaf
  double q_line = 1.0;  // points per direction for the equal-order form
};

struct ScalingPrediction {
  int l_hat = 1;
  std::vector<double> m0;      // intersected cells, levels 0..rho_max
  std::vector<double> m_plus;  // preserved cells, levels 1..rho_max
  std::vector<double> n;       // points per level, levels 1..rho_max+1
  double n_total = 0.0;
};

// piecewise count predictions per level; n_total is the exact sum of the
// per-level rows
ScalingPrediction predict_counts(const ScalingInputs& in);

// equal-order closed form N ~ eta_s (q_tes t_bar + q_line^d/(2-2^(2-d))) 2^(rho(d-1))
double asymptotic_points(const ScalingInputs& in);

struct SurfaceFractions {
  double surface = 0.0;  // summed boundary-facet measure S
  double eta = 0.0;      // interior volume fraction
  double eta_s = 0.0;    // S / (s_bar h^(d-1))
};

SurfaceFractions measure_surface_fraction(const Partition& p, double s_bar);
SurfaceFractions measure_surface_fraction(const Partition& p);

// Monte-Carlo average measure of the intersection of a random plane with
// the unit cube in d dimensions; the calibration constant behind eta_s.
double fit_mean_cut_surface(int dim, int samples, std::uint64_t seed);

// Frozen calibration values (fit_mean_cut_surface with samples = 2000000,
// seed = 20240817).
inline constexpr double kMeanCutSurface2D = 0.735105;
inline constexpr double kMeanCutSurface3D = 0.764567;
inline constexpr std::uint64_t kMeanCutSurfaceSeed = 20240817;

}  // namespace cutcell
