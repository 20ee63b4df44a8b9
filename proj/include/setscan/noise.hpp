#pragma once

#include "setscan/cloud.hpp"

namespace setscan {

// Boundary estimator family shared by the noise estimators and the denoiser:
// BB uses the boundary-ball centers, RCONVEX the empty-sphere set.
enum class Backend { BB, RCONVEX };

struct NoiseEstimate {
  Backend method = Backend::BB;
  double value = 0.0;   // estimated tube half-width, >= 0
  double tuning = 0.0;  // epsilon (BB) or r (RCONVEX) actually used
  int n = 0;
  int d = 0;
};

// c * (log(n) / n)^(1/d).
double epsilon_rule(int n, int d, double c);

// Data-driven default for the epsilon_rule constant: the density lower bound
// is approximated by the uniform density 1/vol, with vol a fixed-seed Monte
// Carlo volume of the offset union at the connectivity radius, and the
// consistency threshold is inflated by 1.5. Deterministic per cloud.
double default_epsilon_c(const PointCloud& cloud);

// max over all points of the distance to the nearest boundary-ball center at
// radius epsilon. Boundary centers count themselves, so a sample that is all
// boundary balls gives 0.
NoiseEstimate estimate_R_bb(const PointCloud& cloud, double epsilon);

// max over all points of the distance to the boundary of the r-convex hull.
// Throws when no empty sphere of radius r exists.
NoiseEstimate estimate_R_rconvex(const PointCloud& cloud, double r);

// 2 * R_bb / diameter: near 0 for lower-dimensional supports, near 1 for a
// ball-like support.
double closeness_index(const PointCloud& cloud, double epsilon);

// True ("the inner set has empty interior") iff |value - R1_known| <= tol.
bool decide_inner_empty(const NoiseEstimate& est, double R1_known, double tol);

}  // namespace setscan
