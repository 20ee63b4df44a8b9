#pragma once

#include <vector>

#include "setscan/cloud.hpp"
#include "setscan/noise.hpp"
#include "setscan/samplers.hpp"

namespace setscan {

struct DenoiseConfig {
  Backend backend = Backend::BB;
  double lambda = 0.5;  // in (0,1)
  // Backend tuning. epsilon <= 0 selects the experiments' rule 2*maxmin_nn;
  // r <= 0 selects the pilot 0.5 * R_bb.
  double epsilon = 0.0;
  double r = 0.0;
  // Tube half-width; <= 0 estimates it with the matching backend.
  double R_known = 0.0;
};

struct DenoiseResult {
  Backend backend = Backend::BB;
  std::vector<int> selected;  // the lambda-subsample, ascending ids
  std::vector<int> kept;      // selected minus degenerate-direction drops
  PointCloud projections;     // metric projections, rows align with kept
  PointCloud denoised;        // Z_i, rows align with kept
  int dropped = 0;            // ||Y - pi|| < 1e-12 cases
  double R_used = 0.0;
  double tuning_used = 0.0;   // epsilon or r actually used
};

// Selects the points whose distance to the estimated boundary exceeds
// lambda * R, then translates each to distance R from its metric projection:
// Z = pi + R * (Y - pi) / ||Y - pi||. Throws std::runtime_error when the
// selection is empty or R_used <= 0, std::invalid_argument on bad lambda.
DenoiseResult denoise(const PointCloud& cloud, const DenoiseConfig& config);

struct SphereDescriptor {
  std::vector<double> center;
  double radius = 0.0;
};

// Hausdorff distance between finite clouds (exact) or a cloud and an analytic
// descriptor. Distances to a descriptor are exact pointwise; the supremum
// over the descriptor's points is discretized on a fixed dense net.
double hausdorff_distance(const PointCloud& a, const PointCloud& b);
double hausdorff_distance(const PointCloud& a, const SphereDescriptor& s);
double hausdorff_distance(const PointCloud& a, const Curve& polyline);

}  // namespace setscan
