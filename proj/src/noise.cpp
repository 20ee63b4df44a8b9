#include "setscan/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "setscan/minkowski.hpp"
#include "setscan/offset.hpp"
#include "setscan/rconvex.hpp"
#include "setscan/spatial_index.hpp"

namespace setscan {

double epsilon_rule(int n, int d, double c) {
  if (n < 2 || d < 1 || !(c > 0.0))
    throw std::invalid_argument("epsilon_rule: need n >= 2, d >= 1, c > 0");
  return c * std::pow(std::log(static_cast<double>(n)) / n, 1.0 / d);
}

double default_epsilon_c(const PointCloud& cloud) {
  const int d = cloud.dim();
  const double pilot = maxmin_nn(cloud);
  const Region region = Region::bounding_box(cloud, pilot);
  const McResult mc =
      mc_union_volume(cloud, pilot, region, 20000, derive_seed(0xca11b7a7edull, {}));
  const double vol = std::max(mc.volume, 1e-300);
  return 1.5 * std::pow(6.0 * vol / unit_ball_volume(d), 1.0 / d);
}

NoiseEstimate estimate_R_bb(const PointCloud& cloud, double epsilon) {
  const BoundaryBallReport rep = boundary_balls(cloud, epsilon);
  const int n = cloud.size(), d = cloud.dim();
  std::vector<double> centers;
  for (int i = 0; i < n; ++i)
    if (rep.is_boundary[i]) centers.insert(centers.end(), cloud[i], cloud[i] + d);
  const int m = static_cast<int>(centers.size()) / d;
  const SpatialIndex index(centers.data(), m, d);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) worst = std::max(worst, index.nearest(cloud[i]).d2);
  return {Backend::BB, std::sqrt(worst), epsilon, n, d};
}

NoiseEstimate estimate_R_rconvex(const PointCloud& cloud, double r) {
  const EmptySphereSet z = empty_sphere_centers(cloud, r);
  double worst = 0.0;
  for (int i = 0; i < cloud.size(); ++i)
    worst = std::max(worst, dist_to_rhull_boundary(cloud[i], z));
  return {Backend::RCONVEX, std::max(worst, 0.0), r, cloud.size(), cloud.dim()};
}

double closeness_index(const PointCloud& cloud, double epsilon) {
  if (cloud.size() < 2) throw std::invalid_argument("closeness_index: need n >= 2");
  return 2.0 * estimate_R_bb(cloud, epsilon).value / diameter(cloud);
}

bool decide_inner_empty(const NoiseEstimate& est, double R1_known, double tol) {
  if (R1_known < 0.0 || !(tol > 0.0))
    throw std::invalid_argument("decide_inner_empty: need R1 >= 0 and tol > 0");
  return std::fabs(est.value - R1_known) <= tol;
}

}  // namespace setscan
