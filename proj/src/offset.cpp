#include "setscan/offset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "setscan/delaunay.hpp"

namespace setscan {

OffsetEstimator::OffsetEstimator(const PointCloud& cloud, double r)
    : cloud_(&cloud), r_(r), index_(cloud) {
  if (cloud.empty()) throw std::invalid_argument("OffsetEstimator: empty cloud");
  if (!(r > 0.0) || !std::isfinite(r))
    throw std::invalid_argument("OffsetEstimator: radius must be positive and finite");
}

bool OffsetEstimator::contains(const double* x) const {
  return index_.nearest(x).d2 <= r_ * r_;
}

namespace {

void reject_duplicates(const PointCloud& cloud) {
  const int n = cloud.size(), d = cloud.dim();
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::lexicographical_compare(cloud[a], cloud[a] + d, cloud[b], cloud[b] + d);
  });
  for (int i = 0; i + 1 < n; ++i)
    if (std::equal(cloud[order[i]], cloud[order[i]] + d, cloud[order[i + 1]]))
      throw DuplicatePointsError();
}

}  // namespace

std::vector<double> voronoi_deltas(const PointCloud& cloud) {
  const int n = cloud.size();
  if (n < 1) throw std::invalid_argument("voronoi_deltas: empty cloud");
  const double inf = std::numeric_limits<double>::infinity();
  if (n <= cloud.dim()) {
    reject_duplicates(cloud);
    return std::vector<double>(n, inf);
  }
  try {
    const Triangulation tri = build_delaunay(cloud);
    const std::vector<VoronoiCellSummary> cells = voronoi_summaries(tri, cloud);
    std::vector<double> deltas(n);
    for (int i = 0; i < n; ++i) deltas[i] = cells[i].delta;
    return deltas;
  } catch (const DegenerateInputError&) {
    // Affine hull of dimension < d: every Voronoi cell contains a full line
    // orthogonal to that hull, so every cell is unbounded.
    return std::vector<double>(n, inf);
  }
}

BoundaryBallReport boundary_balls(std::vector<double> deltas, double r) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw std::invalid_argument("boundary_balls: radius must be positive and finite");
  BoundaryBallReport rep;
  rep.r = r;
  rep.delta = std::move(deltas);
  const int n = static_cast<int>(rep.delta.size());
  rep.is_boundary.resize(n);
  for (int i = 0; i < n; ++i) {
    rep.is_boundary[i] = rep.delta[i] >= r ? 1 : 0;
    if (!rep.is_boundary[i]) rep.peel_ids.push_back(i);
  }
  return rep;
}

BoundaryBallReport boundary_balls(const PointCloud& cloud, double r) {
  return boundary_balls(voronoi_deltas(cloud), r);
}

std::vector<int> peel(const PointCloud& cloud, double r) {
  return boundary_balls(cloud, r).peel_ids;
}

double data_driven_radius(const PointCloud& cloud, double beta, bool* warned) {
  if (cloud.size() < 2) throw std::invalid_argument("data_driven_radius: need n >= 2");
  if (!(beta > 0.0)) throw std::invalid_argument("data_driven_radius: beta must be > 0");
  if (warned) *warned = beta <= std::pow(6.0, 1.0 / cloud.dim());
  return beta * maxmin_nn(cloud);
}

double theoretical_radius(int n, int d, double kappa) {
  if (n < 2 || d < 1 || !(kappa > 0.0))
    throw std::invalid_argument("theoretical_radius: need n >= 2, d >= 1, kappa > 0");
  return std::pow(kappa * std::log(static_cast<double>(n)) / n, 1.0 / d);
}

DimensionDecision detect_full_dimension(const PointCloud& cloud, double r) {
  const BoundaryBallReport rep = boundary_balls(cloud, r);
  DimensionDecision dec;
  dec.r_used = r;
  dec.delta0 = *std::min_element(rep.delta.begin(), rep.delta.end());
  dec.full_dimensional = dec.delta0 < r;
  return dec;
}

}  // namespace setscan
