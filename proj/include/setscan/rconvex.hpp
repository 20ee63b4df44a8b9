#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "setscan/cloud.hpp"
#include "setscan/spatial_index.hpp"

namespace setscan {

// Centers of the open r-balls that are disjoint from the cloud and tangent to
// d cloud points: the boundary of the r-convex hull is covered by the spheres
// of radius r around these centers. Movable, not copyable (the nearest-center
// index views the center buffer).
class EmptySphereSet {
public:
  EmptySphereSet(double r, PointCloud centers);
  EmptySphereSet(EmptySphereSet&&) = default;
  EmptySphereSet& operator=(EmptySphereSet&&) = default;
  EmptySphereSet(const EmptySphereSet&) = delete;
  EmptySphereSet& operator=(const EmptySphereSet&) = delete;

  double r() const { return r_; }
  const PointCloud& centers() const { return centers_; }
  int size() const { return centers_.size(); }

  // (distance, center id), ties broken by lowest id. Throws
  // std::runtime_error when the set is empty.
  std::pair<double, int> nearest_center(const double* x) const;

private:
  double r_ = 0.0;
  PointCloud centers_;
  std::optional<SpatialIndex> index_;
};

// Extracts the empty-sphere centers from the Delaunay facet structure: along
// every dual Voronoi edge (segment between the two incident circumcenters,
// or outward half-line for hull facets) the points at distance r from the
// facet's d generators are kept when their open r-ball contains no cloud
// point. Centers closer than 1e-9 are merged. Throws on r <= 0 and
// propagates triangulation errors.
EmptySphereSet empty_sphere_centers(const PointCloud& cloud, double r);

// min over centers of ||x - z_i|| - r. Throws when the set is empty.
double dist_to_rhull_boundary(const double* x, const EmptySphereSet& z);

// Closest point on the sphere around the nearest center:
// z* + r * (x - z*) / ||x - z*||. Throws when x coincides with that center.
std::vector<double> project_to_rhull_boundary(const double* x, const EmptySphereSet& z);

}  // namespace setscan
