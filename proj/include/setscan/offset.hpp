#pragma once

#include <vector>

#include "setscan/cloud.hpp"
#include "setscan/spatial_index.hpp"

namespace setscan {

// Union of closed balls of radius r around the sample. Membership queries go
// through a spatial index built once; the cloud must outlive the estimator.
class OffsetEstimator {
public:
  // Throws std::invalid_argument on r <= 0 / non-finite or empty cloud.
  OffsetEstimator(const PointCloud& cloud, double r);

  // d(x, cloud) <= r, closed balls.
  bool contains(const double* x) const;

  double radius() const { return r_; }
  const PointCloud& cloud() const { return *cloud_; }

private:
  const PointCloud* cloud_;
  double r_;
  SpatialIndex index_;
};

// delta_i = sup of ||z - x_i|| over the Voronoi cell of x_i, +infinity
// exactly when the cell is unbounded. For clouds whose affine hull has
// dimension < d (or n <= d) every nonempty cell is unbounded, so all deltas
// are +infinity; that case is handled without a triangulation. Duplicate
// points still throw DuplicatePointsError.
std::vector<double> voronoi_deltas(const PointCloud& cloud);

struct BoundaryBallReport {
  double r = 0.0;
  std::vector<double> delta;       // per point, +infinity allowed
  std::vector<char> is_boundary;   // delta_i >= r
  std::vector<int> peel_ids;       // complement, ascending
};

// Flags each sample ball as boundary (its sphere contributes to the boundary
// of the union) or interior; the peel is the set of interior ball centers.
BoundaryBallReport boundary_balls(const PointCloud& cloud, double r);
BoundaryBallReport boundary_balls(std::vector<double> deltas, double r);

// Ids of non-boundary balls; may be empty.
std::vector<int> peel(const PointCloud& cloud, double r);

// beta * maxmin_nn(cloud). Needs n >= 2. Sets *warned (when given) if beta
// is at or below the 6^(1/d) consistency threshold; the value is still
// returned.
double data_driven_radius(const PointCloud& cloud, double beta, bool* warned = nullptr);

// (kappa * log(n) / n)^(1/d).
double theoretical_radius(int n, int d, double kappa);

struct DimensionDecision {
  bool full_dimensional = false;
  double delta0 = 0.0;  // min over i of delta_i, +infinity allowed
  double r_used = 0.0;
};

// full_dimensional iff delta0 < r, i.e. iff the peel is nonempty.
DimensionDecision detect_full_dimension(const PointCloud& cloud, double r);

}  // namespace setscan
