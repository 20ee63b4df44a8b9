#pragma once

#include <cstdint>
#include <vector>

#include "setscan/cloud.hpp"
#include "setscan/spatial_index.hpp"

namespace setscan {

// Closed or open polyline approximating a curve; vertices lie on the curve
// for the analytic factories, with consecutive spacing <= chord_tol.
struct Curve {
  PointCloud vertices;
  bool closed = true;
  double chord_tol = 0.0;
};

Curve circle_polyline(double chord_tol);
// |x|^3 + |y|^3 = 1, parametrized by signed power coordinates.
Curve superellipse3_polyline(double chord_tol);
// (sin t + 2 sin 2t, cos t - 2 cos 2t, -sin 3t).
Curve trefoil_polyline(double chord_tol);
Curve polyline_from_cloud(PointCloud vertices, bool closed);

// Exact distance from x to the polyline (not the analytic curve). The curve
// must outlive the helper; queries are thread-safe.
class CurveDistance {
public:
  explicit CurveDistance(const Curve& curve);
  double dist(const double* x) const;
  double max_segment() const { return max_seg_; }

private:
  const Curve* curve_;
  SpatialIndex index_;
  double max_seg_;
  int segment_count_;

  double segment_dist2(int seg, const double* x) const;
};

// n iid uniform points on the unit sphere S^{d-1}.
PointCloud sample_sphere(int n, int d, uint64_t seed);

// n iid uniform points on B(0,1+A) \ int B(0,1-A); A=0 degenerates to the
// sphere itself. Throws on A outside [0,1).
PointCloud sample_shell(int n, int d, double A, uint64_t seed);

// Rejection sampler for the R1-tube around the curve: uniform proposals in
// [lo,hi]^d accepted when within R1 of the polyline. Requires the polyline's
// max segment length <= R1/100 and the box to contain the tube. Throws
// std::runtime_error when the acceptance rate stays under 1e-4 after 1e6
// proposals.
PointCloud sample_curve_tube(int n, const Curve& curve, double R1,
                             const std::vector<double>& lo, const std::vector<double>& hi,
                             uint64_t seed);

// Vertex bounding box inflated by pad on every side.
void curve_bbox(const Curve& curve, double pad, std::vector<double>& lo,
                std::vector<double>& hi);

}  // namespace setscan
