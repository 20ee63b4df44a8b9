#pragma once

#include <array>
#include <vector>

#include "setscan/cloud.hpp"

namespace setscan {

// kd-tree over a fixed buffer of points. Exact nearest neighbor: results match
// a linear scan bit for bit, ties broken by lowest index. The index holds a
// view of the coordinate buffer; it must not outlive it.
class SpatialIndex {
public:
  SpatialIndex(const double* xs, int n, int d);
  explicit SpatialIndex(const PointCloud& cloud)
      : SpatialIndex(cloud.data().data(), cloud.size(), cloud.dim()) {}

  struct Hit {
    double d2;
    int id;
  };

  Hit nearest(const double* q) const { return nearest_excluding(q, -1); }
  Hit nearest_excluding(const double* q, int skip) const;

  // Visits ids of every point with computed squared distance <= radius*radius.
  template <class F>
  void for_each_within(const double* q, double radius, F&& f) const {
    if (n_ == 0) return;
    range_walk(0, q, radius * radius, f);
  }

  int size() const { return n_; }

private:
  struct Node {
    std::array<double, 4> lo, hi;
    int begin, end;    // range in perm_
    int left = -1, right = -1;
  };

  const double* xs_;
  int n_, d_;
  std::vector<int> perm_;
  std::vector<Node> nodes_;

  int build(int begin, int end);
  double box_d2(const Node& nd, const double* q) const;
  void nn_walk(int node, const double* q, int skip, Hit& best) const;

  template <class F>
  void range_walk(int node, const double* q, double r2, F& f) const {
    const Node& nd = nodes_[node];
    if (box_d2(nd, q) > r2) return;
    if (nd.left < 0) {
      for (int t = nd.begin; t < nd.end; ++t) {
        const int id = perm_[t];
        if (dist2(q, xs_ + static_cast<size_t>(id) * d_, d_) <= r2) f(id);
      }
      return;
    }
    range_walk(nd.left, q, r2, f);
    range_walk(nd.right, q, r2, f);
  }
};

}  // namespace setscan
