#include "setscan/spatial_index.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace setscan {

namespace {
constexpr int kLeafSize = 8;
}

SpatialIndex::SpatialIndex(const double* xs, int n, int d) : xs_(xs), n_(n), d_(d) {
  if (n < 1) throw std::invalid_argument("SpatialIndex: empty point set");
  if (d < 1 || d > 4) throw std::invalid_argument("SpatialIndex: dim must be in 1..4");
  perm_.resize(n);
  for (int i = 0; i < n; ++i) perm_[i] = i;
  nodes_.reserve(2 * n / kLeafSize + 4);
  build(0, n);
}

int SpatialIndex::build(int begin, int end) {
  const int self = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  {
    Node& nd = nodes_[self];
    nd.begin = begin;
    nd.end = end;
    nd.lo.fill(std::numeric_limits<double>::infinity());
    nd.hi.fill(-std::numeric_limits<double>::infinity());
    for (int t = begin; t < end; ++t) {
      const double* p = xs_ + static_cast<size_t>(perm_[t]) * d_;
      for (int k = 0; k < d_; ++k) {
        nd.lo[k] = std::min(nd.lo[k], p[k]);
        nd.hi[k] = std::max(nd.hi[k], p[k]);
      }
    }
  }
  if (end - begin <= kLeafSize) return self;

  int split = 0;
  double width = -1.0;
  for (int k = 0; k < d_; ++k) {
    const double w = nodes_[self].hi[k] - nodes_[self].lo[k];
    if (w > width) {
      width = w;
      split = k;
    }
  }
  if (width <= 0.0) return self;  // all points identical: keep as leaf

  const int mid = begin + (end - begin) / 2;
  std::nth_element(perm_.begin() + begin, perm_.begin() + mid, perm_.begin() + end,
                   [&](int a, int b) {
                     const double xa = xs_[static_cast<size_t>(a) * d_ + split];
                     const double xb = xs_[static_cast<size_t>(b) * d_ + split];
                     if (xa != xb) return xa < xb;
                     return a < b;
                   });
  const int l = build(begin, mid);
  const int r = build(mid, end);
  nodes_[self].left = l;
  nodes_[self].right = r;
  return self;
}

double SpatialIndex::box_d2(const Node& nd, const double* q) const {
  double s = 0.0;
  for (int k = 0; k < d_; ++k) {
    double t = 0.0;
    if (q[k] < nd.lo[k])
      t = nd.lo[k] - q[k];
    else if (q[k] > nd.hi[k])
      t = q[k] - nd.hi[k];
    s += t * t;
  }
  return s;
}

void SpatialIndex::nn_walk(int node, const double* q, int skip, Hit& best) const {
  const Node& nd = nodes_[node];
  if (nd.left < 0) {
    for (int t = nd.begin; t < nd.end; ++t) {
      const int id = perm_[t];
      if (id == skip) continue;
      const double d2v = dist2(q, xs_ + static_cast<size_t>(id) * d_, d_);
      if (d2v < best.d2 || (d2v == best.d2 && id < best.id)) best = {d2v, id};
    }
    return;
  }
  const double dl = box_d2(nodes_[nd.left], q);
  const double dr = box_d2(nodes_[nd.right], q);
  const int first = dl <= dr ? nd.left : nd.right;
  const int second = dl <= dr ? nd.right : nd.left;
  const double dfirst = std::min(dl, dr), dsecond = std::max(dl, dr);
  // Strict > keeps equal-distance candidates reachable for the id tie-break.
  if (dfirst <= best.d2) nn_walk(first, q, skip, best);
  if (dsecond <= best.d2) nn_walk(second, q, skip, best);
}

SpatialIndex::Hit SpatialIndex::nearest_excluding(const double* q, int skip) const {
  Hit best{std::numeric_limits<double>::infinity(), std::numeric_limits<int>::max()};
  nn_walk(0, q, skip, best);
  if (best.id == std::numeric_limits<int>::max())
    throw std::invalid_argument("SpatialIndex: no candidate point");
  return best;
}

}  // namespace setscan
