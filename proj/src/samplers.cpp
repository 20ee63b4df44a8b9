#include "setscan/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "setscan/rng.hpp"

namespace setscan {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

Curve finish_curve(PointCloud vertices, bool closed, double chord_tol) {
  Curve c;
  c.vertices = std::move(vertices);
  c.closed = closed;
  c.chord_tol = chord_tol;
  return c;
}

double max_spacing(const PointCloud& v, bool closed) {
  const int m = v.size(), d = v.dim();
  double worst = 0.0;
  for (int i = 0; i + 1 < m; ++i) worst = std::max(worst, dist(v[i], v[i + 1], d));
  if (closed && m > 1) worst = std::max(worst, dist(v[m - 1], v[0], d));
  return worst;
}

template <class F>
Curve adaptive_polyline(F&& eval, int d, double chord_tol) {
  if (!(chord_tol > 0.0)) throw std::invalid_argument("polyline: chord tolerance must be > 0");
  int m = 1024;
  for (;;) {
    std::vector<double> xs(static_cast<size_t>(m) * d);
    for (int i = 0; i < m; ++i) eval(kTau * i / m, xs.data() + static_cast<size_t>(i) * d);
    PointCloud v(d, std::move(xs));
    if (max_spacing(v, true) <= chord_tol) return finish_curve(std::move(v), true, chord_tol);
    if (m > (1 << 24)) throw std::runtime_error("polyline: tolerance unreachable");
    m *= 2;
  }
}

}  // namespace

Curve circle_polyline(double chord_tol) {
  return adaptive_polyline(
      [](double t, double* out) {
        out[0] = std::cos(t);
        out[1] = std::sin(t);
      },
      2, chord_tol);
}

Curve superellipse3_polyline(double chord_tol) {
  return adaptive_polyline(
      [](double t, double* out) {
        const double c = std::cos(t), s = std::sin(t);
        out[0] = std::copysign(std::pow(std::fabs(c), 2.0 / 3.0), c);
        out[1] = std::copysign(std::pow(std::fabs(s), 2.0 / 3.0), s);
      },
      2, chord_tol);
}

Curve trefoil_polyline(double chord_tol) {
  return adaptive_polyline(
      [](double t, double* out) {
        out[0] = std::sin(t) + 2.0 * std::sin(2.0 * t);
        out[1] = std::cos(t) - 2.0 * std::cos(2.0 * t);
        out[2] = -std::sin(3.0 * t);
      },
      3, chord_tol);
}

Curve polyline_from_cloud(PointCloud vertices, bool closed) {
  if (vertices.size() < 2) throw std::invalid_argument("polyline: need at least 2 vertices");
  const double spacing = max_spacing(vertices, closed);
  return finish_curve(std::move(vertices), closed, spacing);
}

CurveDistance::CurveDistance(const Curve& curve)
    : curve_(&curve), index_(curve.vertices), max_seg_(max_spacing(curve.vertices, curve.closed)) {
  segment_count_ = curve.vertices.size() - (curve.closed ? 0 : 1);
  if (segment_count_ < 1) throw std::invalid_argument("CurveDistance: no segments");
}

double CurveDistance::segment_dist2(int seg, const double* x) const {
  const PointCloud& v = curve_->vertices;
  const int d = v.dim();
  const double* a = v[seg];
  const double* b = v[(seg + 1) % v.size()];
  double ab2 = 0.0, t = 0.0;
  for (int k = 0; k < d; ++k) {
    const double u = b[k] - a[k];
    ab2 += u * u;
    t += (x[k] - a[k]) * u;
  }
  const double f = ab2 > 0.0 ? std::clamp(t / ab2, 0.0, 1.0) : 0.0;
  double s = 0.0;
  for (int k = 0; k < d; ++k) {
    const double w = x[k] - (a[k] + f * (b[k] - a[k]));
    s += w * w;
  }
  return s;
}

double CurveDistance::dist(const double* x) const {
  const PointCloud& v = curve_->vertices;
  const int m = v.size();
  const double dv = std::sqrt(index_.nearest(x).d2);
  // The best segment has an endpoint within best + max_seg_ <= dv + max_seg_.
  const double radius = dv + max_seg_;
  double best2 = dv * dv;
  index_.for_each_within(x, radius, [&](int id) {
    if (id < segment_count_) best2 = std::min(best2, segment_dist2(id, x));
    const int prev = id == 0 ? m - 1 : id - 1;
    if (prev < segment_count_) best2 = std::min(best2, segment_dist2(prev, x));
  });
  return std::sqrt(best2);
}

PointCloud sample_shell(int n, int d, double A, uint64_t seed) {
  if (n < 1 || d < 1) throw std::invalid_argument("sample_shell: need n >= 1, d >= 1");
  if (!(A >= 0.0) || A >= 1.0) throw std::invalid_argument("sample_shell: A must be in [0,1)");
  Rng rng(seed);
  const double lo = std::pow(1.0 - A, d);
  const double hi = std::pow(1.0 + A, d);
  std::vector<double> xs(static_cast<size_t>(n) * d);
  std::vector<double> g(d);
  for (int i = 0; i < n; ++i) {
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (int k = 0; k < d; ++k) {
        g[k] = rng.normal();
        norm2 += g[k] * g[k];
      }
    } while (norm2 == 0.0);
    const double radius = std::pow(lo + (hi - lo) * rng.uniform01(), 1.0 / d);
    const double f = radius / std::sqrt(norm2);
    for (int k = 0; k < d; ++k) xs[static_cast<size_t>(i) * d + k] = f * g[k];
  }
  return PointCloud(d, std::move(xs));
}

PointCloud sample_sphere(int n, int d, uint64_t seed) { return sample_shell(n, d, 0.0, seed); }

PointCloud sample_curve_tube(int n, const Curve& curve, double R1,
                             const std::vector<double>& lo, const std::vector<double>& hi,
                             uint64_t seed) {
  const int d = curve.vertices.dim();
  if (n < 1) throw std::invalid_argument("sample_curve_tube: need n >= 1");
  if (!(R1 > 0.0)) throw std::invalid_argument("sample_curve_tube: need R1 > 0");
  if (static_cast<int>(lo.size()) != d || static_cast<int>(hi.size()) != d)
    throw std::invalid_argument("sample_curve_tube: box dimension mismatch");
  for (int k = 0; k < d; ++k)
    if (!(lo[k] < hi[k])) throw std::invalid_argument("sample_curve_tube: empty box");
  const CurveDistance cd(curve);
  if (cd.max_segment() > R1 / 100.0 * (1.0 + 1e-9))
    throw std::invalid_argument("sample_curve_tube: polyline too coarse for this R1");

  Rng rng(seed);
  std::vector<double> xs;
  xs.reserve(static_cast<size_t>(n) * d);
  double q[4];
  long long accepted = 0, proposals = 0;
  while (accepted < n) {
    ++proposals;
    for (int k = 0; k < d; ++k) q[k] = rng.uniform(lo[k], hi[k]);
    if (cd.dist(q) <= R1) {
      xs.insert(xs.end(), q, q + d);
      ++accepted;
    }
    if (proposals % 1000000 == 0 &&
        static_cast<double>(accepted) < 1e-4 * static_cast<double>(proposals))
      throw std::runtime_error("sample_curve_tube: acceptance rate below 1e-4; box too large or R1 too small");
  }
  return PointCloud(d, std::move(xs));
}

void curve_bbox(const Curve& curve, double pad, std::vector<double>& lo,
                std::vector<double>& hi) {
  const PointCloud& v = curve.vertices;
  const int d = v.dim();
  lo.assign(d, std::numeric_limits<double>::infinity());
  hi.assign(d, -std::numeric_limits<double>::infinity());
  for (int i = 0; i < v.size(); ++i)
    for (int k = 0; k < d; ++k) {
      lo[k] = std::min(lo[k], v[i][k]);
      hi[k] = std::max(hi[k], v[i][k]);
    }
  for (int k = 0; k < d; ++k) {
    lo[k] -= pad;
    hi[k] += pad;
  }
}

}  // namespace setscan
