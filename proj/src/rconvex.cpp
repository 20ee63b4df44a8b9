#include "setscan/rconvex.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "setscan/delaunay.hpp"

namespace setscan {

EmptySphereSet::EmptySphereSet(double r, PointCloud centers)
    : r_(r), centers_(std::move(centers)) {
  if (!(r_ > 0.0) || !std::isfinite(r_))
    throw std::invalid_argument("EmptySphereSet: radius must be positive and finite");
  if (!centers_.empty()) index_.emplace(centers_);
}

std::pair<double, int> EmptySphereSet::nearest_center(const double* x) const {
  if (!index_) throw std::runtime_error("no boundary spheres at this radius");
  const SpatialIndex::Hit h = index_->nearest(x);
  return {std::sqrt(h.d2), h.id};
}

namespace {

// Circumcenter of the facet's d generators within their affine hull, plus a
// unit normal to that hull. Returns false for a degenerate facet.
bool facet_frame(const PointCloud& cloud, const int* gen, int d, double* center,
                 double* normal, double& rho) {
  const double* g0 = cloud[gen[0]];
  const int k = d - 1;  // independent edge vectors
  long double u[3][4];
  for (int i = 0; i < k; ++i)
    for (int c = 0; c < d; ++c)
      u[i][c] = static_cast<long double>(cloud[gen[i + 1]][c]) - g0[c];

  // Solve 2 G a = diag(G) for the barycentric offsets of the circumcenter.
  long double G[3][3], b[3], a[3];
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      long double s = 0.0L;
      for (int c = 0; c < d; ++c) s += u[i][c] * u[j][c];
      G[i][j] = 2.0L * s;
    }
    b[i] = G[i][i] / 2.0L;
  }
  for (int col = 0; col < k; ++col) {
    int piv = col;
    for (int r = col + 1; r < k; ++r)
      if (std::fabs(static_cast<double>(G[r][col])) >
          std::fabs(static_cast<double>(G[piv][col])))
        piv = r;
    if (G[piv][col] == 0.0L) return false;
    if (piv != col) {
      for (int c = col; c < k; ++c) std::swap(G[piv][c], G[col][c]);
      std::swap(b[piv], b[col]);
    }
    for (int r = col + 1; r < k; ++r) {
      const long double f = G[r][col] / G[col][col];
      for (int c = col; c < k; ++c) G[r][c] -= f * G[col][c];
      b[r] -= f * b[col];
    }
  }
  for (int r = k - 1; r >= 0; --r) {
    long double s = b[r];
    for (int c = r + 1; c < k; ++c) s -= G[r][c] * a[c];
    a[r] = s / G[r][r];
  }
  long double y[4] = {0, 0, 0, 0};
  for (int i = 0; i < k; ++i)
    for (int c = 0; c < d; ++c) y[c] += a[i] * u[i][c];
  long double rho2 = 0.0L;
  for (int c = 0; c < d; ++c) {
    center[c] = static_cast<double>(g0[c] + y[c]);
    rho2 += y[c] * y[c];
  }
  rho = std::sqrt(static_cast<double>(rho2));

  // Unit normal: orthonormalize the edge vectors, then take the coordinate
  // axis with the largest residual.
  long double e[3][4];
  int ne = 0;
  for (int i = 0; i < k; ++i) {
    long double v[4];
    for (int c = 0; c < d; ++c) v[c] = u[i][c];
    for (int j = 0; j < ne; ++j) {
      long double dot = 0.0L;
      for (int c = 0; c < d; ++c) dot += v[c] * e[j][c];
      for (int c = 0; c < d; ++c) v[c] -= dot * e[j][c];
    }
    long double l2 = 0.0L;
    for (int c = 0; c < d; ++c) l2 += v[c] * v[c];
    if (l2 <= 0.0L) return false;
    const long double inv = 1.0L / std::sqrt(static_cast<double>(l2));
    for (int c = 0; c < d; ++c) e[ne][c] = v[c] * inv;
    ++ne;
  }
  int bestc = -1;
  long double bestl2 = -1.0L;
  long double bestv[4];
  for (int cand = 0; cand < d; ++cand) {
    long double v[4] = {0, 0, 0, 0};
    v[cand] = 1.0L;
    for (int j = 0; j < ne; ++j) {
      long double dot = e[j][cand];
      for (int c = 0; c < d; ++c) v[c] -= dot * e[j][c];
    }
    long double l2 = 0.0L;
    for (int c = 0; c < d; ++c) l2 += v[c] * v[c];
    if (l2 > bestl2) {
      bestl2 = l2;
      bestc = cand;
      for (int c = 0; c < d; ++c) bestv[c] = v[c];
    }
  }
  if (bestc < 0 || bestl2 <= 0.0L) return false;
  const long double inv = 1.0L / std::sqrt(static_cast<double>(bestl2));
  for (int c = 0; c < d; ++c) normal[c] = static_cast<double>(bestv[c] * inv);
  return true;
}

}  // namespace

EmptySphereSet empty_sphere_centers(const PointCloud& cloud, double r) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw std::invalid_argument("empty_sphere_centers: radius must be positive and finite");
  const int d = cloud.dim();
  const Triangulation tri = build_delaunay(cloud);
  const SpatialIndex index(cloud);
  const double r2min = (r - 1e-9) * (r - 1e-9);

  std::vector<double> raw;
  double center[4], normal[4];
  for (const auto& [key, inc] : tri.facets) {
    double rho = 0.0;
    if (!facet_frame(cloud, key.v.data(), d, center, normal, rho)) continue;
    const double s2 = r * r - rho * rho;
    if (s2 < 0.0) continue;
    const double s = std::sqrt(s2);

    const Simplex& s0 = tri.simplices[inc[0]];
    const double t0 = [&] {
      double acc = 0.0;
      for (int c = 0; c < d; ++c) acc += (s0.circumcenter[c] - center[c]) * normal[c];
      return acc;
    }();

    double tlo, thi;
    if (inc[1] >= 0) {
      const Simplex& s1 = tri.simplices[inc[1]];
      double t1 = 0.0;
      for (int c = 0; c < d; ++c) t1 += (s1.circumcenter[c] - center[c]) * normal[c];
      tlo = std::min(t0, t1);
      thi = std::max(t0, t1);
    } else {
      // Hull facet: half line from the circumcenter, outward. Outward means
      // away from the opposite vertex of the single incident simplex.
      int opp = -1;
      for (int i = 0; i <= d; ++i) {
        const int v = s0.vertices[i];
        bool in_facet = false;
        for (int j = 0; j < d; ++j)
          if (key.v[j] == v) in_facet = true;
        if (!in_facet) {
          opp = v;
          break;
        }
      }
      double sa = 0.0;
      for (int c = 0; c < d; ++c) sa += (cloud[opp][c] - center[c]) * normal[c];
      if (sa > 0.0)
        for (int c = 0; c < d; ++c) normal[c] = -normal[c];
      const double t0o = sa > 0.0 ? -t0 : t0;
      tlo = t0o;
      thi = std::numeric_limits<double>::infinity();
    }

    const double tol = 1e-7 * (1.0 + std::fabs(tlo) + (std::isfinite(thi) ? std::fabs(thi) : 0.0) + r);
    for (const double t : {s, -s}) {
      if (t < tlo - tol || t > thi + tol) continue;
      double z[4];
      for (int c = 0; c < d; ++c) z[c] = center[c] + t * normal[c];
      if (index.nearest(z).d2 < r2min) continue;
      raw.insert(raw.end(), z, z + d);
      if (t == -t) break;  // s == 0: one candidate only
    }
  }

  // Merge centers closer than 1e-9.
  const int m = static_cast<int>(raw.size()) / std::max(d, 1);
  std::vector<int> order(m);
  for (int i = 0; i < m; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::lexicographical_compare(raw.data() + a * d, raw.data() + a * d + d,
                                        raw.data() + b * d, raw.data() + b * d + d);
  });
  std::vector<char> dead(m, 0);
  for (int i = 0; i < m; ++i) {
    if (dead[order[i]]) continue;
    const double* a = raw.data() + order[i] * d;
    for (int j = i + 1; j < m; ++j) {
      const double* b = raw.data() + order[j] * d;
      if (b[0] - a[0] > 1e-9) break;
      if (!dead[order[j]] && dist(a, b, d) < 1e-9) dead[order[j]] = 1;
    }
  }
  std::vector<double> kept;
  kept.reserve(raw.size());
  for (int i = 0; i < m; ++i)
    if (!dead[i]) kept.insert(kept.end(), raw.data() + i * d, raw.data() + i * d + d);
  return EmptySphereSet(r, PointCloud(d, std::move(kept)));
}

double dist_to_rhull_boundary(const double* x, const EmptySphereSet& z) {
  return z.nearest_center(x).first - z.r();
}

std::vector<double> project_to_rhull_boundary(const double* x, const EmptySphereSet& z) {
  const auto [dist, id] = z.nearest_center(x);
  if (dist == 0.0) throw std::runtime_error("projection undefined: query is a sphere center");
  const int d = z.centers().dim();
  const double* c = z.centers()[id];
  std::vector<double> out(d);
  const double f = z.r() / dist;
  for (int k = 0; k < d; ++k) out[k] = c[k] + f * (x[k] - c[k]);
  return out;
}

}  // namespace setscan
