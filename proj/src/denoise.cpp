#include "setscan/denoise.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "setscan/offset.hpp"
#include "setscan/rconvex.hpp"
#include "setscan/rng.hpp"
#include "setscan/spatial_index.hpp"

namespace setscan {

DenoiseResult denoise(const PointCloud& cloud, const DenoiseConfig& config) {
  if (!(config.lambda > 0.0) || !(config.lambda < 1.0))
    throw std::invalid_argument("denoise: lambda must be in (0,1)");
  const int n = cloud.size(), d = cloud.dim();

  DenoiseResult res;
  res.backend = config.backend;

  // Per-point distance to the boundary estimate, and a projector onto it.
  std::vector<double> bdist(n);
  std::vector<double> centers;             // BB backend
  std::vector<int> center_ids;
  std::optional<EmptySphereSet> spheres;   // RCONVEX backend

  if (config.backend == Backend::BB) {
    const double eps = config.epsilon > 0.0 ? config.epsilon : data_driven_radius(cloud, 2.0);
    res.tuning_used = eps;
    const BoundaryBallReport rep = boundary_balls(cloud, eps);
    for (int i = 0; i < n; ++i)
      if (rep.is_boundary[i]) {
        centers.insert(centers.end(), cloud[i], cloud[i] + d);
        center_ids.push_back(i);
      }
    const SpatialIndex index(centers.data(), static_cast<int>(center_ids.size()), d);
    std::vector<int> nearest(n);
    for (int i = 0; i < n; ++i) {
      const SpatialIndex::Hit h = index.nearest(cloud[i]);
      bdist[i] = std::sqrt(h.d2);
      nearest[i] = h.id;
    }
    res.R_used = config.R_known > 0.0 ? config.R_known
                                      : *std::max_element(bdist.begin(), bdist.end());
    if (!(res.R_used > 0.0)) throw std::runtime_error("denoise: estimated R is not positive");

    const double cut = config.lambda * res.R_used;
    for (int i = 0; i < n; ++i)
      if (bdist[i] > cut) res.selected.push_back(i);
    if (res.selected.empty())
      throw std::runtime_error("denoise: empty selection; lambda too large or sample too small");

    std::vector<double> proj, out;
    for (int i : res.selected) {
      const double* pi = centers.data() + static_cast<size_t>(nearest[i]) * d;
      const double norm = dist(cloud[i], pi, d);
      if (norm < 1e-12) {
        ++res.dropped;
        continue;
      }
      res.kept.push_back(i);
      const double f = res.R_used / norm;
      for (int k = 0; k < d; ++k) {
        proj.push_back(pi[k]);
        out.push_back(pi[k] + f * (cloud[i][k] - pi[k]));
      }
    }
    res.projections = PointCloud(d, std::move(proj));
    res.denoised = PointCloud(d, std::move(out));
    return res;
  }

  // RCONVEX backend.
  double r = config.r;
  if (!(r > 0.0)) {
    const double c = default_epsilon_c(cloud);
    r = 0.5 * estimate_R_bb(cloud, epsilon_rule(n, d, c)).value;
    if (!(r > 0.0)) throw std::runtime_error("denoise: pilot radius is not positive");
  }
  res.tuning_used = r;
  spheres.emplace(empty_sphere_centers(cloud, r));
  for (int i = 0; i < n; ++i) bdist[i] = dist_to_rhull_boundary(cloud[i], *spheres);
  res.R_used = config.R_known > 0.0 ? config.R_known
                                    : std::max(*std::max_element(bdist.begin(), bdist.end()), 0.0);
  if (!(res.R_used > 0.0)) throw std::runtime_error("denoise: estimated R is not positive");

  const double cut = config.lambda * res.R_used;
  for (int i = 0; i < n; ++i)
    if (bdist[i] > cut) res.selected.push_back(i);
  if (res.selected.empty())
    throw std::runtime_error("denoise: empty selection; lambda too large or sample too small");

  std::vector<double> proj, out;
  for (int i : res.selected) {
    const std::vector<double> pi = project_to_rhull_boundary(cloud[i], *spheres);
    const double norm = dist(cloud[i], pi.data(), d);
    if (norm < 1e-12) {
      ++res.dropped;
      continue;
    }
    res.kept.push_back(i);
    const double f = res.R_used / norm;
    for (int k = 0; k < d; ++k) {
      proj.push_back(pi[k]);
      out.push_back(pi[k] + f * (cloud[i][k] - pi[k]));
    }
  }
  res.projections = PointCloud(d, std::move(proj));
  res.denoised = PointCloud(d, std::move(out));
  return res;
}

namespace {

double directed_cloud_to_cloud(const PointCloud& a, const SpatialIndex& bindex) {
  double worst = 0.0;
  for (int i = 0; i < a.size(); ++i) worst = std::max(worst, bindex.nearest(a[i]).d2);
  return std::sqrt(worst);
}

}  // namespace

double hausdorff_distance(const PointCloud& a, const PointCloud& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("hausdorff_distance: empty input");
  if (a.dim() != b.dim()) throw std::invalid_argument("hausdorff_distance: dimension mismatch");
  const SpatialIndex ia(a), ib(b);
  return std::max(directed_cloud_to_cloud(a, ib), directed_cloud_to_cloud(b, ia));
}

double hausdorff_distance(const PointCloud& a, const SphereDescriptor& s) {
  if (a.empty()) throw std::invalid_argument("hausdorff_distance: empty input");
  const int d = a.dim();
  if (static_cast<int>(s.center.size()) != d || !(s.radius > 0.0))
    throw std::invalid_argument("hausdorff_distance: bad sphere descriptor");
  double da = 0.0;
  for (int i = 0; i < a.size(); ++i)
    da = std::max(da, std::fabs(dist(a[i], s.center.data(), d) - s.radius));

  // Supremum over the sphere on a fixed dense net.
  const SpatialIndex index(a);
  double db = 0.0;
  std::vector<double> z(d);
  auto visit = [&](const double* dir) {
    for (int k = 0; k < d; ++k) z[k] = s.center[k] + s.radius * dir[k];
    db = std::max(db, index.nearest(z.data()).d2);
  };
  if (d == 1) {
    const double dirs[2] = {1.0, -1.0};
    visit(&dirs[0]);
    visit(&dirs[1]);
  } else if (d == 2) {
    const int m = 8192;
    for (int i = 0; i < m; ++i) {
      const double t = 2.0 * std::numbers::pi * i / m;
      const double dir[2] = {std::cos(t), std::sin(t)};
      visit(dir);
    }
  } else if (d == 3) {
    // Fibonacci net.
    const int m = 32768;
    const double ga = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < m; ++i) {
      const double y = 1.0 - 2.0 * (i + 0.5) / m;
      const double rad = std::sqrt(std::max(0.0, 1.0 - y * y));
      const double t = ga * i;
      const double dir[3] = {rad * std::cos(t), y, rad * std::sin(t)};
      visit(dir);
    }
  } else {
    Rng rng(0x5eededull);
    std::vector<double> g(d);
    for (int i = 0; i < 65536; ++i) {
      double norm2 = 0.0;
      do {
        norm2 = 0.0;
        for (int k = 0; k < d; ++k) {
          g[k] = rng.normal();
          norm2 += g[k] * g[k];
        }
      } while (norm2 == 0.0);
      const double inv = 1.0 / std::sqrt(norm2);
      for (int k = 0; k < d; ++k) g[k] *= inv;
      visit(g.data());
    }
  }
  return std::max(da, std::sqrt(db));
}

double hausdorff_distance(const PointCloud& a, const Curve& polyline) {
  if (a.empty()) throw std::invalid_argument("hausdorff_distance: empty input");
  if (a.dim() != polyline.vertices.dim())
    throw std::invalid_argument("hausdorff_distance: dimension mismatch");
  const CurveDistance cd(polyline);
  double da = 0.0;
  for (int i = 0; i < a.size(); ++i) da = std::max(da, cd.dist(a[i]));
  const SpatialIndex index(a);
  double db = 0.0;
  for (int i = 0; i < polyline.vertices.size(); ++i)
    db = std::max(db, index.nearest(polyline.vertices[i]).d2);
  return std::max(da, std::sqrt(db));
}

}  // namespace setscan
