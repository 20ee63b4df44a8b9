#include "setscan/minkowski.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "setscan/spatial_index.hpp"

namespace setscan {

double unit_ball_volume(int k) {
  if (k < 0) throw std::invalid_argument("unit_ball_volume: negative dimension");
  return std::pow(std::numbers::pi, 0.5 * k) / std::tgamma(0.5 * k + 1.0);
}

Region Region::box(std::vector<double> lo, std::vector<double> hi) {
  if (lo.empty() || lo.size() != hi.size())
    throw std::invalid_argument("region: box bounds must be nonempty and of equal size");
  for (size_t k = 0; k < lo.size(); ++k)
    if (!std::isfinite(lo[k]) || !std::isfinite(hi[k]) || !(lo[k] < hi[k]))
      throw std::invalid_argument("region: box needs finite lo < hi in every coordinate");
  Region r;
  r.kind_ = Kind::BOX;
  r.d_ = static_cast<int>(lo.size());
  r.lo_ = std::move(lo);
  r.hi_ = std::move(hi);
  return r;
}

Region Region::bounding_box(const PointCloud& cloud, double pad) {
  if (cloud.empty()) throw std::invalid_argument("region: empty cloud");
  const int d = cloud.dim();
  std::vector<double> lo(cloud[0], cloud[0] + d), hi(lo);
  for (int i = 1; i < cloud.size(); ++i)
    for (int k = 0; k < d; ++k) {
      lo[k] = std::min(lo[k], cloud[i][k]);
      hi[k] = std::max(hi[k], cloud[i][k]);
    }
  for (int k = 0; k < d; ++k) {
    lo[k] -= pad;
    hi[k] += pad;
  }
  return box(std::move(lo), std::move(hi));
}

Region Region::centered_shell(int d, double inner, double outer) {
  if (d < 1) throw std::invalid_argument("region: shell dimension must be >= 1");
  if (!(inner >= 0.0) || !(outer > inner) || !std::isfinite(outer))
    throw std::invalid_argument("region: shell needs 0 <= inner < outer");
  Region r;
  r.kind_ = Kind::SHELL;
  r.d_ = d;
  r.inner_ = inner;
  r.outer_ = outer;
  return r;
}

double Region::volume() const {
  if (kind_ == Kind::BOX) {
    double v = 1.0;
    for (int k = 0; k < d_; ++k) v *= hi_[k] - lo_[k];
    return v;
  }
  return unit_ball_volume(d_) * (std::pow(outer_, d_) - std::pow(inner_, d_));
}

void Region::sample(Rng& rng, double* out) const {
  if (kind_ == Kind::BOX) {
    for (int k = 0; k < d_; ++k) out[k] = rng.uniform(lo_[k], hi_[k]);
    return;
  }
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (int k = 0; k < d_; ++k) {
      out[k] = rng.normal();
      norm2 += out[k] * out[k];
    }
  } while (norm2 == 0.0);
  const double id = std::pow(inner_, d_), od = std::pow(outer_, d_);
  const double rad = std::pow(rng.uniform01() * (od - id) + id, 1.0 / d_);
  const double f = rad / std::sqrt(norm2);
  for (int k = 0; k < d_; ++k) out[k] *= f;
}

std::string Region::describe() const {
  char buf[64];
  if (kind_ == Kind::SHELL) {
    std::snprintf(buf, sizeof buf, "shell(%g,%g,d=%d)", inner_, outer_, d_);
    return buf;
  }
  std::string s = "box[";
  for (int k = 0; k < d_; ++k) {
    std::snprintf(buf, sizeof buf, "%s%g..%g", k ? "," : "", lo_[k], hi_[k]);
    s += buf;
  }
  return s + "]";
}

McResult mc_union_volume(const PointCloud& cloud, double r, const Region& region,
                         long long N, uint64_t seed) {
  if (cloud.empty()) throw std::invalid_argument("mc_union_volume: empty cloud");
  if (!(r > 0.0) || !std::isfinite(r))
    throw std::invalid_argument("mc_union_volume: r must be positive and finite");
  if (region.dim() != cloud.dim())
    throw std::invalid_argument("mc_union_volume: region dimension mismatch");
  if (N < 1) throw std::invalid_argument("mc_union_volume: need at least one sample");

  const SpatialIndex index(cloud);
  const double r2 = r * r;
  const int d = cloud.dim();
  std::vector<double> z(d);
  McResult res;
  res.n = N;
  const long long kChunk = 65536;
  for (long long start = 0, chunk = 0; start < N; start += kChunk, ++chunk) {
    Rng rng(derive_seed(seed, {0x6d63ull, static_cast<uint64_t>(chunk)}));
    const long long stop = std::min(N, start + kChunk);
    long long hits = 0;
    for (long long i = start; i < stop; ++i) {
      region.sample(rng, z.data());
      if (index.nearest(z.data()).d2 <= r2) ++hits;
    }
    res.hits += hits;
  }
  res.volume = static_cast<double>(res.hits) / static_cast<double>(N) * region.volume();
  return res;
}

double auto_radius(const PointCloud& cloud) { return 0.5 * std::sqrt(maxmin_nn(cloud)); }

namespace {

MinkowskiEstimate estimate_on(const PointCloud& pts, int d_prime, double r, long long N,
                              uint64_t seed, const Region* region) {
  const int d = pts.dim();
  if (d_prime < 0 || d_prime > d)
    throw std::invalid_argument("minkowski: d_prime must be in [0, d]");
  Region fallback = Region::bounding_box(pts, r > 0.0 ? r : 1.0);
  if (region == nullptr) region = &fallback;
  const McResult mc = mc_union_volume(pts, r, *region, N, seed);
  const int codim = d - d_prime;
  MinkowskiEstimate est;
  est.value = mc.volume / (unit_ball_volume(codim) * std::pow(r, codim));
  est.r_used = r;
  est.d_prime = d_prime;
  est.mc_points = mc.n;
  est.mc_hits = mc.hits;
  est.region = region->describe();
  return est;
}

}  // namespace

MinkowskiEstimate minkowski_noiseless(const PointCloud& cloud, int d_prime, double r,
                                      long long N, uint64_t seed, const Region* region) {
  if (!(r > 0.0)) r = auto_radius(cloud);
  return estimate_on(cloud, d_prime, r, N, seed, region);
}

MinkowskiEstimate minkowski_noisy(const PointCloud& cloud, int d_prime,
                                  const DenoiseConfig& config, double r, long long N,
                                  uint64_t seed, const Region* region) {
  if (!(r > 0.0)) throw std::invalid_argument("minkowski_noisy: r must be positive");
  const DenoiseResult den = denoise(cloud, config);
  return estimate_on(den.denoised, d_prime, r, N, seed, region);
}

double table2_radius(long long n, int d) {
  if (n < 1) throw std::invalid_argument("table2_radius: n must be positive");
  if (d < 2 || d > 4) throw std::invalid_argument("table2_radius: d must be in 2..4");
  static const double kR[3][4] = {
      {0.11, 0.10, 0.08, 0.07},
      {0.14, 0.14, 0.13, 0.12},
      {0.16, 0.16, 0.16, 0.15},
  };
  const double lg = std::log10(static_cast<double>(n));
  int k = 3;
  if (lg <= 3.5) k = 0;
  else if (lg <= 4.5) k = 1;
  else if (lg <= 5.5) k = 2;
  return kR[d - 2][k];
}

}  // namespace setscan
