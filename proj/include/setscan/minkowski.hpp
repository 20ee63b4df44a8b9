#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "setscan/cloud.hpp"
#include "setscan/denoise.hpp"
#include "setscan/rng.hpp"

namespace setscan {

// Volume of the unit ball in R^k: pi^{k/2} / Gamma(k/2 + 1).
double unit_ball_volume(int k);

// Monte Carlo sampling region: an axis-aligned box or a spherical shell
// around the origin.
class Region {
public:
  static Region box(std::vector<double> lo, std::vector<double> hi);
  static Region bounding_box(const PointCloud& cloud, double pad);
  static Region centered_shell(int d, double inner, double outer);

  int dim() const { return d_; }
  double volume() const;
  void sample(Rng& rng, double* out) const;
  std::string describe() const;

private:
  enum class Kind { BOX, SHELL } kind_ = Kind::BOX;
  int d_ = 0;
  std::vector<double> lo_, hi_;
  double inner_ = 0.0, outer_ = 0.0;
};

struct McResult {
  double volume = 0.0;
  long long hits = 0;
  long long n = 0;
};

// (hits/N) * vol(region) where a hit is a sample within distance r of the
// cloud. Deterministic for fixed seed: samples are drawn in 65536-point
// chunks with seed-derived substreams and hit counts are summed exactly.
// The region must contain B(cloud, r) for an unbiased result (caller
// contract).
McResult mc_union_volume(const PointCloud& cloud, double r, const Region& region,
                         long long N, uint64_t seed);

struct MinkowskiEstimate {
  double value = 0.0;
  double r_used = 0.0;
  int d_prime = 0;
  long long mc_points = 0;
  long long mc_hits = 0;
  std::string region;
};

// The experiments' radius rule 0.5 * sqrt(maxmin_nn).
double auto_radius(const PointCloud& cloud);

// mc volume of B(cloud, r) divided by omega_{d-d'} r^{d-d'}. r <= 0 selects
// auto_radius; a null region selects the bounding box inflated by r.
MinkowskiEstimate minkowski_noiseless(const PointCloud& cloud, int d_prime, double r,
                                      long long N, uint64_t seed,
                                      const Region* region = nullptr);

// Denoises first, then estimates on the denoised points with the supplied r.
MinkowskiEstimate minkowski_noisy(const PointCloud& cloud, int d_prime,
                                  const DenoiseConfig& config, double r, long long N,
                                  uint64_t seed, const Region* region = nullptr);

// Built-in tube-case radii for d in 2..4, defined at n = 10^3..10^6 with
// nearest-log10(n) fallback.
double table2_radius(long long n, int d);

}  // namespace setscan
