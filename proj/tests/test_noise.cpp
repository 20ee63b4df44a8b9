#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "setscan/noise.hpp"
#include "setscan/offset.hpp"
#include "setscan/samplers.hpp"

using namespace setscan;

namespace {

PointCloud unit_disk(int n, uint64_t seed) {
  Rng rng(seed);
  std::vector<double> xs;
  xs.reserve(2 * static_cast<size_t>(n));
  while (static_cast<int>(xs.size()) < 2 * n) {
    const double x = rng.uniform(-1.0, 1.0), y = rng.uniform(-1.0, 1.0);
    if (x * x + y * y <= 1.0) {
      xs.push_back(x);
      xs.push_back(y);
    }
  }
  return PointCloud(2, std::move(xs));
}

}  // namespace

TEST_SUITE("noise") {

TEST_CASE("epsilon rule formula") {
  CHECK(epsilon_rule(3, 1, 1.0) == doctest::Approx(std::log(3.0) / 3.0).epsilon(1e-15));
  CHECK(epsilon_rule(1000, 3, 2.5) ==
        doctest::Approx(2.5 * std::cbrt(std::log(1000.0) / 1000.0)).epsilon(1e-15));
  CHECK_THROWS_AS(epsilon_rule(1, 2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(epsilon_rule(100, 0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(epsilon_rule(100, 2, 0.0), std::invalid_argument);
}

TEST_CASE("default constant is positive and deterministic") {
  const PointCloud c = sample_shell(800, 2, 0.2, 21);
  const double c1 = default_epsilon_c(c);
  const double c2 = default_epsilon_c(c);
  CHECK(c1 > 0.0);
  CHECK(c1 == c2);
}

TEST_CASE("noiseless sphere sample reports zero tube width") {
  const PointCloud c = sample_sphere(2000, 2, 40);
  const NoiseEstimate est = estimate_R_bb(c, data_driven_radius(c, 2.0));
  CHECK(est.method == Backend::BB);
  CHECK(est.value == 0.0);
  CHECK(est.n == 2000);
  CHECK(est.d == 2);
  CHECK(est.tuning == data_driven_radius(c, 2.0));
}

TEST_CASE("boundary-ball estimate recovers the annulus half-width") {
  for (uint64_t seed : {1ull, 2ull, 3ull}) {
    const PointCloud c = sample_shell(5000, 2, 0.2, seed);
    const double eps = epsilon_rule(c.size(), 2, default_epsilon_c(c));
    const NoiseEstimate est = estimate_R_bb(c, eps);
    CHECK(est.tuning == eps);
    CHECK(std::abs(est.value - 0.2) <= 2.0 * eps);
  }
}

TEST_CASE("r-convex estimate recovers the annulus half-width") {
  for (uint64_t seed : {4ull, 5ull, 6ull}) {
    const PointCloud c = sample_shell(5000, 2, 0.2, seed);
    const NoiseEstimate est = estimate_R_rconvex(c, 0.1);
    CHECK(est.method == Backend::RCONVEX);
    CHECK(est.tuning == 0.1);
    CHECK(std::abs(est.value - 0.2) <= 0.03);
  }
}

TEST_CASE("r-convex estimate on a sphere sample stays near zero") {
  const PointCloud c = sample_sphere(2000, 2, 7);
  const NoiseEstimate est = estimate_R_rconvex(c, 0.2);
  CHECK(est.value >= 0.0);
  CHECK(est.value <= 0.02);
}

TEST_CASE("closeness index separates a disk from a circle") {
  const PointCloud disk = unit_disk(1500, 0xd15c);
  CHECK(closeness_index(disk, data_driven_radius(disk, 2.0)) >= 0.7);
  const PointCloud circle = sample_sphere(1500, 2, 0xc1c);
  CHECK(closeness_index(circle, data_driven_radius(circle, 2.0)) <= 0.1);
}

TEST_CASE("inner-emptiness decision is a tolerance band") {
  NoiseEstimate est;
  est.value = 0.21;
  CHECK(decide_inner_empty(est, 0.2, 0.02));
  CHECK_FALSE(decide_inner_empty(est, 0.2, 0.005));
  CHECK_FALSE(decide_inner_empty(est, 0.3, 0.05));
}

TEST_CASE("invalid tuning throws") {
  const PointCloud c = sample_shell(300, 2, 0.1, 2);
  CHECK_THROWS_AS(estimate_R_bb(c, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(estimate_R_rconvex(c, -0.5), std::invalid_argument);
}

}
