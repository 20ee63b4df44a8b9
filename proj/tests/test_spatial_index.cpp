#include <algorithm>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "setscan/spatial_index.hpp"

using namespace setscan;

TEST_SUITE("spatial_index") {

TEST_CASE("nearest matches a linear scan, including tie ranks") {
  for (int d : {2, 3, 4}) {
    const PointCloud c = oracle::uniform_cloud(400, d, 0x5eed + d);
    const SpatialIndex index(c);
    const PointCloud queries = oracle::uniform_cloud(200, d, 0xbeef + d, -0.2, 1.2);
    for (int q = 0; q < queries.size(); ++q) {
      double best = 1e300;
      int best_id = -1;
      for (int j = 0; j < c.size(); ++j) {
        const double dd = dist2(queries[q], c[j], d);
        if (dd < best) {
          best = dd;
          best_id = j;
        }
      }
      const SpatialIndex::Hit h = index.nearest(queries[q]);
      CHECK(h.id == best_id);
      CHECK(h.d2 == doctest::Approx(best).epsilon(1e-14));
    }
  }
}

TEST_CASE("nearest_excluding skips exactly the query id") {
  const PointCloud c = oracle::uniform_cloud(300, 2, 0x77);
  const SpatialIndex index(c);
  for (int i = 0; i < c.size(); i += 7) {
    double best = 1e300;
    int best_id = -1;
    for (int j = 0; j < c.size(); ++j) {
      if (j == i) continue;
      const double dd = dist2(c[i], c[j], 2);
      if (dd < best) {
        best = dd;
        best_id = j;
      }
    }
    const SpatialIndex::Hit h = index.nearest_excluding(c[i], i);
    CHECK(h.id == best_id);
    CHECK(h.d2 == doctest::Approx(best).epsilon(1e-14));
  }
}

TEST_CASE("duplicated sites report the lowest id") {
  const PointCloud c(2, {0.5, 0.5, 0.5, 0.5, 2.0, 2.0});
  const SpatialIndex index(c);
  const double q[2] = {0.5, 0.6};
  CHECK(index.nearest(q).id == 0);
}

TEST_CASE("for_each_within visits exactly the in-radius points") {
  const PointCloud c = oracle::uniform_cloud(500, 3, 0x99);
  const SpatialIndex index(c);
  const PointCloud queries = oracle::uniform_cloud(40, 3, 0x101);
  const double r = 0.25;
  for (int q = 0; q < queries.size(); ++q) {
    std::vector<int> got;
    index.for_each_within(queries[q], r, [&](int id) { got.push_back(id); });
    std::sort(got.begin(), got.end());
    std::vector<int> want;
    for (int j = 0; j < c.size(); ++j)
      if (dist2(queries[q], c[j], 3) <= r * r) want.push_back(j);
    CHECK(got == want);
  }
}

TEST_CASE("single point and empty input") {
  const PointCloud one(2, {3.0, 4.0});
  const SpatialIndex index(one);
  const double q[2] = {0.0, 0.0};
  CHECK(index.nearest(q).d2 == doctest::Approx(25.0));
  CHECK_THROWS_AS(SpatialIndex(PointCloud{}), std::invalid_argument);
}

}
