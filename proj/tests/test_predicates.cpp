#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "setscan/predicates.hpp"

using namespace setscan;
using namespace setscan::pred;

TEST_SUITE("predicates") {

TEST_CASE("orient gives known signs in 2d") {
  const double a[2] = {0.0, 0.0}, b[2] = {1.0, 0.0}, c[2] = {0.0, 1.0};
  const double* ccw[3] = {a, b, c};
  const double* cw[3] = {a, c, b};
  CHECK(orient(2, ccw) == 1);
  CHECK(orient(2, cw) == -1);
  const double m[2] = {0.5, 0.0};
  const double* collinear[3] = {a, b, m};
  CHECK(orient(2, collinear) == 0);
}

TEST_CASE("orient detects degeneracy that double arithmetic misses") {
  // Points on a line with coordinates that stress cancellation.
  const double a[2] = {1e17, 1e17}, b[2] = {1e17 + 2, 1e17 + 2}, c[2] = {1e17 + 4, 1e17 + 4};
  const double* pts[3] = {a, b, c};
  CHECK(orient(2, pts) == 0);
}

TEST_CASE("orient sign flips under an odd permutation in 3d and 4d") {
  const PointCloud c3 = oracle::uniform_cloud(4, 3, 0x3d);
  const double* p3[4] = {c3[0], c3[1], c3[2], c3[3]};
  const double* p3s[4] = {c3[1], c3[0], c3[2], c3[3]};
  CHECK(orient(3, p3) == -orient(3, p3s));
  const PointCloud c4 = oracle::uniform_cloud(5, 4, 0x4d);
  const double* p4[5] = {c4[0], c4[1], c4[2], c4[3], c4[4]};
  const double* p4s[5] = {c4[0], c4[2], c4[1], c4[3], c4[4]};
  CHECK(orient(4, p4) == -orient(4, p4s));
}

TEST_CASE("insphere_sign on the unit right triangle") {
  const double a[2] = {0.0, 0.0}, b[2] = {1.0, 0.0}, c[2] = {0.0, 1.0};
  const double* tri[3] = {a, b, c};
  const int os = orient(2, tri);
  // Circumcircle: center (0.5, 0.5), radius sqrt(0.5).
  const double inside[2] = {0.5, 0.5};
  const double outside[2] = {2.0, 2.0};
  const double on[2] = {1.0, 1.0};
  CHECK(insphere_sign(2, tri, os, inside) == 1);
  CHECK(insphere_sign(2, tri, os, outside) == -1);
  CHECK(insphere_sign(2, tri, os, on) == 0);
}

TEST_CASE("insphere_sign is orientation independent") {
  const PointCloud c = oracle::uniform_cloud(5, 3, 0x1f5);
  const double* fwd[4] = {c[0], c[1], c[2], c[3]};
  const double* rev[4] = {c[1], c[0], c[2], c[3]};
  const int s1 = insphere_sign(3, fwd, orient(3, fwd), c[4]);
  const int s2 = insphere_sign(3, rev, orient(3, rev), c[4]);
  CHECK(s1 == s2);
}

TEST_CASE("perturbed insphere never answers on, and picks one square diagonal") {
  // Four cocircular points. For a convex quad the two tests of one diagonal
  // agree, and exactly one of the two diagonals is kept.
  const double a[2] = {0.0, 0.0}, b[2] = {1.0, 0.0}, c[2] = {1.0, 1.0}, d[2] = {0.0, 1.0};
  const int ia = 0, ib = 1, ic = 2, id = 3;
  auto query = [&](const double* u, int iu, const double* v, int iv, const double* w, int iw,
                   const double* q, int iq) {
    const double* tri[3] = {u, v, w};
    const int ids[3] = {iu, iv, iw};
    return insphere(2, tri, ids, orient(2, tri), q, iq);
  };
  const int s1 = query(a, ia, b, ib, c, ic, d, id);  // diagonal ac, test d
  const int s2 = query(a, ia, c, ic, d, id, b, ib);  // diagonal ac, test b
  const int s3 = query(a, ia, b, ib, d, id, c, ic);  // diagonal bd, test c
  const int s4 = query(b, ib, c, ic, d, id, a, ia);  // diagonal bd, test a
  CHECK(s1 != 0);
  CHECK(s1 == s2);
  CHECK(s3 == s4);
  CHECK(s1 == -s3);
}

TEST_CASE("perturbed insphere agrees with the plain sign away from ties") {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    const PointCloud c = oracle::uniform_cloud(6, 2, 0xabc00 + seed);
    const double* tri[3] = {c[0], c[1], c[2]};
    const int ids[3] = {0, 1, 2};
    const int os = orient(2, tri);
    if (os == 0) continue;
    for (int q = 3; q < 6; ++q) {
      const int plain = insphere_sign(2, tri, os, c[q]);
      if (plain == 0) continue;
      CHECK(insphere(2, tri, ids, os, c[q], q) == plain);
    }
  }
}

TEST_CASE("affine_rank measures the hull dimension exactly") {
  const double o[3] = {1.0, 1.0, 1.0};
  const double a[3] = {2.0, 1.0, 1.0};
  const double b[3] = {3.0, 1.0, 1.0};
  const double c[3] = {1.0, 2.0, 1.0};
  const double* line[2] = {a, b};
  CHECK(affine_rank(3, o, line, 2) == 1);
  const double* plane[3] = {a, b, c};
  CHECK(affine_rank(3, o, plane, 3) == 2);
}

TEST_CASE("exact conversion round trips dyadic doubles") {
  CHECK(exact(0.5) == Rational(1, 2));
  CHECK(exact(-3.0) == Rational(-3));
  CHECK(exact(0.1) != Rational(1, 10));  // 0.1 is not dyadic
}

}
