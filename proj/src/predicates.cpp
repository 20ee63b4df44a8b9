#include "setscan/predicates.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

// Filtered geometric predicates. Each determinant is evaluated in doubles
// alongside a magnitude accumulator (same expansion with |entries| and +);
// when |det| clears eps_k * magnitude the floating sign is certain, otherwise
// the determinant is recomputed in exact rational arithmetic from the raw
// input coordinates. Cospherical insphere ties are resolved by assigning
// point id i the symbolic lifted weight eps^(i+1) (an infinitesimal regular
// triangulation), which the code expands as a cofactor series ordered by id.

namespace setscan::pred {

namespace {

struct DetMag {
  double det;
  double mag;
};

// Recursive cofactor expansion, k <= 5.
DetMag det_mag(const double* m, int k) {
  if (k == 1) return {m[0], std::fabs(m[0])};
  if (k == 2) {
    const double a = m[0] * m[3], b = m[1] * m[2];
    return {a - b, std::fabs(a) + std::fabs(b)};
  }
  double det = 0.0, mag = 0.0;
  std::array<double, 16> sub;
  for (int j = 0; j < k; ++j) {
    for (int r = 1; r < k; ++r) {
      int c2 = 0;
      for (int c = 0; c < k; ++c)
        if (c != j) sub[(r - 1) * (k - 1) + c2++] = m[r * k + c];
    }
    const DetMag s = det_mag(sub.data(), k - 1);
    const double term = m[j] * s.det;
    det += (j % 2 == 0) ? term : -term;
    mag += std::fabs(m[j]) * s.mag;
  }
  return {det, mag};
}

// Conservative forward-error factors per matrix size.
constexpr double kEps[6] = {0, 0, 16, 64, 256, 1024};
constexpr double kUlp = 2.220446049250313e-16;

int filtered_sign(const double* m, int k, bool& certain) {
  const DetMag dm = det_mag(m, k);
  const double bound = kEps[k] * kUlp * dm.mag;
  if (dm.det > bound) {
    certain = true;
    return 1;
  }
  if (dm.det < -bound) {
    certain = true;
    return -1;
  }
  certain = (dm.mag == 0.0);  // all-zero matrix: det is exactly 0
  return 0;
}

int sign_of(const Rational& x) {
  if (x == 0) return 0;
  return x < 0 ? -1 : 1;
}

// Exact determinant, Gaussian elimination with exact pivoting. Destroys m.
Rational rat_det(std::vector<Rational>& m, int k) {
  int sign = 1;
  Rational det = 1;
  for (int col = 0; col < k; ++col) {
    int piv = -1;
    for (int r = col; r < k; ++r)
      if (m[r * k + col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return Rational(0);
    if (piv != col) {
      for (int c = col; c < k; ++c) std::swap(m[piv * k + c], m[col * k + c]);
      sign = -sign;
    }
    const Rational& p = m[col * k + col];
    for (int r = col + 1; r < k; ++r) {
      if (m[r * k + col] == 0) continue;
      const Rational f = m[r * k + col] / p;
      m[r * k + col] = 0;
      for (int c = col + 1; c < k; ++c) m[r * k + c] -= f * m[col * k + c];
    }
    det *= p;
  }
  return sign > 0 ? det : -det;
}

}  // namespace

Rational exact(double x) {
  if (x == 0.0) return Rational(0);
  int e = 0;
  const double m = std::frexp(x, &e);  // x = m * 2^e, |m| in [0.5, 1)
  const int64_t mant = static_cast<int64_t>(std::ldexp(m, 53));
  e -= 53;
  Rational r(mant);
  if (e > 0) {
    boost::multiprecision::cpp_int p = 1;
    p <<= e;
    r *= Rational(p);
  } else if (e < 0) {
    boost::multiprecision::cpp_int p = 1;
    p <<= -e;
    r /= Rational(p);
  }
  return r;
}

int orient(int d, const double* const* pts) {
  double m[16];
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) m[i * d + k] = pts[i + 1][k] - pts[0][k];
  bool certain = false;
  const int s = filtered_sign(m, d, certain);
  if (certain) return s;
  std::vector<Rational> rm(static_cast<size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k)
      rm[i * d + k] = exact(pts[i + 1][k]) - exact(pts[0][k]);
  return sign_of(rat_det(rm, d));
}

int insphere(int d, const double* const* simplex, const int* ids, int orient_sign,
             const double* q, int qid) {
  const int k = d + 1;
  // Rows: (v_i - q, ||v_i - q||^2). For a positively oriented simplex the
  // query is inside the circumsphere iff sign(det) == (-1)^d.
  const int inside_sign = (d % 2 == 0) ? orient_sign : -orient_sign;

  double m[25];
  for (int i = 0; i < k; ++i) {
    double l = 0.0;
    for (int c = 0; c < d; ++c) {
      const double t = simplex[i][c] - q[c];
      m[i * k + c] = t;
      l += t * t;
    }
    m[i * k + d] = l;
  }
  bool certain = false;
  const int s = filtered_sign(m, k, certain);
  if (certain && s != 0) return s == inside_sign ? 1 : -1;

  // Exact path.
  std::vector<Rational> rm(static_cast<size_t>(k) * k);
  for (int i = 0; i < k; ++i) {
    Rational l(0);
    for (int c = 0; c < d; ++c) {
      const Rational t = exact(simplex[i][c]) - exact(q[c]);
      rm[i * k + c] = t;
      l += t * t;
    }
    rm[i * k + d] = l;
  }
  {
    std::vector<Rational> copy = rm;
    const int es = sign_of(rat_det(copy, k));
    if (es != 0) return es == inside_sign ? 1 : -1;
  }

  // Cospherical: expand the symbolic weights. Perturbing point p's lifted
  // coordinate by -w_p turns the last column into base + (w_q - w_{v_i}),
  // so det = det0 + sum_i (w_q - w_{v_i}) * C_i with C_i the cofactor of
  // entry (i, d). With w_p = eps^(id_p + 1), the lowest id with a nonzero
  // coefficient decides the sign.
  std::vector<Rational> cof(k);
  for (int i = 0; i < k; ++i) {
    std::vector<Rational> sub(static_cast<size_t>(d) * d);
    int r2 = 0;
    for (int r = 0; r < k; ++r) {
      if (r == i) continue;
      for (int c = 0; c < d; ++c) sub[r2 * d + c] = rm[r * k + c];
      ++r2;
    }
    cof[i] = rat_det(sub, d);
    if ((i + d) % 2 != 0) cof[i] = -cof[i];
  }
  struct Term {
    int id;
    int vertex;  // -1 for q
  };
  std::vector<Term> order;
  order.push_back({qid, -1});
  for (int i = 0; i < k; ++i) order.push_back({ids[i], i});
  std::sort(order.begin(), order.end(), [](const Term& a, const Term& b) { return a.id < b.id; });
  for (const Term& t : order) {
    Rational coeff(0);
    if (t.vertex < 0) {
      for (int i = 0; i < k; ++i) coeff += cof[i];
    } else {
      coeff = -cof[t.vertex];
    }
    const int cs = sign_of(coeff);
    if (cs != 0) return cs == inside_sign ? 1 : -1;
  }
  throw std::runtime_error("insphere: degenerate configuration beyond perturbation");
}

int insphere_sign(int d, const double* const* simplex, int orient_sign, const double* q) {
  const int k = d + 1;
  const int inside_sign = (d % 2 == 0) ? orient_sign : -orient_sign;
  double m[25];
  for (int i = 0; i < k; ++i) {
    double l = 0.0;
    for (int c = 0; c < d; ++c) {
      const double t = simplex[i][c] - q[c];
      m[i * k + c] = t;
      l += t * t;
    }
    m[i * k + d] = l;
  }
  bool certain = false;
  const int s = filtered_sign(m, k, certain);
  if (certain) return s == 0 ? 0 : (s == inside_sign ? 1 : -1);
  std::vector<Rational> rm(static_cast<size_t>(k) * k);
  for (int i = 0; i < k; ++i) {
    Rational l(0);
    for (int c = 0; c < d; ++c) {
      const Rational t = exact(simplex[i][c]) - exact(q[c]);
      rm[i * k + c] = t;
      l += t * t;
    }
    rm[i * k + d] = l;
  }
  const int es = sign_of(rat_det(rm, k));
  return es == 0 ? 0 : (es == inside_sign ? 1 : -1);
}

int affine_rank(int d, const double* origin, const double* const* pts, int k) {
  std::vector<Rational> m(static_cast<size_t>(k) * d);
  for (int i = 0; i < k; ++i)
    for (int c = 0; c < d; ++c)
      m[i * d + c] = exact(pts[i][c]) - exact(origin[c]);
  int rank = 0;
  for (int col = 0; col < d && rank < k; ++col) {
    int piv = -1;
    for (int r = rank; r < k; ++r)
      if (m[r * d + col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != rank)
      for (int c = col; c < d; ++c) std::swap(m[piv * d + c], m[rank * d + c]);
    for (int r = rank + 1; r < k; ++r) {
      if (m[r * d + col] == 0) continue;
      const Rational f = m[r * d + col] / m[rank * d + col];
      for (int c = col; c < d; ++c) m[r * d + c] -= f * m[rank * d + c];
    }
    ++rank;
  }
  return rank;
}

}  // namespace setscan::pred
