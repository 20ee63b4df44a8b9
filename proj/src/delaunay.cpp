#include "setscan/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "setscan/predicates.hpp"
#include "setscan/rng.hpp"

// Incremental Bowyer-Watson insertion for d in 2..4, with one symbolic
// vertex at infinity so hull updates need no special casing: every hull
// facet is the finite facet of an "infinite" cell. A point conflicts with a
// finite cell when the (perturbed) insphere test puts it inside the
// circumball, and with an infinite cell when it lies strictly beyond the
// hull facet, or on its hyperplane and inside the finite neighbor's ball.
// The cavity of conflicting cells is emptied and re-starred from the new
// point. All predicate decisions are exact, so the empty-open-circumball
// postcondition holds for arbitrary (non-duplicate, full-rank) input.

namespace setscan {

namespace {

constexpr int kInf = -1;

using pred::Rational;

double rat_to_double(const Rational& r) {
  using boost::multiprecision::cpp_int;
  if (r == 0) return 0.0;
  cpp_int num = boost::multiprecision::numerator(r);
  cpp_int den = boost::multiprecision::denominator(r);
  bool neg = false;
  if (num < 0) {
    neg = true;
    num = -num;
  }
  const long shift = static_cast<long>(msb(num)) - static_cast<long>(msb(den)) - 62;
  if (shift > 0)
    den <<= shift;
  else if (shift < 0)
    num <<= -shift;
  const cpp_int q = num / den;
  const double v = std::ldexp(static_cast<double>(q.convert_to<uint64_t>()),
                              static_cast<int>(shift));
  return neg ? -v : v;
}

struct BCell {
  std::array<int, 5> v{};   // vertex ids, kInf for the infinity vertex
  std::array<int, 5> nb{};  // neighbor cell across facet opposite each slot
  int8_t orient = 0;        // exact orientation of slot order; 0 for infinite cells
  uint8_t alive = 0;
};

class Builder {
public:
  Builder(const PointCloud& cloud) : pts_(cloud), d_(cloud.dim()), n_(cloud.size()) {}

  Triangulation run();

private:
  const PointCloud& pts_;
  int d_, n_;
  std::vector<BCell> cells_;
  std::vector<int> free_;
  std::vector<uint32_t> stamp_;
  std::vector<uint32_t> seen_stamp_;
  std::vector<uint8_t> in_conflict_;
  uint32_t round_ = 0;
  int last_ = -1;
  Rng walk_rng_{0x5e7c0de5u};

  const double* P(int id) const { return pts_[id]; }

  int inf_slot(const BCell& c) const {
    for (int k = 0; k <= d_; ++k)
      if (c.v[k] == kInf) return k;
    return -1;
  }

  int new_cell() {
    if (!free_.empty()) {
      const int id = free_.back();
      free_.pop_back();
      cells_[id] = BCell{};
      cells_[id].alive = 1;
      return id;
    }
    cells_.emplace_back();
    cells_.back().alive = 1;
    stamp_.push_back(0);
    seen_stamp_.push_back(0);
    in_conflict_.push_back(0);
    return static_cast<int>(cells_.size()) - 1;
  }

  int cell_orient(const std::array<int, 5>& v) const {
    const double* p[5];
    for (int i = 0; i <= d_; ++i) p[i] = P(v[i]);
    return pred::orient(d_, p);
  }

  bool conflict(int ci, const double* q, int qid) {
    const BCell& c = cells_[ci];
    const int m = inf_slot(c);
    if (m < 0) {
      const double* p[5];
      int ids[5];
      for (int i = 0; i <= d_; ++i) {
        p[i] = P(c.v[i]);
        ids[i] = c.v[i];
      }
      return pred::insphere(d_, p, ids, c.orient, q, qid) > 0;
    }
    // Facet points in slot order; orientation compared against the finite
    // neighbor's opposite vertex determines the outer side.
    const double* f[5];
    int cnt = 0;
    for (int i = 0; i <= d_; ++i)
      if (i != m) f[cnt++] = P(c.v[i]);
    const int ni = c.nb[m];
    const BCell& nb = cells_[ni];
    int aslot = -1;
    for (int j = 0; j <= d_; ++j)
      if (nb.nb[j] == ci) {
        aslot = j;
        break;
      }
    f[d_] = q;
    const int sp = pred::orient(d_, f);
    if (sp == 0) return conflict(ni, q, qid);
    f[d_] = P(nb.v[aslot]);
    const int sa = pred::orient(d_, f);
    return sp != sa;
  }

  bool conflict_cached(int ci, const double* q, int qid) {
    if (stamp_[ci] == round_) return in_conflict_[ci] != 0;
    const bool r = conflict(ci, q, qid);
    stamp_[ci] = round_;
    in_conflict_[ci] = r ? 1 : 0;
    return r;
  }

  int locate(const double* q, int qid) {
    int cur = last_;
    if (cur < 0 || !cells_[cur].alive) {
      for (int i = 0; i < static_cast<int>(cells_.size()); ++i)
        if (cells_[i].alive) {
          cur = i;
          break;
        }
    }
    const long cap = 200 + 50l * static_cast<long>(cells_.size());
    for (long step = 0; step < cap; ++step) {
      const BCell& c = cells_[cur];
      const int m = inf_slot(c);
      if (m >= 0) {
        if (conflict_cached(cur, q, qid)) return cur;
        cur = c.nb[m];
        continue;
      }
      const int off = walk_rng_.uniform_int(d_ + 1);
      int next = -1;
      for (int t = 0; t <= d_; ++t) {
        const int k = (t + off) % (d_ + 1);
        const double* f[5];
        int cnt = 0;
        for (int i = 0; i <= d_; ++i)
          if (i != k) f[cnt++] = P(c.v[i]);
        f[d_] = q;
        const int sp = pred::orient(d_, f);
        if (sp == 0) continue;
        const int sv = ((d_ - k) % 2 == 0) ? c.orient : -c.orient;
        if (sp != sv) {
          next = c.nb[k];
          break;
        }
      }
      if (next < 0) return cur;  // inside the closed cell
      cur = next;
    }
    throw std::runtime_error("delaunay: point location did not terminate");
  }

  void insert(int pid);

  void make_initial(const std::vector<int>& simplex_ids);

  Triangulation finalize();

  void circumsphere(const std::array<int, 5>& v, std::array<double, 4>& center,
                    double& radius) const;
};

void Builder::make_initial(const std::vector<int>& ids) {
  std::array<int, 5> v{};
  for (int i = 0; i <= d_; ++i) v[i] = ids[i];
  const int fin = new_cell();
  cells_[fin].v = v;
  cells_[fin].orient = static_cast<int8_t>(cell_orient(v));
  std::array<int, 5> infs{};
  for (int k = 0; k <= d_; ++k) {
    const int ic = new_cell();
    infs[k] = ic;
    cells_[ic].v = v;
    cells_[ic].v[k] = kInf;
    cells_[ic].orient = 0;
    cells_[ic].nb[k] = fin;
    cells_[fin].nb[k] = ic;
  }
  for (int k = 0; k <= d_; ++k)
    for (int j = 0; j <= d_; ++j)
      if (j != k) cells_[infs[k]].nb[j] = infs[j];
  last_ = fin;
}

void Builder::insert(int pid) {
  const double* q = P(pid);
  ++round_;
  int seed = locate(q, pid);
  if (!conflict_cached(seed, q, pid)) {
    // Cospherical tie resolved against the located cell; scan for the true
    // conflict region (rare, degenerate inputs only).
    seed = -1;
    for (int i = 0; i < static_cast<int>(cells_.size()); ++i) {
      if (!cells_[i].alive) continue;
      if (conflict_cached(i, q, pid)) {
        seed = i;
        break;
      }
    }
    if (seed < 0) throw std::runtime_error("delaunay: no conflict cell found");
  }

  std::vector<int> cavity;
  std::vector<std::pair<int, int>> boundary;  // (cavity cell, slot)
  std::vector<int> stack{seed};
  seen_stamp_[seed] = round_;
  while (!stack.empty()) {
    const int ci = stack.back();
    stack.pop_back();
    cavity.push_back(ci);
    for (int k = 0; k <= d_; ++k) {
      const int nb = cells_[ci].nb[k];
      if (conflict_cached(nb, q, pid)) {
        if (seen_stamp_[nb] != round_) {
          seen_stamp_[nb] = round_;
          stack.push_back(nb);
        }
      } else {
        boundary.emplace_back(ci, k);
      }
    }
  }

  struct Ridge {
    std::array<int, 4> key;
    int cell, slot;
  };
  std::vector<Ridge> ridges;
  ridges.reserve(boundary.size() * d_);
  std::vector<int> created;
  created.reserve(boundary.size());

  for (const auto& [ci, k] : boundary) {
    const int oi = cells_[ci].nb[k];
    std::array<int, 5> v = cells_[ci].v;
    v[k] = pid;
    const int nc = new_cell();
    created.push_back(nc);
    cells_[nc].v = v;
    bool infinite = false;
    for (int i = 0; i <= d_; ++i)
      if (v[i] == kInf) infinite = true;
    if (infinite) {
      cells_[nc].orient = 0;
    } else {
      const int o = cell_orient(v);
      if (o == 0) throw std::runtime_error("delaunay: flat cell created");
      cells_[nc].orient = static_cast<int8_t>(o);
    }
    cells_[nc].nb[k] = oi;
    for (int j = 0; j <= d_; ++j)
      if (cells_[oi].nb[j] == ci) {
        cells_[oi].nb[j] = nc;
        break;
      }
    for (int j = 0; j <= d_; ++j) {
      if (j == k) continue;
      std::array<int, 4> key{-2, -2, -2, -2};
      int cnt = 0;
      for (int t = 0; t <= d_; ++t)
        if (t != j && t != k) key[cnt++] = cells_[ci].v[t];
      std::sort(key.begin(), key.begin() + cnt);
      bool wired = false;
      for (auto& r : ridges) {
        if (r.key == key) {
          cells_[nc].nb[j] = r.cell;
          cells_[r.cell].nb[r.slot] = nc;
          wired = true;
          break;
        }
      }
      if (!wired) ridges.push_back({key, nc, j});
    }
  }

  for (int ci : cavity) {
    cells_[ci].alive = 0;
    free_.push_back(ci);
  }
  last_ = created.back();
}

void Builder::circumsphere(const std::array<int, 5>& v, std::array<double, 4>& center,
                           double& radius) const {
  // Solve 2 u_i . y = ||u_i||^2 with u_i = v_i - v_0; center = v_0 + y.
  const double* p0 = P(v[0]);
  long double a[4][5];
  for (int i = 0; i < d_; ++i) {
    long double l = 0.0L;
    for (int c = 0; c < d_; ++c) {
      const long double u = static_cast<long double>(P(v[i + 1])[c]) - p0[c];
      a[i][c] = 2.0L * u;
      l += u * u;
    }
    a[i][d_] = l;
  }
  bool singular = false;
  for (int col = 0; col < d_ && !singular; ++col) {
    int piv = col;
    for (int r = col + 1; r < d_; ++r)
      if (std::fabs(static_cast<double>(a[r][col])) >
          std::fabs(static_cast<double>(a[piv][col])))
        piv = r;
    if (a[piv][col] == 0.0L) {
      singular = true;
      break;
    }
    if (piv != col)
      for (int c = col; c <= d_; ++c) std::swap(a[piv][c], a[col][c]);
    for (int r = col + 1; r < d_; ++r) {
      const long double f = a[r][col] / a[col][col];
      for (int c = col; c <= d_; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::array<double, 4> y{};
  if (!singular) {
    long double sol[4];
    for (int r = d_ - 1; r >= 0; --r) {
      long double s = a[r][d_];
      for (int c = r + 1; c < d_; ++c) s -= a[r][c] * sol[c];
      sol[r] = s / a[r][r];
    }
    for (int c = 0; c < d_; ++c) y[c] = static_cast<double>(sol[c]);
  }

  auto fill = [&](const std::array<double, 4>& yy) {
    double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
    for (int c = 0; c < d_; ++c) center[c] = p0[c] + yy[c];
    for (int i = 0; i <= d_; ++i) {
      const double r = dist(center.data(), P(v[i]), d_);
      rmin = std::min(rmin, r);
      rmax = std::max(rmax, r);
    }
    radius = rmax;
    return rmax == 0.0 || (rmax - rmin) <= 1e-10 * rmax;
  };
  if (!singular && fill(y)) return;

  // Exact fallback for ill-conditioned simplices.
  std::vector<Rational> ra(static_cast<size_t>(d_) * d_), rb(d_);
  for (int i = 0; i < d_; ++i) {
    Rational l(0);
    for (int c = 0; c < d_; ++c) {
      const Rational u = pred::exact(P(v[i + 1])[c]) - pred::exact(p0[c]);
      ra[i * d_ + c] = 2 * u;
      l += u * u;
    }
    rb[i] = l;
  }
  for (int col = 0; col < d_; ++col) {
    int piv = -1;
    for (int r = col; r < d_; ++r)
      if (ra[r * d_ + col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::runtime_error("delaunay: degenerate simplex in circumsphere");
    if (piv != col) {
      for (int c = col; c < d_; ++c) std::swap(ra[piv * d_ + c], ra[col * d_ + c]);
      std::swap(rb[piv], rb[col]);
    }
    for (int r = col + 1; r < d_; ++r) {
      if (ra[r * d_ + col] == 0) continue;
      const Rational f = ra[r * d_ + col] / ra[col * d_ + col];
      for (int c = col; c < d_; ++c) ra[r * d_ + c] -= f * ra[col * d_ + c];
      rb[r] -= f * rb[col];
    }
  }
  std::vector<Rational> sol(d_);
  for (int r = d_ - 1; r >= 0; --r) {
    Rational s = rb[r];
    for (int c = r + 1; c < d_; ++c) s -= ra[r * d_ + c] * sol[c];
    sol[r] = s / ra[r * d_ + r];
  }
  std::array<double, 4> ye{};
  for (int c = 0; c < d_; ++c) ye[c] = rat_to_double(sol[c]);
  fill(ye);
}

Triangulation Builder::run() {
  if (d_ < 2 || d_ > 4) throw std::invalid_argument("build_delaunay: dim must be in 2..4");
  if (n_ < d_ + 1) throw std::invalid_argument("build_delaunay: need at least d+1 points");

  {  // exact duplicate rejection
    std::vector<int> order(n_);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return std::lexicographical_compare(P(a), P(a) + d_, P(b), P(b) + d_);
    });
    for (int i = 0; i + 1 < n_; ++i)
      if (std::equal(P(order[i]), P(order[i]) + d_, P(order[i + 1])))
        throw DuplicatePointsError();
  }

  // Deterministic insertion order.
  std::vector<int> order(n_);
  std::iota(order.begin(), order.end(), 0);
  {
    Rng shuffle_rng(0x9e3779b97f4a7c15ull);
    for (int i = n_ - 1; i > 0; --i)
      std::swap(order[i], order[shuffle_rng.uniform_int(i + 1)]);
  }

  // Initial simplex: greedily extend an affinely independent set.
  std::vector<int> base{order[0]};
  std::vector<uint8_t> used(n_, 0);
  used[order[0]] = 1;
  for (int t = 1; t < n_ && static_cast<int>(base.size()) < d_ + 1; ++t) {
    const int cand = order[t];
    const double* rel[4];
    int k = 0;
    for (size_t i = 1; i < base.size(); ++i) rel[k++] = P(base[i]);
    rel[k++] = P(cand);
    if (pred::affine_rank(d_, P(base[0]), rel, k) == k) {
      base.push_back(cand);
      used[cand] = 1;
    }
  }
  if (static_cast<int>(base.size()) < d_ + 1)
    throw DegenerateInputError("degenerate input: affine hull dimension < " +
                               std::to_string(d_));

  make_initial(base);
  for (int t = 0; t < n_; ++t)
    if (!used[order[t]]) insert(order[t]);

  return finalize();
}

Triangulation Builder::finalize() {
  Triangulation tri;
  tri.dim = d_;
  tri.n = n_;
  tri.on_hull.assign(n_, 0);
  tri.incident.assign(n_, {});
  for (const BCell& c : cells_) {
    if (!c.alive) continue;
    if (inf_slot(c) >= 0) continue;
    Simplex s;
    for (int i = 0; i <= d_; ++i) s.vertices[i] = c.v[i];
    circumsphere(c.v, s.circumcenter, s.circumradius);
    const int id = static_cast<int>(tri.simplices.size());
    tri.simplices.push_back(s);
    for (int i = 0; i <= d_; ++i) tri.incident[c.v[i]].push_back(id);
  }
  for (int si = 0; si < static_cast<int>(tri.simplices.size()); ++si) {
    const Simplex& s = tri.simplices[si];
    for (int k = 0; k <= d_; ++k) {
      FacetKey key;
      int cnt = 0;
      for (int i = 0; i <= d_; ++i)
        if (i != k) key.v[cnt++] = s.vertices[i];
      std::sort(key.v.begin(), key.v.begin() + cnt);
      auto it = tri.facets.find(key);
      if (it == tri.facets.end())
        tri.facets.emplace(key, std::array<int, 2>{si, -1});
      else
        it->second[1] = si;
    }
  }
  for (const auto& [key, cells] : tri.facets) {
    if (cells[1] >= 0) continue;
    tri.hull_facets.push_back(key);
    for (int i = 0; i < d_; ++i) tri.on_hull[key.v[i]] = 1;
  }
  return tri;
}

}  // namespace

Triangulation build_delaunay(const PointCloud& cloud) {
  Builder b(cloud);
  return b.run();
}

std::vector<VoronoiCellSummary> voronoi_summaries(const Triangulation& tri,
                                                  const PointCloud& cloud) {
  if (tri.n != cloud.size() || tri.dim != cloud.dim())
    throw std::invalid_argument("voronoi_summaries: triangulation does not match cloud");
  std::vector<VoronoiCellSummary> out(tri.n);
  for (int i = 0; i < tri.n; ++i) {
    VoronoiCellSummary& s = out[i];
    s.generator = i;
    s.unbounded = tri.on_hull[i] != 0;
    s.vertex_simplices = tri.incident[i];
    if (s.unbounded) {
      s.delta = std::numeric_limits<double>::infinity();
      continue;
    }
    double best = 0.0;
    for (int si : tri.incident[i])
      best = std::max(best, dist(cloud[i], tri.simplices[si].circumcenter.data(), tri.dim));
    s.delta = best;
  }
  return out;
}

}  // namespace setscan
