#include "setscan/cloud.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "setscan/spatial_index.hpp"

namespace setscan {

PointCloud::PointCloud(int dim, std::vector<double> coords) {
  if (dim < 1) throw std::invalid_argument("PointCloud: dim must be >= 1");
  if (coords.size() % static_cast<size_t>(dim) != 0)
    throw std::invalid_argument("PointCloud: coordinate count not a multiple of dim");
  for (double v : coords)
    if (!std::isfinite(v)) throw std::invalid_argument("PointCloud: non-finite coordinate");
  dim_ = dim;
  n_ = static_cast<int>(coords.size() / dim);
  xs_ = std::move(coords);
}

PointCloud PointCloud::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw std::invalid_argument("PointCloud: no rows");
  const int d = static_cast<int>(rows[0].size());
  std::vector<double> xs;
  xs.reserve(rows.size() * d);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != d)
      throw std::invalid_argument("PointCloud: inconsistent row length");
    xs.insert(xs.end(), r.begin(), r.end());
  }
  return PointCloud(d, std::move(xs));
}

double dist2(const double* a, const double* b, int d) {
  double s = 0.0;
  for (int k = 0; k < d; ++k) {
    const double t = a[k] - b[k];
    s += t * t;
  }
  return s;
}

double dist(const double* a, const double* b, int d) { return std::sqrt(dist2(a, b, d)); }

double maxmin_nn(const PointCloud& cloud) {
  const int n = cloud.size();
  if (n < 2) throw std::invalid_argument("maxmin_nn: need at least 2 points");
  const int d = cloud.dim();
  double worst = 0.0;
  if (n <= 256) {
    for (int i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        best = std::min(best, dist2(cloud[i], cloud[j], d));
      }
      worst = std::max(worst, best);
    }
  } else {
    SpatialIndex index(cloud);
    for (int i = 0; i < n; ++i)
      worst = std::max(worst, index.nearest_excluding(cloud[i], i).d2);
  }
  return std::sqrt(worst);
}

double diameter(const PointCloud& cloud) {
  const int n = cloud.size();
  if (n < 2) throw std::invalid_argument("diameter: need at least 2 points");
  const int d = cloud.dim();
  double best = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) best = std::max(best, dist2(cloud[i], cloud[j], d));
  return std::sqrt(best);
}

std::pair<double, int> dist_point_to_cloud(const double* x, const PointCloud& cloud) {
  if (cloud.empty()) throw std::invalid_argument("dist_point_to_cloud: empty cloud");
  const int d = cloud.dim();
  double best = std::numeric_limits<double>::infinity();
  int id = -1;
  for (int i = 0; i < cloud.size(); ++i) {
    const double d2 = dist2(x, cloud[i], d);
    if (d2 < best) {
      best = d2;
      id = i;
    }
  }
  return {std::sqrt(best), id};
}

namespace {

bool parse_double(const std::string& tok, double& out) {
  const char* b = tok.data();
  const char* e = b + tok.size();
  while (b < e && (*b == ' ' || *b == '\t')) ++b;
  while (e > b && (*(e - 1) == ' ' || *(e - 1) == '\t' || *(e - 1) == '\r')) --e;
  if (b == e) return false;
  auto [p, ec] = std::from_chars(b, e, out);
  return ec == std::errc() && p == e;
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::stringstream ss(line);
  while (std::getline(ss, cur, ',')) out.push_back(cur);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

PointCloud read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto toks = split_commas(line);
    std::vector<double> row(toks.size());
    bool ok = true;
    for (size_t k = 0; k < toks.size(); ++k)
      if (!parse_double(toks[k], row[k])) {
        ok = false;
        break;
      }
    if (!ok) {
      if (first) {
        first = false;  // header row
        continue;
      }
      throw std::invalid_argument("csv parse error at line " + std::to_string(lineno));
    }
    first = false;
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("csv has no data rows: " + path);
  return PointCloud::from_rows(rows);
}

void write_csv(const PointCloud& cloud, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  char buf[64];
  for (int i = 0; i < cloud.size(); ++i) {
    for (int k = 0; k < cloud.dim(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", cloud[i][k]);
      out << (k ? "," : "") << buf;
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace setscan
