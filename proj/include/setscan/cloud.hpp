#pragma once

#include <string>
#include <utility>
#include <vector>

namespace setscan {

// Fixed-dimension point set, row-major storage. Immutable after construction.
class PointCloud {
public:
  PointCloud() = default;
  // Takes n*dim coordinates. Throws std::invalid_argument on dim < 1,
  // size mismatch, or non-finite coordinates.
  PointCloud(int dim, std::vector<double> coords);

  static PointCloud from_rows(const std::vector<std::vector<double>>& rows);

  int dim() const { return dim_; }
  int size() const { return n_; }
  bool empty() const { return n_ == 0; }
  const double* operator[](int i) const { return xs_.data() + static_cast<size_t>(i) * dim_; }
  const std::vector<double>& data() const { return xs_; }

private:
  int dim_ = 0;
  int n_ = 0;
  std::vector<double> xs_;
};

double dist2(const double* a, const double* b, int d);
double dist(const double* a, const double* b, int d);

// max_i min_{j != i} ||x_j - x_i||. Needs n >= 2.
double maxmin_nn(const PointCloud& cloud);

// max_{i,j} ||x_i - x_j||. Needs n >= 2.
double diameter(const PointCloud& cloud);

// Distance from x to the cloud and the index of the nearest point.
// Ties broken by lowest index; semantics identical to a linear scan.
std::pair<double, int> dist_point_to_cloud(const double* x, const PointCloud& cloud);

// One point per row, comma-separated. A non-numeric first row is treated as a
// header and skipped. Throws std::invalid_argument on ragged rows or parse
// failure, std::runtime_error when the file cannot be opened.
PointCloud read_csv(const std::string& path);
void write_csv(const PointCloud& cloud, const std::string& path);

}  // namespace setscan
