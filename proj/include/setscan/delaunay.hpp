#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "setscan/cloud.hpp"

namespace setscan {

struct DuplicatePointsError : std::runtime_error {
  DuplicatePointsError() : std::runtime_error("duplicate points") {}
};

struct DegenerateInputError : std::runtime_error {
  explicit DegenerateInputError(const std::string& what) : std::runtime_error(what) {}
};

struct Simplex {
  std::array<int, 5> vertices{};  // d+1 generator ids
  std::array<double, 4> circumcenter{};
  double circumradius = 0.0;
};

// Sorted vertex ids of a (d-1)-face; unused slots stay at -2.
struct FacetKey {
  std::array<int, 4> v{-2, -2, -2, -2};
  bool operator==(const FacetKey&) const = default;
};

struct FacetKeyHash {
  size_t operator()(const FacetKey& k) const {
    size_t h = 0xcbf29ce484222325ull;
    for (int x : k.v) h = (h ^ static_cast<size_t>(x + 3)) * 0x100000001b3ull;
    return h;
  }
};

// Delaunay triangulation of the cloud. Invariant: the open circumball of
// every simplex contains no cloud point (cospherical points may lie on the
// sphere). Interior facets are shared by exactly two simplices, hull facets
// by one.
struct Triangulation {
  int dim = 0;
  int n = 0;
  std::vector<Simplex> simplices;
  // facet -> incident simplex ids; second entry is -1 for hull facets
  std::unordered_map<FacetKey, std::array<int, 2>, FacetKeyHash> facets;
  std::vector<FacetKey> hull_facets;
  std::vector<char> on_hull;               // per generator
  std::vector<std::vector<int>> incident;  // generator -> simplex ids
};

// Throws DuplicatePointsError, DegenerateInputError (affine hull dimension
// < d), std::invalid_argument for dim outside 2..4 or n < d+1.
Triangulation build_delaunay(const PointCloud& cloud);

struct VoronoiCellSummary {
  int generator = -1;
  bool unbounded = false;
  // sup of ||z - x_i|| over the cell; +infinity exactly when unbounded,
  // otherwise attained at a cell vertex (an incident circumcenter).
  double delta = 0.0;
  // Voronoi vertices of the cell, as ids of incident simplices whose
  // circumcenters they are.
  std::vector<int> vertex_simplices;
};

std::vector<VoronoiCellSummary> voronoi_summaries(const Triangulation& tri,
                                                  const PointCloud& cloud);

}  // namespace setscan
