#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pairdepth {

/// Raised on violated preconditions, malformed input and numerical failure.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Coords = std::span<const double>;

/// A point of R^n with finite coordinates.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);
  explicit Point(Coords coords);

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  Coords coords() const { return coords_; }
  operator Coords() const { return coords_; }  // NOLINT(google-explicit-constructor)

  bool operator==(const Point&) const = default;

 private:
  std::vector<double> coords_;
};

/// Finite list of points of a common dimension, stored row-major.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t dim);
  PointSet(std::size_t dim, std::vector<double> flat);
  static PointSet from_points(std::span<const Point> points);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : data_.size() / dim_; }
  bool empty() const { return data_.empty(); }

  Coords operator[](std::size_t i) const { return {data_.data() + i * dim_, dim_}; }
  Point point(std::size_t i) const { return Point((*this)[i]); }

  void push_back(Coords p);
  PointSet subset(std::span<const std::size_t> indices) const;

  std::span<const double> flat() const { return data_; }

  bool operator==(const PointSet&) const = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

/// Symmetric matrix of pairwise distances with a zero diagonal.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  /// Validates symmetry, the zero diagonal and nonnegativity; throws Error otherwise.
  DistanceMatrix(std::size_t n, std::vector<double> entries);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const { return {d_.data() + i * n_, n_}; }

  /// Number of ordered triples (i, j, k) with d(i,k) > d(i,j) + d(j,k) + tol.
  /// Advisory only: construction never rejects a matrix on this basis.
  std::size_t triangle_violations(double tol = 1e-9) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> d_;
};

double euclidean_distance(Coords a, Coords b);
double squared_distance(Coords a, Coords b);
double dot(Coords a, Coords b);
Point midpoint(Coords a, Coords b);

DistanceMatrix distance_matrix(const PointSet& x);

/// Largest pairwise distance; 0 for a single point. Throws on an empty set.
double diameter(const PointSet& x);
double diameter(const DistanceMatrix& d, std::span<const std::size_t> indices);

void require_same_dim(std::size_t a, std::size_t b, std::string_view what);

// Point generators -----------------------------------------------------------

enum class Distribution { UniformCube, Gaussian, Circle, Grid };

Distribution parse_distribution(std::string_view name);
std::string_view to_string(Distribution d);

/// Deterministic in (kind, dim, count, seed). Random kinds redraw colliding
/// points up to a fixed retry bound. `grid` ignores the seed and fills the
/// first `count` nodes of the smallest k^n lattice on [0,1]^n.
PointSet generate(Distribution kind, std::size_t dim, std::size_t count, std::uint64_t seed);

}  // namespace pairdepth
