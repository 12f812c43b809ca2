#include "pairdepth/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "pairdepth/rng.hpp"

namespace pairdepth {

namespace {

void require_finite(Coords c) {
  for (double v : c) {
    if (!std::isfinite(v)) throw Error("point coordinates must be finite");
  }
}

constexpr int kMaxRedraws = 1000;

}  // namespace

void require_same_dim(std::size_t a, std::size_t b, std::string_view what) {
  if (a != b) {
    throw Error(std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                std::to_string(b) + ")");
  }
}

// Point ----------------------------------------------------------------------

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw Error("a point needs at least one coordinate");
  require_finite(coords_);
}

Point::Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

Point::Point(Coords coords) : Point(std::vector<double>(coords.begin(), coords.end())) {}

// PointSet -------------------------------------------------------------------

PointSet::PointSet(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw Error("point set dimension must be positive");
}

PointSet::PointSet(std::size_t dim, std::vector<double> flat) : dim_(dim), data_(std::move(flat)) {
  if (dim == 0) throw Error("point set dimension must be positive");
  if (data_.size() % dim != 0) throw Error("flat coordinate buffer is not a multiple of the dimension");
  require_finite(data_);
}

PointSet PointSet::from_points(std::span<const Point> points) {
  if (points.empty()) throw Error("cannot infer dimension of an empty point list");
  PointSet out(points.front().dim());
  for (const auto& p : points) out.push_back(p);
  return out;
}

void PointSet::push_back(Coords p) {
  require_same_dim(dim_, p.size(), "PointSet::push_back");
  require_finite(p);
  data_.insert(data_.end(), p.begin(), p.end());
}

PointSet PointSet::subset(std::span<const std::size_t> indices) const {
  PointSet out(dim_);
  out.data_.reserve(indices.size() * dim_);
  for (std::size_t i : indices) out.push_back((*this)[i]);
  return out;
}

// DistanceMatrix -------------------------------------------------------------

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), d_(std::move(entries)) {
  if (d_.size() != n * n) throw Error("distance matrix must have n*n entries");
  for (std::size_t i = 0; i < n; ++i) {
    if (d_[i * n + i] != 0.0) throw Error("distance matrix diagonal must be zero");
    for (std::size_t j = 0; j < n; ++j) {
      const double v = d_[i * n + j];
      if (!std::isfinite(v) || v < 0.0) throw Error("distances must be finite and nonnegative");
      if (v != d_[j * n + i]) throw Error("distance matrix must be symmetric");
    }
  }
}

std::size_t DistanceMatrix::triangle_violations(double tol) const {
  std::size_t bad = 0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k)
        if ((*this)(i, k) > (*this)(i, j) + (*this)(j, k) + tol) ++bad;
  return bad;
}

// Metric primitives ----------------------------------------------------------

double squared_distance(Coords a, Coords b) {
  require_same_dim(a.size(), b.size(), "distance");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

double euclidean_distance(Coords a, Coords b) { return std::sqrt(squared_distance(a, b)); }

double dot(Coords a, Coords b) {
  require_same_dim(a.size(), b.size(), "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Point midpoint(Coords a, Coords b) {
  require_same_dim(a.size(), b.size(), "midpoint");
  std::vector<double> m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = 0.5 * (a[i] + b[i]);
  return Point(std::move(m));
}

DistanceMatrix distance_matrix(const PointSet& x) {
  const std::size_t n = x.size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = euclidean_distance(x[i], x[j]);
      d[i * n + j] = v;
      d[j * n + i] = v;
    }
  }
  return DistanceMatrix(n, std::move(d));
}

double diameter(const PointSet& x) {
  if (x.empty()) throw Error("diameter of an empty set is undefined");
  double best = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      best = std::max(best, squared_distance(x[i], x[j]));
  return std::sqrt(best);
}

double diameter(const DistanceMatrix& d, std::span<const std::size_t> indices) {
  if (indices.empty()) throw Error("diameter of an empty subset is undefined");
  double best = 0.0;
  for (std::size_t a = 0; a < indices.size(); ++a)
    for (std::size_t b = a + 1; b < indices.size(); ++b)
      best = std::max(best, d(indices[a], indices[b]));
  return best;
}

// Generators -----------------------------------------------------------------

Distribution parse_distribution(std::string_view name) {
  if (name == "uniform-cube") return Distribution::UniformCube;
  if (name == "gaussian") return Distribution::Gaussian;
  if (name == "circle") return Distribution::Circle;
  if (name == "grid") return Distribution::Grid;
  throw Error("unknown distribution '" + std::string(name) +
              "' (expected uniform-cube, gaussian, circle or grid)");
}

std::string_view to_string(Distribution d) {
  switch (d) {
    case Distribution::UniformCube: return "uniform-cube";
    case Distribution::Gaussian: return "gaussian";
    case Distribution::Circle: return "circle";
    case Distribution::Grid: return "grid";
  }
  return "?";
}

namespace {

PointSet generate_grid(std::size_t dim, std::size_t count) {
  std::size_t side = 1;
  auto capacity = [&](std::size_t k) {
    double c = 1.0;
    for (std::size_t i = 0; i < dim; ++i) c *= static_cast<double>(k);
    return c;
  };
  while (capacity(side) < static_cast<double>(count)) ++side;

  PointSet out(dim);
  std::vector<std::size_t> digits(dim, 0);
  std::vector<double> p(dim);
  for (std::size_t idx = 0; idx < count; ++idx) {
    for (std::size_t i = 0; i < dim; ++i)
      p[i] = side == 1 ? 0.0 : static_cast<double>(digits[i]) / static_cast<double>(side - 1);
    out.push_back(p);
    // Odometer increment; the last coordinate varies fastest.
    for (std::size_t i = dim; i-- > 0;) {
      if (++digits[i] < side) break;
      digits[i] = 0;
    }
  }
  return out;
}

}  // namespace

PointSet generate(Distribution kind, std::size_t dim, std::size_t count, std::uint64_t seed) {
  if (dim == 0) throw Error("dimension must be positive");
  if (kind == Distribution::Circle && dim != 2) {
    throw Error("the circle distribution requires n = 2 (got n = " + std::to_string(dim) + ")");
  }
  if (kind == Distribution::Grid) return generate_grid(dim, count);

  Rng rng(seed);
  PointSet out(dim);
  std::set<std::vector<double>> seen;
  std::vector<double> p(dim);
  for (std::size_t idx = 0; idx < count; ++idx) {
    bool placed = false;
    for (int attempt = 0; attempt <= kMaxRedraws && !placed; ++attempt) {
      switch (kind) {
        case Distribution::UniformCube:
          for (auto& v : p) v = rng.uniform();
          break;
        case Distribution::Gaussian:
          for (auto& v : p) v = rng.normal();
          break;
        case Distribution::Circle: {
          const double theta = 2.0 * std::numbers::pi * rng.uniform();
          p[0] = std::cos(theta);
          p[1] = std::sin(theta);
          break;
        }
        case Distribution::Grid:
          break;
      }
      placed = seen.insert(p).second;
    }
    if (!placed) throw Error("generator could not draw a fresh distinct point within the retry bound");
    out.push_back(p);
  }
  return out;
}

}  // namespace pairdepth
