#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pairdepth/geometry.hpp"

namespace pairdepth {

enum class ShapeKind { Ball, Lens, Ellipsoid, Box, Segment };

/// A family of two-point hulls S(x, y). All members are closed sets,
/// symmetric in (x, y), contain both endpoints, and S(x, x) = {x}.
///
///   ball        (x - z).(y - z) <= 0, the ball with diameter [x, y]
///   lens:a      angle(x - z, y - z) >= a, 0 <= a < pi (a = pi/2 is the ball)
///   ellipsoid:a |z - x| + |z - y| <= (1 + a)|x - y|, a > 0
///   box         min(x_i, y_i) <= z_i <= max(x_i, y_i) for every i
///   segment     z on [x, y], collinearity within a relative 1e-9
class PairShape {
 public:
  static PairShape ball() { return PairShape(ShapeKind::Ball, 0.0); }
  static PairShape lens(double angle);
  static PairShape ellipsoid(double a);
  static PairShape box() { return PairShape(ShapeKind::Box, 0.0); }
  static PairShape segment() { return PairShape(ShapeKind::Segment, 0.0); }

  /// Parses `ball`, `lens:<radians>`, `ellipsoid:<a>`, `box` or `segment`.
  static PairShape parse(std::string_view spec);

  ShapeKind kind() const { return kind_; }
  double parameter() const { return param_; }
  std::string spec() const;

  /// Ball, lens and ellipsoid have positive volume fraction near y.
  bool is_t_shape() const;

  bool contains(Coords z, Coords x, Coords y) const;

  bool operator==(const PairShape&) const = default;

 private:
  PairShape(ShapeKind kind, double param);

  ShapeKind kind_ = ShapeKind::Ball;
  double param_ = 0.0;
  double cos_param_ = 0.0;
};

/// z in S(x, y). Throws Error on a dimension mismatch.
bool member(const PairShape& shape, Coords z, Coords x, Coords y);

struct RadiusFraction {
  double radius;
  double fraction;
};

struct TEstimate {
  PairShape shape;
  std::size_t dim = 0;
  double t_hat = 0.0;
  std::size_t samples_per_radius = 0;
  std::vector<RadiusFraction> per_radius;  // one row per tested radius, decreasing r
  double argmin_radius = 0.0;
  double ci_halfwidth = 0.0;  // 95% normal approximation at argmin_radius
};

inline constexpr std::size_t kDefaultTSamples = 100000;
inline constexpr std::size_t kDefaultTRadii = 32;

/// Monte-Carlo estimate of the largest t with vol(S(x,y) ∩ B_r(y)) >= t vol(B_r(y))
/// for the canonical pair x = e_1, y = 0 over a geometric grid of radii in (0, 1].
/// Radii are r_k = 1000^(-k/(radii-1)). Each radius draws from its own stream
/// Rng::derive(seed, k), so the result does not depend on evaluation order.
TEstimate estimate_t(const PairShape& shape, std::size_t dim, std::size_t samples = kDefaultTSamples,
                     std::size_t radii = kDefaultTRadii, std::uint64_t seed = 1);

}  // namespace pairdepth
