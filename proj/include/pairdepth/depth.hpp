#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pairdepth/geometry.hpp"
#include "pairdepth/shapes.hpp"

namespace pairdepth {

/// Which pair count a depth bound is compared against.
enum class CountBasis { Ordered, Unordered };

std::string_view to_string(CountBasis b);

/// A witness point together with its exact pair coverage.
struct DepthReport {
  Point witness;
  std::uint64_t ordered_pair_count = 0;
  std::uint64_t unordered_pair_count = 0;  // meaningful for a single symmetric universe
  std::uint64_t pair_universe = 0;         // N*M (colorful) or N*(N-1) (one set)
  double fraction = 0.0;                   // ordered_pair_count / pair_universe
  double bound = 0.0;
  CountBasis basis = CountBasis::Ordered;
  bool bound_met = false;
  bool certified = true;  // false when the witness came from an uncertified centerpoint
};

/// Ordered pairs (a, b) in A x B whose shape contains z. Passing the same
/// object twice counts distinct-index pairs only, like pair_depth(z, X, shape).
std::uint64_t pair_depth(Coords z, const PointSet& a, const PointSet& b, const PairShape& shape);

/// Ordered pairs (i, j), i != j, of X with z in S(x_i, x_j).
std::uint64_t pair_depth(Coords z, const PointSet& x, const PairShape& shape);

// Halfspace depth -------------------------------------------------------------

enum class DepthMethod { Exact1D, Exact2D, Directional };

std::string_view to_string(DepthMethod m);

struct TukeyDepth {
  std::uint64_t depth = 0;
  DepthMethod method = DepthMethod::Exact1D;
  std::uint64_t directions_checked = 0;
};

inline constexpr std::size_t kRandomDirections = 10000;
inline constexpr std::size_t kHyperplaneNormalLimit = 20;  // enumerate (n-1)-subsets up to this N

/// Minimum number of points of X in a closed halfspace whose boundary passes
/// through z. Exact for n <= 2. For n >= 3 the value is the minimum over a
/// finite direction set (normalized z-to-point vectors, hyperplane normals
/// through z and n-1 points when N <= kHyperplaneNormalLimit, and
/// `random_directions` seeded directions); it can only shrink toward the true
/// depth as directions are added.
TukeyDepth tukey_depth(Coords z, const PointSet& x, std::size_t random_directions = kRandomDirections,
                       std::uint64_t seed = 0x5eed);

/// Count of points of X in the closed halfspace {p : (p - z).u >= 0}.
std::uint64_t halfspace_count(Coords z, Coords u, const PointSet& x);

/// Minimum halfspace_count over the given directions (the directional depth).
std::uint64_t directional_depth(Coords z, const PointSet& x, const std::vector<std::vector<double>>& dirs);

// Radon points and centerpoints ----------------------------------------------

struct RadonPartition {
  Point point;
  std::vector<std::size_t> positive;  // indices with lambda > 0
  std::vector<std::size_t> rest;      // indices with lambda <= 0
  std::vector<double> lambda;         // null vector, sum 0, sum lambda_i p_i = 0
};

/// Radon partition of n + 2 points in R^n from a null vector of the
/// (n+1) x (n+2) system [p_1 ... p_{n+2}; 1 ... 1]. Throws Error on numerical failure.
RadonPartition radon_partition(const PointSet& p);
Point radon_point(const PointSet& p);

struct CenterpointCertificate {
  Point z;
  std::uint64_t claimed_depth = 0;
  std::uint64_t target = 0;  // ceil(N / (n + 1))
  DepthMethod method = DepthMethod::Exact1D;
  std::uint64_t directions_checked = 0;
  bool certified = false;
};

inline constexpr std::size_t kDefaultEffort = 600;

/// Iterated-Radon centerpoint search followed by depth certification.
/// Certification is exact for n <= 2. For n >= 3 the certificate reports the
/// directional depth and is never marked certified.
CenterpointCertificate centerpoint(const PointSet& x, std::size_t effort = kDefaultEffort,
                                   std::uint64_t seed = 1);

/// Ball pairs S(a, b), a in A, b in B, covering a centerpoint of A. The bound
/// is N*M/(n+1); when A and B are the same object, diagonal pairs are dropped
/// and the bound becomes N^2/(n+1) - N.
DepthReport colorful_ball_depth(const PointSet& a, const PointSet& b, std::size_t effort = kDefaultEffort,
                                std::uint64_t seed = 1);

}  // namespace pairdepth
