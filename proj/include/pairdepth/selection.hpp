#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pairdepth/depth.hpp"
#include "pairdepth/geometry.hpp"
#include "pairdepth/shapes.hpp"

namespace pairdepth {

// Metric diameter selection ---------------------------------------------------

/// The (floor(3N/4) + 1)-th smallest entry of row i (the zero diagonal counts):
/// the supremum of radii r whose closed ball around x_i holds at most 3N/4 points.
double a_value(const DistanceMatrix& d, std::size_t i);

struct DiameterSelection {
  std::vector<std::size_t> y;                                // |Y| = floor(3N/4)
  std::vector<double> a_values;                              // indexed like the input
  double d = 0.0;                                            // diam(Y)
  std::vector<std::pair<std::size_t, std::size_t>> pairs;    // (y, x), y in Y, x not in Y, rho >= d/4
  std::uint64_t pair_count = 0;
  bool bound_met = false;                                    // 64 * pair_count >= N^2
};

/// Orders points by (a_value, index), takes the first floor(3N/4) as Y and
/// lists every ordered pair (y, x) with rho(x, y) >= diam(Y)/4, compared with
/// a slack of 1e-9 * min(1, diam(Y)). Needs N >= 2.
DiameterSelection diameter_selection(const DistanceMatrix& d);

/// Slack used for the closed d/4 threshold.
double selection_slack(double d);

// Box splitting ----------------------------------------------------------------

/// Split point of a closed two-sided median cut. Even sizes use the midpoint
/// of the two middle order statistics.
double median(std::vector<double> values);

struct BoxSplit {
  std::vector<double> z;       // z_1 .. z_j
  std::vector<int> eps;        // +1 / -1
  std::vector<double> z_low;   // z_k^(1), median over the first region at level k
  std::vector<double> z_high;  // z_k^(2)
  std::uint64_t count_r1 = 0;
  std::uint64_t count_r2 = 0;
  bool bound_met = false;      // both counts * 2^j >= N

  /// eps_i (p_i - z_i) <= 0 for i < j.
  bool in_r1(Coords p) const;
  /// eps_i (p_i - z_i) >= 0 for i < j.
  bool in_r2(Coords p) const;
};

/// Recursive median splitting over the first j coordinates, 1 <= j <= n.
BoxSplit box_split(const PointSet& x, std::size_t j);

// Deep points ------------------------------------------------------------------

struct BoxDeepPoint {
  DepthReport report;  // bound checked against unordered_pair_count
  BoxSplit split;
  std::uint64_t x1_size = 0;
  std::uint64_t x2_size = 0;
  bool containment_verified = false;  // z in box(x1, x2) for all of X1 x X2
};

/// z from box_split(X, n); bound (N/2^n)(N/2^n - 1) on distinct boxes S(x, y).
BoxDeepPoint box_deep_point(const PointSet& x);

inline constexpr std::size_t kDefaultMcSamples = 2000;

/// t * N^2 / (2^n 4^(n+3)).
double tshape_bound(double t, std::size_t n, std::size_t big_n);

struct TShapeDeepPoint {
  DepthReport report;  // bound checked against ordered_pair_count
  DiameterSelection selection;
  std::size_t candidates = 0;
  std::size_t mc_accepted = 0;
};

/// Best of the qualifying-pair midpoints followed by Monte-Carlo draws from
/// B_{2d}(y0) kept only when within d of Y. Ties go to the lowest candidate index.
TShapeDeepPoint tshape_deep_point(const PointSet& x, const PairShape& shape, double t,
                                  std::size_t mc_samples = kDefaultMcSamples, std::uint64_t seed = 1);

// Box lower-bound instance -------------------------------------------------------

struct BoxLowerBound {
  double max_fraction = 0.0;  // ordered distinct pairs / (N (N - 1))
  Point witness;
  std::uint64_t best_count = 0;
  std::size_t candidates_evaluated = 0;
  double theoretical = 0.0;  // 1 / 2^n
};

/// Uniform [0,1]^n sample; candidates are the points themselves, then a
/// coordinate grid built from the order statistics nearest each coordinate
/// median, then uniform draws, up to `candidates` in total.
BoxLowerBound box_lowerbound_check(std::size_t n, std::size_t big_n, std::size_t candidates, std::uint64_t seed);
BoxLowerBound box_lowerbound_check(const PointSet& x, std::size_t candidates, std::uint64_t seed);

// Segment control ----------------------------------------------------------------

struct SegmentArrangementDepth {
  std::uint64_t max_segments = 0;  // unordered chords through the best crossing
  std::uint64_t max_ordered = 0;
  std::size_t crossings = 0;
  Point witness;
};

/// Planar point sets only. Candidates are the proper crossings of chords with
/// four distinct endpoints; the endpoints themselves are excluded.
SegmentArrangementDepth segment_arrangement_depth(const PointSet& x);

}  // namespace pairdepth
