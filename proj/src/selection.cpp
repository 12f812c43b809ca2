#include "pairdepth/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pairdepth/parallel.hpp"
#include "pairdepth/rng.hpp"

namespace pairdepth {

// Diameter selection -------------------------------------------------------------

double a_value(const DistanceMatrix& d, std::size_t i) {
  const std::size_t n = d.size();
  if (n < 2) throw Error("a_value needs at least two points");
  if (i >= n) throw Error("a_value: index out of range");
  const auto row = d.row(i);
  std::vector<double> sorted(row.begin(), row.end());
  const std::size_t k = (3 * n) / 4;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k), sorted.end());
  return sorted[k];
}

double selection_slack(double d) { return 1e-9 * std::min(1.0, d); }

DiameterSelection diameter_selection(const DistanceMatrix& d) {
  const std::size_t n = d.size();
  if (n < 2) throw Error("diameter_selection needs at least two points");

  DiameterSelection out;
  out.a_values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.a_values[i] = a_value(d, i);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return out.a_values[a] < out.a_values[b]; });
  out.y.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>((3 * n) / 4));
  out.d = diameter(d, out.y);

  std::vector<bool> in_y(n, false);
  for (std::size_t i : out.y) in_y[i] = true;
  const double threshold = out.d / 4.0 - selection_slack(out.d);
  for (std::size_t yi : out.y) {
    for (std::size_t x = 0; x < n; ++x) {
      if (!in_y[x] && d(yi, x) >= threshold) out.pairs.emplace_back(yi, x);
    }
  }
  out.pair_count = out.pairs.size();
  out.bound_met = 64 * out.pair_count >= static_cast<std::uint64_t>(n) * n;
  return out;
}

// Box splitting --------------------------------------------------------------------

double median(std::vector<double> values) {
  if (values.empty()) throw Error("median of an empty set is undefined");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

bool BoxSplit::in_r1(Coords p) const {
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (eps[i] > 0 ? p[i] > z[i] : p[i] < z[i]) return false;
  }
  return true;
}

bool BoxSplit::in_r2(Coords p) const {
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (eps[i] > 0 ? p[i] < z[i] : p[i] > z[i]) return false;
  }
  return true;
}

BoxSplit box_split(const PointSet& x, std::size_t j) {
  if (x.empty()) throw Error("box_split needs at least one point");
  if (j < 1 || j > x.dim()) throw Error("box_split: j must lie in [1, n]");

  BoxSplit split;
  std::vector<double> low, high;
  for (std::size_t level = 0; level < j; ++level) {
    low.clear();
    high.clear();
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (split.in_r1(x[k])) low.push_back(x[k][level]);
      if (split.in_r2(x[k])) high.push_back(x[k][level]);
    }
    const double m1 = median(low);
    const double m2 = median(high);
    split.z_low.push_back(m1);
    split.z_high.push_back(m2);
    split.z.push_back(level == 0 ? m1 : 0.5 * (m1 + m2));
    split.eps.push_back(m1 <= m2 ? +1 : -1);
  }
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (split.in_r1(x[k])) ++split.count_r1;
    if (split.in_r2(x[k])) ++split.count_r2;
  }
  const std::uint64_t scale = std::uint64_t{1} << j;
  split.bound_met = split.count_r1 * scale >= x.size() && split.count_r2 * scale >= x.size();
  return split;
}

// Box deep point --------------------------------------------------------------------

BoxDeepPoint box_deep_point(const PointSet& x) {
  if (x.empty()) throw Error("box_deep_point needs at least one point");
  const std::size_t n = x.dim();
  BoxDeepPoint out;
  out.split = box_split(x, n);
  const Point z(out.split.z);

  std::vector<std::size_t> x1, x2;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (out.split.in_r1(x[k])) x1.push_back(k);
    if (out.split.in_r2(x[k]) && Point(x[k]) != z) x2.push_back(k);
  }
  out.x1_size = x1.size();
  out.x2_size = x2.size();

  const PairShape box = PairShape::box();
  out.containment_verified = true;
  for (std::size_t a : x1) {
    for (std::size_t b : x2) {
      if (!box.contains(z, x[a], x[b])) {
        out.containment_verified = false;
        break;
      }
    }
    if (!out.containment_verified) break;
  }

  auto& r = out.report;
  r.witness = z;
  r.ordered_pair_count = pair_depth(z, x, box);
  r.unordered_pair_count = r.ordered_pair_count / 2;
  r.pair_universe = static_cast<std::uint64_t>(x.size()) * (x.size() - 1);
  r.fraction = r.pair_universe ? static_cast<double>(r.ordered_pair_count) / static_cast<double>(r.pair_universe) : 0.0;
  const double share = static_cast<double>(x.size()) / std::ldexp(1.0, static_cast<int>(n));
  r.bound = share * (share - 1.0);
  r.basis = CountBasis::Unordered;
  r.bound_met = static_cast<double>(r.unordered_pair_count) + 1e-9 >= r.bound;
  return out;
}

// t-shape deep point ------------------------------------------------------------------

double tshape_bound(double t, std::size_t n, std::size_t big_n) {
  const double nn = static_cast<double>(big_n);
  return t * nn * nn / (std::ldexp(1.0, static_cast<int>(n)) * std::ldexp(1.0, 2 * static_cast<int>(n + 3)));
}

TShapeDeepPoint tshape_deep_point(const PointSet& x, const PairShape& shape, double t, std::size_t mc_samples,
                                  std::uint64_t seed) {
  if (x.size() < 2) throw Error("tshape_deep_point needs at least two points");
  if (!shape.is_t_shape()) {
    throw Error("tshape_deep_point needs a t-shape (ball, lens or ellipsoid), got '" + shape.spec() + "'");
  }
  if (!(t > 0.0 && t <= 1.0)) throw Error("t must lie in (0, 1]");
  if (diameter(x) <= 1e-12) throw Error("zero diameter: all points coincide");

  const std::size_t n = x.dim();
  TShapeDeepPoint out;
  out.selection = diameter_selection(distance_matrix(x));
  const double d = out.selection.d;

  std::vector<Point> candidates;
  candidates.reserve(out.selection.pairs.size() + mc_samples);
  for (const auto& [yi, xi] : out.selection.pairs) candidates.push_back(midpoint(x[yi], x[xi]));

  const Coords y0 = x[out.selection.y.front()];
  Rng rng(seed);
  std::vector<double> p(n);
  const double d2 = d * d;
  for (std::size_t s = 0; s < mc_samples; ++s) {
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (auto& v : p) {
        v = rng.normal();
        norm2 += v * v;
      }
    } while (norm2 == 0.0);
    const double scale = 2.0 * d * std::pow(rng.uniform(), 1.0 / static_cast<double>(n)) / std::sqrt(norm2);
    for (std::size_t i = 0; i < n; ++i) p[i] = y0[i] + p[i] * scale;
    const bool near_y = std::any_of(out.selection.y.begin(), out.selection.y.end(),
                                    [&](std::size_t yi) { return squared_distance(p, x[yi]) <= d2; });
    if (near_y) {
      candidates.emplace_back(p);
      ++out.mc_accepted;
    }
  }
  out.candidates = candidates.size();
  if (candidates.empty()) candidates.push_back(x.point(out.selection.y.front()));

  std::vector<std::uint64_t> depth(candidates.size());
  parallel_for(candidates.size(), [&](std::size_t i) { depth[i] = pair_depth(candidates[i], x, shape); });
  const auto best = static_cast<std::size_t>(std::max_element(depth.begin(), depth.end()) - depth.begin());

  auto& r = out.report;
  r.witness = candidates[best];
  r.ordered_pair_count = depth[best];
  r.unordered_pair_count = depth[best] / 2;
  r.pair_universe = static_cast<std::uint64_t>(x.size()) * (x.size() - 1);
  r.fraction = static_cast<double>(r.ordered_pair_count) / static_cast<double>(r.pair_universe);
  r.bound = tshape_bound(t, n, x.size());
  r.basis = CountBasis::Ordered;
  r.bound_met = static_cast<double>(r.ordered_pair_count) + 1e-9 >= r.bound;
  return out;
}

// Box lower bound -------------------------------------------------------------------------

BoxLowerBound box_lowerbound_check(const PointSet& x, std::size_t candidates, std::uint64_t seed) {
  if (x.size() < 2) throw Error("box_lowerbound_check needs at least two points");
  const std::size_t n = x.dim();
  const std::size_t big_n = x.size();

  std::vector<Point> cands;
  cands.reserve(candidates);
  for (std::size_t k = 0; k < big_n && cands.size() < candidates; ++k) cands.push_back(x.point(k));

  const std::size_t remaining = candidates - cands.size();
  const std::size_t grid_budget = remaining - remaining / 4;
  std::size_t width = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(grid_budget), 1.0 / static_cast<double>(n))));
  width = std::min(width, big_n);
  auto grid_size = [&](std::size_t w) {
    double s = 1.0;
    for (std::size_t i = 0; i < n; ++i) s *= static_cast<double>(w);
    return s;
  };
  while (width > 0 && grid_size(width) > static_cast<double>(grid_budget)) --width;

  if (width > 0) {
    std::vector<std::vector<double>> window(n);
    std::vector<double> column(big_n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < big_n; ++k) column[k] = x[k][i];
      std::sort(column.begin(), column.end());
      const std::size_t lo = std::min(big_n - width, big_n / 2 - std::min(big_n / 2, width / 2));
      window[i].assign(column.begin() + static_cast<std::ptrdiff_t>(lo),
                       column.begin() + static_cast<std::ptrdiff_t>(lo + width));
    }
    std::vector<std::size_t> digit(n, 0);
    std::vector<double> p(n);
    for (bool more = true; more;) {
      for (std::size_t i = 0; i < n; ++i) p[i] = window[i][digit[i]];
      cands.emplace_back(p);
      more = false;
      for (std::size_t i = n; i-- > 0;) {
        if (++digit[i] < width) {
          more = true;
          break;
        }
        digit[i] = 0;
      }
    }
  }

  Rng rng(seed);
  std::vector<double> p(n);
  while (cands.size() < candidates) {
    for (auto& v : p) v = rng.uniform();
    cands.emplace_back(p);
  }

  const PairShape box = PairShape::box();
  std::vector<std::uint64_t> depth(cands.size());
  parallel_for(cands.size(), [&](std::size_t i) { depth[i] = pair_depth(cands[i], x, box); });
  const auto best = static_cast<std::size_t>(std::max_element(depth.begin(), depth.end()) - depth.begin());

  BoxLowerBound out;
  out.best_count = depth[best];
  out.witness = cands[best];
  out.candidates_evaluated = cands.size();
  out.max_fraction = static_cast<double>(depth[best]) / (static_cast<double>(big_n) * static_cast<double>(big_n - 1));
  out.theoretical = std::ldexp(1.0, -static_cast<int>(n));
  return out;
}

BoxLowerBound box_lowerbound_check(std::size_t n, std::size_t big_n, std::size_t candidates, std::uint64_t seed) {
  const PointSet x = generate(Distribution::UniformCube, n, big_n, seed);
  return box_lowerbound_check(x, candidates, Rng::derive(seed, 1).next());
}

// Segment control ---------------------------------------------------------------------------

namespace {

double orient(Coords a, Coords b, Coords c) {
  return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

}  // namespace

SegmentArrangementDepth segment_arrangement_depth(const PointSet& x) {
  if (x.dim() != 2) throw Error("segment arrangement depth is defined for planar point sets only");
  const std::size_t n = x.size();
  std::vector<std::pair<std::size_t, std::size_t>> chords;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) chords.emplace_back(i, j);

  std::vector<Point> crossings;
  for (std::size_t c1 = 0; c1 < chords.size(); ++c1) {
    const auto [a, b] = chords[c1];
    for (std::size_t c2 = c1 + 1; c2 < chords.size(); ++c2) {
      const auto [c, d] = chords[c2];
      if (a == c || a == d || b == c || b == d) continue;
      const double o1 = orient(x[a], x[b], x[c]);
      const double o2 = orient(x[a], x[b], x[d]);
      const double o3 = orient(x[c], x[d], x[a]);
      const double o4 = orient(x[c], x[d], x[b]);
      if (!(o1 * o2 < 0.0 && o3 * o4 < 0.0)) continue;
      const double s = o1 / (o1 - o2);  // parameter along [c, d]
      crossings.push_back(Point{x[c][0] + s * (x[d][0] - x[c][0]), x[c][1] + s * (x[d][1] - x[c][1])});
    }
  }

  SegmentArrangementDepth out;
  out.crossings = crossings.size();
  if (crossings.empty()) return out;

  const PairShape segment = PairShape::segment();
  std::vector<std::uint64_t> through(crossings.size());
  parallel_for(crossings.size(), [&](std::size_t k) {
    std::uint64_t count = 0;
    for (const auto& [i, j] : chords)
      if (segment.contains(crossings[k], x[i], x[j])) ++count;
    through[k] = count;
  });
  const auto best = static_cast<std::size_t>(std::max_element(through.begin(), through.end()) - through.begin());
  out.max_segments = through[best];
  out.max_ordered = 2 * through[best];
  out.witness = crossings[best];
  return out;
}

}  // namespace pairdepth
