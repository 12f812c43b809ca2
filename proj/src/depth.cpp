#include "pairdepth/depth.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "pairdepth/rng.hpp"

namespace pairdepth {

std::string_view to_string(CountBasis b) { return b == CountBasis::Ordered ? "ordered" : "unordered"; }

std::string_view to_string(DepthMethod m) {
  switch (m) {
    case DepthMethod::Exact1D: return "exact-1d";
    case DepthMethod::Exact2D: return "exact-2d";
    case DepthMethod::Directional: return "directional";
  }
  return "?";
}

// Pair depth -----------------------------------------------------------------

namespace {

// Box counting by sign classes. Each point gets a base-3 code with digit
// 0 (x_i == z_i), 1 (x_i < z_i) or 2 (x_i > z_i); z lies in box(x, y) iff no
// coordinate has both points strictly on the same side.
constexpr std::size_t kBoxFastPathMaxDim = 8;

std::vector<std::uint64_t> sign_class_counts(Coords z, const PointSet& x) {
  const std::size_t n = z.size();
  std::size_t classes = 1;
  for (std::size_t i = 0; i < n; ++i) classes *= 3;
  std::vector<std::uint64_t> counts(classes, 0);
  for (std::size_t k = 0; k < x.size(); ++k) {
    const Coords p = x[k];
    std::size_t code = 0;
    for (std::size_t i = n; i-- > 0;) {
      const std::size_t digit = p[i] == z[i] ? 0 : (p[i] < z[i] ? 1 : 2);
      code = code * 3 + digit;
    }
    ++counts[code];
  }
  return counts;
}

// For every class u, the number of points whose class is compatible with u.
std::vector<std::uint64_t> compatible_totals(std::vector<std::uint64_t> g, std::size_t n) {
  std::size_t stride = 1;
  for (std::size_t axis = 0; axis < n; ++axis, stride *= 3) {
    for (std::size_t base = 0; base < g.size(); ++base) {
      if ((base / stride) % 3 != 0) continue;
      const std::uint64_t g0 = g[base], g1 = g[base + stride], g2 = g[base + 2 * stride];
      g[base] = g0 + g1 + g2;
      g[base + stride] = g0 + g2;
      g[base + 2 * stride] = g0 + g1;
    }
  }
  return g;
}

std::uint64_t box_depth_fast(Coords z, const PointSet& a, const PointSet& b, bool same_set) {
  const std::size_t n = z.size();
  const auto ca = sign_class_counts(z, a);
  const auto gb = compatible_totals(same_set ? ca : sign_class_counts(z, b), n);
  std::uint64_t total = 0;
  for (std::size_t u = 0; u < ca.size(); ++u) total += ca[u] * gb[u];
  // Class 0 (points equal to z) is the only self-compatible class.
  if (same_set) total -= ca[0];
  return total;
}

}  // namespace

std::uint64_t pair_depth(Coords z, const PointSet& a, const PointSet& b, const PairShape& shape) {
  if (&a == &b) return pair_depth(z, a, shape);
  if (a.empty() || b.empty()) return 0;
  require_same_dim(z.size(), a.dim(), "pair_depth");
  require_same_dim(z.size(), b.dim(), "pair_depth");
  if (shape.kind() == ShapeKind::Box && z.size() <= kBoxFastPathMaxDim) return box_depth_fast(z, a, b, false);

  std::uint64_t count = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (shape.contains(z, a[i], b[j])) ++count;
  return count;
}

std::uint64_t pair_depth(Coords z, const PointSet& x, const PairShape& shape) {
  if (x.empty()) return 0;
  require_same_dim(z.size(), x.dim(), "pair_depth");
  if (shape.kind() == ShapeKind::Box && z.size() <= kBoxFastPathMaxDim) return box_depth_fast(z, x, x, true);

  // Every shape is symmetric, so count unordered pairs and double.
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      if (shape.contains(z, x[i], x[j])) ++count;
  return 2 * count;
}

// Halfspace depth --------------------------------------------------------------

std::uint64_t halfspace_count(Coords z, Coords u, const PointSet& x) {
  std::uint64_t count = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const Coords p = x[k];
    double s = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) s += (p[i] - z[i]) * u[i];
    if (s >= 0.0) ++count;
  }
  return count;
}

std::uint64_t directional_depth(Coords z, const PointSet& x, const std::vector<std::vector<double>>& dirs) {
  std::uint64_t best = x.size();
  for (const auto& u : dirs) best = std::min(best, halfspace_count(z, u, x));
  return best;
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a;
}

TukeyDepth tukey_depth_1d(double z, const PointSet& x) {
  std::uint64_t below = 0, above = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k][0] <= z) ++below;
    if (x[k][0] >= z) ++above;
  }
  return {std::min(below, above), DepthMethod::Exact1D, 2};
}

// Closed halfspaces with normal at angle phi hold the points whose angle lies
// within pi/2 of phi. The count only changes at theta_i +- pi/2, so the minimum
// is attained at the midpoint of some gap between consecutive critical angles.
TukeyDepth tukey_depth_2d(Coords z, const PointSet& x) {
  std::uint64_t coincident = 0;
  std::vector<double> theta;
  theta.reserve(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double dx = x[k][0] - z[0];
    const double dy = x[k][1] - z[1];
    if (dx == 0.0 && dy == 0.0) {
      ++coincident;
    } else {
      theta.push_back(wrap_angle(std::atan2(dy, dx)));
    }
  }
  if (theta.empty()) return {coincident, DepthMethod::Exact2D, 0};
  std::sort(theta.begin(), theta.end());

  auto count_in = [&](double lo, double hi) -> std::uint64_t {  // closed [lo, hi] within [0, 2pi)
    const auto first = std::lower_bound(theta.begin(), theta.end(), lo);
    const auto last = std::upper_bound(theta.begin(), theta.end(), hi);
    return last > first ? static_cast<std::uint64_t>(last - first) : 0;
  };
  auto arc_count = [&](double phi) -> std::uint64_t {
    const double lo = phi - std::numbers::pi / 2;
    const double hi = phi + std::numbers::pi / 2;
    if (lo < 0.0) return count_in(lo + kTwoPi, kTwoPi) + count_in(0.0, hi);
    if (hi >= kTwoPi) return count_in(lo, kTwoPi) + count_in(0.0, hi - kTwoPi);
    return count_in(lo, hi);
  };

  std::vector<double> critical;
  critical.reserve(2 * theta.size());
  for (double t : theta) {
    critical.push_back(wrap_angle(t + std::numbers::pi / 2));
    critical.push_back(wrap_angle(t - std::numbers::pi / 2));
  }
  std::sort(critical.begin(), critical.end());
  critical.erase(std::unique(critical.begin(), critical.end()), critical.end());

  std::uint64_t best = theta.size();
  for (std::size_t i = 0; i < critical.size(); ++i) {
    const double a = critical[i];
    const double b = i + 1 < critical.size() ? critical[i + 1] : critical.front() + kTwoPi;
    if (!(b > a)) continue;
    best = std::min(best, arc_count(wrap_angle(0.5 * (a + b))));
  }
  return {best + coincident, DepthMethod::Exact2D, critical.size()};
}

void normalize(std::vector<double>& v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  s = std::sqrt(s);
  if (s > 0.0)
    for (double& c : v) c /= s;
}

// Unit normals of hyperplanes through z spanned by every (n-1)-subset.
void add_hyperplane_normals(Coords z, const PointSet& x, std::vector<std::vector<double>>& dirs) {
  const std::size_t n = z.size();
  const std::size_t k = n - 1;
  std::vector<std::size_t> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  Eigen::MatrixXd m(k, n);
  while (true) {
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = x[pick[r]][c] - z[c];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    Eigen::VectorXd normal = svd.matrixV().col(n - 1);
    std::vector<double> u(normal.data(), normal.data() + n);
    normalize(u);
    dirs.push_back(u);
    for (double& c : u) c = -c;
    dirs.push_back(std::move(u));

    // Advance to the next k-subset in lexicographic order.
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == x.size() - k + (i - 1)) --i;
    if (i == 0) return;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

std::vector<std::vector<double>> direction_set(Coords z, const PointSet& x, std::size_t random_directions,
                                               std::uint64_t seed) {
  const std::size_t n = z.size();
  std::vector<std::vector<double>> dirs;
  for (std::size_t k = 0; k < x.size(); ++k) {
    std::vector<double> u(n);
    bool nonzero = false;
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = x[k][i] - z[i];
      nonzero = nonzero || u[i] != 0.0;
    }
    if (!nonzero) continue;
    normalize(u);
    dirs.push_back(u);
    for (double& c : u) c = -c;
    dirs.push_back(std::move(u));
  }
  if (x.size() <= kHyperplaneNormalLimit && x.size() >= n - 1) add_hyperplane_normals(z, x, dirs);
  Rng rng(seed);
  for (std::size_t r = 0; r < random_directions; ++r) {
    std::vector<double> u(n);
    for (double& c : u) c = rng.normal();
    normalize(u);
    dirs.push_back(std::move(u));
  }
  return dirs;
}

}  // namespace

TukeyDepth tukey_depth(Coords z, const PointSet& x, std::size_t random_directions, std::uint64_t seed) {
  if (x.empty()) return {0, z.size() == 1 ? DepthMethod::Exact1D : DepthMethod::Exact2D, 0};
  require_same_dim(z.size(), x.dim(), "tukey_depth");
  if (z.size() == 1) return tukey_depth_1d(z[0], x);
  if (z.size() == 2) return tukey_depth_2d(z, x);
  const auto dirs = direction_set(z, x, random_directions, seed);
  return {directional_depth(z, x, dirs), DepthMethod::Directional, dirs.size()};
}

// Radon points -----------------------------------------------------------------

RadonPartition radon_partition(const PointSet& p) {
  const std::size_t n = p.dim();
  if (p.size() != n + 2) {
    throw Error("radon_partition needs exactly n + 2 = " + std::to_string(n + 2) + " points");
  }
  Eigen::MatrixXd m(n + 1, n + 2);
  for (std::size_t j = 0; j < n + 2; ++j) {
    for (std::size_t i = 0; i < n; ++i) m(i, j) = p[j][i];
    m(n, j) = 1.0;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const Eigen::VectorXd lambda = svd.matrixV().col(n + 1);

  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m * lambda).norm() > 1e-8 * scale) throw Error("radon_partition: null-space residual too large");

  const double cutoff = 1e-14 * lambda.cwiseAbs().maxCoeff();
  RadonPartition out;
  out.lambda.assign(lambda.data(), lambda.data() + n + 2);
  std::vector<double> acc(n, 0.0);
  double weight = 0.0;
  for (std::size_t j = 0; j < n + 2; ++j) {
    if (lambda[j] > cutoff) {
      out.positive.push_back(j);
      weight += lambda[j];
      for (std::size_t i = 0; i < n; ++i) acc[i] += lambda[j] * p[j][i];
    } else {
      out.rest.push_back(j);
    }
  }
  if (!(weight > 0.0) || out.rest.empty()) throw Error("radon_partition: degenerate null vector");
  for (double& c : acc) c /= weight;
  out.point = Point(std::move(acc));
  return out;
}

Point radon_point(const PointSet& p) { return radon_partition(p).point; }

// Centerpoints -------------------------------------------------------------------

namespace {

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

std::vector<Point> radon_candidates(const PointSet& x, std::size_t effort, Rng& rng) {
  const std::size_t n = x.dim();
  const std::size_t group = n + 2;
  std::vector<Point> work;
  work.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) work.push_back(x.point(i));

  std::vector<Point> out;
  std::vector<std::size_t> idx(work.size());
  for (std::size_t round = 0; round < effort; ++round) {
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < group; ++i) std::swap(idx[i], idx[i + rng.below(idx.size() - i)]);
    PointSet sample(n);
    for (std::size_t i = 0; i < group; ++i) sample.push_back(work[idx[i]]);
    try {
      Point r = radon_point(sample);
      work[idx[0]] = r;
      out.push_back(std::move(r));
    } catch (const Error&) {
      // Numerically degenerate group; draw another.
    }
  }
  return out;
}

std::vector<Point> summary_candidates(const PointSet& x) {
  const std::size_t n = x.dim();
  std::vector<double> mean(n, 0.0), median(n);
  std::vector<double> column(x.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < x.size(); ++k) {
      column[k] = x[k][i];
      mean[i] += column[k];
    }
    mean[i] /= static_cast<double>(x.size());
    std::sort(column.begin(), column.end());
    const std::size_t mid = column.size() / 2;
    median[i] = column.size() % 2 ? column[mid] : 0.5 * (column[mid - 1] + column[mid]);
  }
  return {Point(std::move(mean)), Point(std::move(median))};
}

CenterpointCertificate best_of(const PointSet& x, const std::vector<Point>& candidates, std::uint64_t target,
                               std::uint64_t seed) {
  const std::size_t n = x.dim();
  CenterpointCertificate best;
  best.target = target;
  bool have = false;
  if (n <= 2) {
    for (const auto& c : candidates) {
      const auto d = tukey_depth(c, x);
      if (!have || d.depth > best.claimed_depth) {
        best.z = c;
        best.claimed_depth = d.depth;
        best.method = d.method;
        best.directions_checked = d.directions_checked;
        have = true;
      }
    }
    best.certified = have && best.claimed_depth >= target;
    return best;
  }

  // Screen with a cheap direction set, then audit the leaders with the full one.
  constexpr std::size_t kScreenDirections = 256;
  constexpr std::size_t kFinalists = 4;
  std::vector<std::pair<std::uint64_t, std::size_t>> screened;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto dirs = direction_set(candidates[i], x, kScreenDirections, seed);
    screened.emplace_back(directional_depth(candidates[i], x, dirs), i);
  }
  std::stable_sort(screened.begin(), screened.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t f = 0; f < std::min(kFinalists, screened.size()); ++f) {
    const Point& c = candidates[screened[f].second];
    const auto d = tukey_depth(c, x, kRandomDirections, seed);
    if (!have || d.depth > best.claimed_depth) {
      best.z = c;
      best.claimed_depth = d.depth;
      best.method = d.method;
      best.directions_checked = d.directions_checked;
      have = true;
    }
  }
  best.certified = false;
  return best;
}

}  // namespace

CenterpointCertificate centerpoint(const PointSet& x, std::size_t effort, std::uint64_t seed) {
  if (x.empty()) throw Error("centerpoint of an empty set is undefined");
  const std::size_t n = x.dim();
  const std::uint64_t target = ceil_div(x.size(), n + 1);

  if (n == 1) {
    std::vector<double> values(x.flat().begin(), x.flat().end());
    std::sort(values.begin(), values.end());
    const Point z{values[(values.size() - 1) / 2]};
    const auto d = tukey_depth(z, x);
    return {z, d.depth, target, d.method, d.directions_checked, d.depth >= target};
  }

  std::vector<Point> fixed;
  for (std::size_t i = 0; i < x.size(); ++i) fixed.push_back(x.point(i));
  if (x.size() < n + 2) return best_of(x, fixed, target, seed);
  for (auto& p : summary_candidates(x)) fixed.push_back(std::move(p));

  constexpr int kRetries = 3;
  CenterpointCertificate best;
  std::size_t budget = effort;
  for (int attempt = 0; attempt <= kRetries; ++attempt, budget *= 4) {
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(attempt));
    std::vector<Point> candidates = radon_candidates(x, budget, rng);
    if (attempt == 0) candidates.insert(candidates.begin(), fixed.begin(), fixed.end());
    auto found = best_of(x, candidates, target, seed);
    if (attempt == 0 || found.claimed_depth > best.claimed_depth) best = std::move(found);
    if (best.certified || n >= 3) break;
  }
  return best;
}

DepthReport colorful_ball_depth(const PointSet& a, const PointSet& b, std::size_t effort, std::uint64_t seed) {
  if (a.empty() || b.empty()) throw Error("colorful_ball_depth needs nonempty A and B");
  require_same_dim(a.dim(), b.dim(), "colorful_ball_depth");
  const bool same = &a == &b;
  const std::uint64_t n = a.dim();
  const std::uint64_t big_n = a.size();
  const std::uint64_t big_m = b.size();
  const PairShape ball = PairShape::ball();

  auto meets = [&](std::uint64_t count) {
    if (same) return (count + big_n) * (n + 1) >= big_n * big_n;
    return count * (n + 1) >= big_n * big_m;
  };

  DepthReport report;
  constexpr int kRetries = 3;
  std::size_t budget = effort;
  for (int attempt = 0; attempt <= kRetries; ++attempt, budget *= 4) {
    const auto cert = centerpoint(a, budget, seed + static_cast<std::uint64_t>(attempt));
    const std::uint64_t count = pair_depth(cert.z, a, b, ball);
    if (attempt == 0 || count > report.ordered_pair_count) {
      report.witness = cert.z;
      report.ordered_pair_count = count;
      report.certified = cert.certified;
    }
    if (meets(report.ordered_pair_count) || cert.certified) break;
  }

  report.pair_universe = same ? big_n * (big_n - 1) : big_n * big_m;
  report.unordered_pair_count = same ? report.ordered_pair_count / 2 : 0;
  report.fraction = report.pair_universe == 0
                        ? 0.0
                        : static_cast<double>(report.ordered_pair_count) / static_cast<double>(report.pair_universe);
  const double nn = static_cast<double>(big_n);
  report.bound = same ? nn * nn / static_cast<double>(n + 1) - nn
                      : nn * static_cast<double>(big_m) / static_cast<double>(n + 1);
  report.basis = CountBasis::Ordered;
  report.bound_met = meets(report.ordered_pair_count);
  return report;
}

}  // namespace pairdepth
