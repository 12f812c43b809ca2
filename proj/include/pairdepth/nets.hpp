#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pairdepth/geometry.hpp"
#include "pairdepth/shapes.hpp"

namespace pairdepth {

/// Graph on the indices of X with an edge {i, j} exactly when S(x_i, x_j)
/// misses every net point. A subset violates the net iff it is a clique.
class UncoveredGraph {
 public:
  UncoveredGraph() = default;
  /// Complete graph on n vertices.
  explicit UncoveredGraph(std::size_t n);

  std::size_t size() const { return n_; }
  bool has_edge(std::size_t i, std::size_t j) const;
  std::uint64_t edge_count() const;

  /// Deletes every edge whose shape contains t; returns how many were deleted.
  std::uint64_t cover(Coords t, const PointSet& x, const PairShape& shape);

  /// True when every edge of this graph is also an edge of `other`.
  bool is_subgraph_of(const UncoveredGraph& other) const;

  std::span<const std::uint64_t> neighbours(std::size_t i) const { return {adj_.data() + i * words_, words_}; }

  void remove_edge(std::size_t i, std::size_t j);

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> adj_;
};

UncoveredGraph uncovered_graph(const PointSet& x, const std::vector<Point>& net, const PairShape& shape);

inline constexpr std::size_t kExactCliqueLimit = 64;

/// Maximum clique by branch and bound with a greedy colouring bound. With a
/// nonzero cutoff the search stops at the first clique of at least that size.
/// Throws Error above kExactCliqueLimit vertices.
std::vector<std::size_t> max_clique(const UncoveredGraph& g, std::size_t cutoff = 0);

struct NetIteration {
  std::size_t clique_size = 0;
  std::uint64_t deep_point_count = 0;  // ordered pairs of the clique covered by the new point
  std::uint64_t newly_covered = 0;     // unordered pairs of X removed from the graph
  int deep_point_retries = 0;
};

struct NetResult {
  std::vector<Point> net;
  double epsilon = 0.0;
  PairShape shape = PairShape::ball();
  std::size_t subset_size = 0;  // ceil(epsilon N)
  bool certified = false;
  std::optional<std::vector<std::size_t>> witness_clique;
  std::size_t iterations = 0;
  std::size_t iteration_cap = 0;
  double lambda_used = 0.0;   // t / (2^n 4^(n+3))
  double lambda_emp = 0.0;    // min newly_covered / (epsilon N)^2 over iterations
  std::uint64_t empirical_cap = 0;  // ceil((lambda_emp eps^2)^-1), 0 without iterations
  bool deep_point_shortfall = false;  // some deep point stayed below lambda |A|^2 after retries
  std::vector<NetIteration> history;
};

/// ceil(eps N) computed without floating drift for eps N within 1e-9 of an integer.
std::size_t subset_threshold(double epsilon, std::size_t big_n);

/// Greedy net: while the uncovered graph has a clique A of size ceil(eps N),
/// add a deep point of A for the t-shape. Refuses boxes and segments.
NetResult weak_net(const PointSet& x, double epsilon, const PairShape& shape, double t, std::uint64_t seed = 1);

/// weak_net with the alpha-lens, 0 <= alpha < pi.
NetResult lens_net(const PointSet& x, double epsilon, double alpha, double t, std::uint64_t seed = 1);

}  // namespace pairdepth
