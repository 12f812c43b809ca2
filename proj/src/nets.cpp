#include "pairdepth/nets.hpp"

#include <bit>
#include <cmath>
#include <functional>

#include "pairdepth/rng.hpp"
#include "pairdepth/selection.hpp"

namespace pairdepth {

// Uncovered graph -----------------------------------------------------------------

UncoveredGraph::UncoveredGraph(std::size_t n) : n_(n), words_((n + 63) / 64), adj_(n * words_, 0) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) adj_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
}

bool UncoveredGraph::has_edge(std::size_t i, std::size_t j) const {
  return (adj_[i * words_ + j / 64] >> (j % 64)) & 1u;
}

void UncoveredGraph::remove_edge(std::size_t i, std::size_t j) {
  adj_[i * words_ + j / 64] &= ~(std::uint64_t{1} << (j % 64));
  adj_[j * words_ + i / 64] &= ~(std::uint64_t{1} << (i % 64));
}

std::uint64_t UncoveredGraph::edge_count() const {
  std::uint64_t total = 0;
  for (auto w : adj_) total += static_cast<std::uint64_t>(std::popcount(w));
  return total / 2;
}

std::uint64_t UncoveredGraph::cover(Coords t, const PointSet& x, const PairShape& shape) {
  require_same_dim(t.size(), x.dim(), "UncoveredGraph::cover");
  std::uint64_t removed = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (has_edge(i, j) && shape.contains(t, x[i], x[j])) {
        remove_edge(i, j);
        ++removed;
      }
    }
  }
  return removed;
}

bool UncoveredGraph::is_subgraph_of(const UncoveredGraph& other) const {
  if (n_ != other.n_) return false;
  for (std::size_t k = 0; k < adj_.size(); ++k)
    if (adj_[k] & ~other.adj_[k]) return false;
  return true;
}

UncoveredGraph uncovered_graph(const PointSet& x, const std::vector<Point>& net, const PairShape& shape) {
  UncoveredGraph g(x.size());
  for (const auto& t : net) g.cover(t, x, shape);
  return g;
}

// Maximum clique ----------------------------------------------------------------------

namespace {

using Bits = std::uint64_t;

class CliqueSearch {
 public:
  CliqueSearch(const UncoveredGraph& g, std::size_t cutoff) : cutoff_(cutoff), adj_(g.size()) {
    for (std::size_t i = 0; i < g.size(); ++i) adj_[i] = g.neighbours(i)[0];
  }

  std::vector<std::size_t> run() {
    if (adj_.empty()) return {};
    const Bits all = adj_.size() == 64 ? ~Bits{0} : (Bits{1} << adj_.size()) - 1;
    best_ = {0};  // any single vertex is a clique
    if (cutoff_ > 0 && best_.size() >= cutoff_) return best_;
    expand(all);
    return best_;
  }

 private:
  // Greedy sequential colouring of the candidate set; colour classes bound the
  // clique size reachable from each vertex.
  void colour(Bits candidates, std::vector<int>& order, std::vector<int>& bound) const {
    int k = 0;
    Bits uncoloured = candidates;
    while (uncoloured) {
      ++k;
      Bits q = uncoloured;
      while (q) {
        const int v = std::countr_zero(q);
        q &= ~(Bits{1} << v);
        uncoloured &= ~(Bits{1} << v);
        q &= ~adj_[static_cast<std::size_t>(v)];
        order.push_back(v);
        bound.push_back(k);
      }
    }
  }

  void expand(Bits candidates) {
    std::vector<int> order, bound;
    colour(candidates, order, bound);
    for (std::size_t idx = order.size(); idx-- > 0;) {
      if (done_) return;
      if (current_.size() + static_cast<std::size_t>(bound[idx]) <= best_.size()) return;
      const int v = order[idx];
      current_.push_back(static_cast<std::size_t>(v));
      const Bits next = candidates & adj_[static_cast<std::size_t>(v)];
      if (next == 0) {
        if (current_.size() > best_.size()) {
          best_ = current_;
          if (cutoff_ > 0 && best_.size() >= cutoff_) done_ = true;
        }
      } else {
        expand(next);
      }
      current_.pop_back();
      candidates &= ~(Bits{1} << v);
    }
  }

  std::size_t cutoff_;
  std::vector<Bits> adj_;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> best_;
  bool done_ = false;
};

}  // namespace

std::vector<std::size_t> max_clique(const UncoveredGraph& g, std::size_t cutoff) {
  if (g.size() > kExactCliqueLimit) {
    throw Error("exact clique search is limited to " + std::to_string(kExactCliqueLimit) +
                " vertices; use a sampling certifier for larger sets");
  }
  auto clique = CliqueSearch(g, cutoff).run();
  std::sort(clique.begin(), clique.end());
  return clique;
}

// Weak nets -------------------------------------------------------------------------------

std::size_t subset_threshold(double epsilon, std::size_t big_n) {
  const double exact = epsilon * static_cast<double>(big_n);
  return static_cast<std::size_t>(std::ceil(exact - 1e-9));
}

NetResult weak_net(const PointSet& x, double epsilon, const PairShape& shape, double t, std::uint64_t seed) {
  if (shape.kind() == ShapeKind::Segment) {
    throw Error("segments admit no positive-fraction guarantee, so no weak net is built for them");
  }
  if (!shape.is_t_shape()) throw Error("weak_net needs a t-shape (ball, lens or ellipsoid)");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw Error("epsilon must lie in (0, 1]");
  if (!(t > 0.0 && t <= 1.0)) throw Error("t must lie in (0, 1]");
  const std::size_t big_n = x.size();
  const std::size_t m = subset_threshold(epsilon, big_n);
  if (m < 2) throw Error("ceil(epsilon N) must be at least 2");
  if (big_n > kExactCliqueLimit) {
    throw Error("weak_net certifies exactly and supports at most " + std::to_string(kExactCliqueLimit) + " points");
  }

  NetResult out;
  out.epsilon = epsilon;
  out.shape = shape;
  out.subset_size = m;
  out.lambda_used = tshape_bound(t, x.dim(), 1);
  out.iteration_cap =
      4 * static_cast<std::size_t>(std::ceil(1.0 / (out.lambda_used * epsilon * epsilon)));

  const double eps_n = epsilon * static_cast<double>(big_n);
  UncoveredGraph g(big_n);
  double lambda_emp = 0.0;
  for (;;) {
    auto clique = max_clique(g, m);
    if (clique.size() < m) {
      out.certified = true;
      break;
    }
    if (out.net.size() >= out.iteration_cap) {
      out.witness_clique = std::move(clique);
      break;
    }

    const PointSet sub = x.subset(clique);
    const double needed = out.lambda_used * static_cast<double>(sub.size()) * static_cast<double>(sub.size());
    NetIteration step;
    step.clique_size = clique.size();
    std::size_t samples = kDefaultMcSamples;
    const std::uint64_t stream_seed = Rng::derive(seed, out.net.size()).next();
    auto deep = tshape_deep_point(sub, shape, t, samples, stream_seed);
    while (static_cast<double>(deep.report.ordered_pair_count) < needed && step.deep_point_retries < 3) {
      samples *= 4;
      ++step.deep_point_retries;
      deep = tshape_deep_point(sub, shape, t, samples, stream_seed);
    }
    if (static_cast<double>(deep.report.ordered_pair_count) < needed) out.deep_point_shortfall = true;
    step.deep_point_count = deep.report.ordered_pair_count;

    const UncoveredGraph before = g;
    step.newly_covered = g.cover(deep.report.witness, x, shape);
    if (!g.is_subgraph_of(before)) throw Error("weak_net: covering a point added an edge");
    if (step.newly_covered == 0) throw Error("weak_net: deep point covered no uncovered pair");

    const double ratio = static_cast<double>(step.newly_covered) / (eps_n * eps_n);
    lambda_emp = out.history.empty() ? ratio : std::min(lambda_emp, ratio);
    out.net.push_back(deep.report.witness);
    out.history.push_back(step);
  }

  out.iterations = out.net.size();
  out.lambda_emp = lambda_emp;
  out.empirical_cap =
      out.history.empty() ? 0 : static_cast<std::uint64_t>(std::ceil(1.0 / (lambda_emp * epsilon * epsilon)));
  return out;
}

NetResult lens_net(const PointSet& x, double epsilon, double alpha, double t, std::uint64_t seed) {
  return weak_net(x, epsilon, PairShape::lens(alpha), t, seed);
}

}  // namespace pairdepth
