#include "rlg/graph_model.hpp"

#include <stdexcept>
#include <string>

#include "rlg/rng.hpp"

namespace rlg {

ModelParams ModelParams::make(Index n, double p) { return ModelParams{n, p, default_band(n)}; }

void ModelParams::validate() const {
  if (n < 4) throw std::invalid_argument("n must be at least 4, got " + std::to_string(n));
  if (n % 2 != 0) throw std::invalid_argument("n must be even, got " + std::to_string(n));
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in (0, 1]");
  if (band < 1 || band > n - 1) {
    throw std::invalid_argument("band must lie in [1, n-1], got " + std::to_string(band));
  }
}

Eigen::MatrixXd build_model_matrix(const ModelParams& params) {
  params.validate();
  const Index n = params.n;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n && j - i <= params.band; ++j) {
      m(i, j) = params.p;
      m(j, i) = params.p;
    }
  }
  return m;
}

std::int64_t RandomLinearGraph::edge_count() const {
  std::int64_t edges = 0;
  for (Index j = 0; j < size(); ++j)
    for (Index i = 0; i < j; ++i) edges += adjacency(i, j);
  return edges;
}

RandomLinearGraph sample_graph(const ModelParams& params, std::uint64_t seed) {
  params.validate();
  const Index n = params.n;
  RandomLinearGraph g;
  g.params = params;
  g.seed = seed;
  g.adjacency = AdjacencyMatrix::Zero(n, n);
  g.true_order = Permutation::identity(static_cast<std::size_t>(n));

  Rng rng(seed);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n && j - i <= params.band; ++j) {
      if (rng.uniform() < params.p) {
        g.adjacency(i, j) = 1;
        g.adjacency(j, i) = 1;
      }
    }
  }
  return g;
}

RandomLinearGraph scramble(const RandomLinearGraph& graph, const Permutation& perm) {
  const Index n = graph.size();
  if (static_cast<Index>(perm.size()) != n) {
    throw std::invalid_argument("scramble: permutation size " + std::to_string(perm.size()) +
                                " does not match graph size " + std::to_string(n));
  }
  RandomLinearGraph out;
  out.params = graph.params;
  out.seed = graph.seed;
  out.adjacency = AdjacencyMatrix::Zero(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) out.adjacency(perm[i], perm[j]) = graph.adjacency(i, j);
  // Vertex perm[i] sits where vertex i did.
  out.true_order = graph.true_order.compose(perm.inverse());
  return out;
}

Permutation random_permutation(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Index> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = static_cast<Index>(i);
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(m[i - 1], m[j]);
  }
  return Permutation(std::move(m));
}

std::vector<std::int64_t> degree_vector(const RandomLinearGraph& graph) {
  const Index n = graph.size();
  std::vector<std::int64_t> deg(n, 0);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) deg[i] += graph.adjacency(i, j);
  return deg;
}

std::int64_t common_neighbors(const RandomLinearGraph& graph, Index u, Index v) {
  const Index n = graph.size();
  if (u < 0 || u >= n || v < 0 || v >= n) {
    throw std::out_of_range("common_neighbors: vertex out of range");
  }
  if (u == v) throw std::invalid_argument("common_neighbors: u and v must differ");
  std::int64_t count = 0;
  for (Index w = 0; w < n; ++w) count += graph.adjacency(u, w) & graph.adjacency(v, w);
  return count;
}

} // namespace rlg
