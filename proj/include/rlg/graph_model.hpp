#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "rlg/permutation.hpp"

namespace rlg {

using AdjacencyMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Parameters of the random linear graph: n vertices on a line, each pair at
/// distance 1..band joined independently with probability p.
struct ModelParams {
  Index n = 0;
  double p = 0.0;
  Index band = 0;

  /// Band n/2 - 1, the width for which M = p(A - I) holds exactly.
  static Index default_band(Index n) { return n / 2 - 1; }
  /// Params with the default band.
  static ModelParams make(Index n, double p);

  /// Throws std::invalid_argument on odd n, n < 4, p outside (0, 1] or band
  /// outside [1, n-1].
  void validate() const;

  Index half() const noexcept { return n / 2; }
  bool has_default_band() const noexcept { return band == default_band(n); }
};

/// Expected adjacency: p at offsets 1..band from the diagonal, zero elsewhere.
Eigen::MatrixXd build_model_matrix(const ModelParams& params);

/// A sampled graph together with its hidden labeling.
struct RandomLinearGraph {
  ModelParams params;
  std::uint64_t seed = 0;
  AdjacencyMatrix adjacency;
  /// true_order[v] = latent line position of vertex v.
  Permutation true_order;

  Index size() const noexcept { return static_cast<Index>(adjacency.rows()); }
  std::int64_t edge_count() const;
  Eigen::MatrixXd adjacency_as_double() const { return adjacency.cast<double>(); }
};

/// Draws each cell above the diagonal as Bernoulli(m_ij) from a stream seeded
/// by `seed`; the result is a pure function of (params, seed).
RandomLinearGraph sample_graph(const ModelParams& params, std::uint64_t seed);

/// Relabels vertex i as perm[i]. Scrambling by perm and then by
/// perm.inverse() restores the input.
RandomLinearGraph scramble(const RandomLinearGraph& graph, const Permutation& perm);

/// Uniformly random permutation (Fisher-Yates on the given seed).
Permutation random_permutation(std::size_t n, std::uint64_t seed);

std::vector<std::int64_t> degree_vector(const RandomLinearGraph& graph);

/// |N(u) ∩ N(v)| for distinct vertices u, v (zero-based).
std::int64_t common_neighbors(const RandomLinearGraph& graph, Index u, Index v);

} // namespace rlg
