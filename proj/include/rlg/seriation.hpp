#pragma once

#include <span>
#include <utility>

#include "rlg/graph_model.hpp"
#include "rlg/permutation.hpp"
#include "rlg/spectral_solver.hpp"

namespace rlg {

/// How equal entries are ordered when a vector is sorted descending.
enum class TiePolicy {
  ascending_index,  ///< lower index first; ties never count as inversions
  descending_index, ///< higher index first; k tied entries give k(k-1)/2 inversions
};

/// sigma with v[sigma(0)] >= v[sigma(1)] >= ... Throws std::invalid_argument
/// on NaN entries.
Permutation order_from_vector(std::span<const double> v,
                              TiePolicy ties = TiePolicy::ascending_index);

/// Number of adjacent equal values once v is sorted.
Index count_ties(std::span<const double> v);

struct RecoveryOptions {
  SolverOptions solver;
  /// Algebraic order picks the monotone eigenvector of the model for every
  /// even n >= 4; magnitude order does not for n <= 8.
  SpectralOrder order = SpectralOrder::algebraic;
  TiePolicy ties = TiePolicy::ascending_index;
};

struct OrderingResult {
  Permutation order;
  EigenResult eigen;
  /// Left false by recover_order; set by callers that align to a known order.
  bool reversed_applied = false;
  Index tie_count = 0;
};

/// Spectral seriation: sort vertices by the second eigenvector of the
/// adjacency matrix. Defined up to global reversal. Solver errors propagate.
OrderingResult recover_order(const RandomLinearGraph& graph, const RecoveryOptions& options = {});

/// candidate or candidate.reversed(), whichever is closer to truth in Kendall
/// distance, and whether the reversal was taken. Ties keep the candidate.
std::pair<Permutation, bool> align_up_to_reversal(const Permutation& candidate,
                                                  const Permutation& truth);

/// Degree-based baseline. The anchor is a minimum-degree vertex (lowest index
/// on ties). A vertex is on the anchor's side when its closed-neighborhood
/// overlap with the anchor exceeds the median overlap of all other vertices.
/// The anchor side is listed by ascending degree, then the far side by
/// descending degree; equal degrees go by index.
Permutation degree_baseline_order(const RandomLinearGraph& graph);

} // namespace rlg
