#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rlg/permutation.hpp"

namespace rlg {

/// Number of inversions, sum over i < j of [sigma(i) > sigma(j)]. Merge-count
/// in O(n log n).
std::int64_t kendall_distance(const Permutation& sigma);

/// Kendall distance between two orderings of the same items: the inversions
/// of truth^-1 ∘ candidate.
std::int64_t kendall_distance(const Permutation& candidate, const Permutation& truth);

/// D_{k,r}(y) = |{(i, j) : y_j > y_i, i + k <= j, r <= i}| with 1-based i, j.
///
/// y is indexed by true position and a correct ordering places larger entries
/// first, so the counted pairs are the inverted ones; ties are not counted.
/// D_{1,1}(y) equals kendall_distance(order_from_vector(y)) under the
/// ascending-index tie policy. k >= 1 and r >= 1; O(n log n).
std::int64_t d_k_r(std::span<const double> y, Index k, Index r);

/// F(sigma) = sum |i - sigma(i)|.
std::int64_t spearman_footrule(const Permutation& sigma);

struct KendallTau {
  /// 1 - D / (n(n-1)).
  double paper = 1.0;
  /// 1 - 4D / (n(n-1)), the concordant-minus-discordant form.
  double standard = 1.0;
};

/// Requires n >= 2.
KendallTau kendall_tau(const Permutation& sigma);

/// D(sigma) <= F(sigma) <= 2 D(sigma).
bool diaconis_graham_check(const Permutation& sigma);

/// Unit second eigenvector x of M with its first k entries replaced by their
/// mean (the projection onto span{1_k / sqrt(k), e_{k+1}, ..., e_n}),
/// rescaled to unit norm. Requires even n >= 4 and 1 <= k < n/2.
Eigen::VectorXd adversarial_y_star(Index n, Index k);

struct DkrEntry {
  Index k = 1;
  Index r = 1;
  std::int64_t count = 0;
};

struct MetricReport {
  std::int64_t kendall_D = 0;
  std::int64_t footrule_F = 0;
  double tau_paper = 1.0;
  double tau_standard = 1.0;
  std::vector<DkrEntry> dkr_table;
};

/// Metrics of sigma (position -> true position) against the identity. The
/// D_{k,r} entries use the rank score y_{sigma(pos)} = n - pos.
MetricReport metric_report(const Permutation& sigma,
                           std::span<const std::pair<Index, Index>> dkr_requests = {});

} // namespace rlg
