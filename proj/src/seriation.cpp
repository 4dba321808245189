#include "rlg/seriation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rlg/rank_metrics.hpp"

namespace rlg {

Permutation order_from_vector(std::span<const double> v, TiePolicy ties) {
  for (double x : v)
    if (std::isnan(x)) throw std::invalid_argument("order_from_vector: NaN entry");
  std::vector<Index> idx(v.size());
  std::iota(idx.begin(), idx.end(), Index{0});
  std::sort(idx.begin(), idx.end(), [&](Index a, Index b) {
    const double va = v[static_cast<std::size_t>(a)];
    const double vb = v[static_cast<std::size_t>(b)];
    if (va != vb) return va > vb;
    return ties == TiePolicy::ascending_index ? a < b : a > b;
  });
  return Permutation(std::move(idx));
}

Index count_ties(std::span<const double> v) {
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end());
  Index ties = 0;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i] == s[i - 1]) ++ties;
  return ties;
}

OrderingResult recover_order(const RandomLinearGraph& graph, const RecoveryOptions& options) {
  OrderingResult out;
  out.eigen = second_eigenpair(graph.adjacency_as_double(), options.order, options.solver);
  const std::span<const double> x(out.eigen.vector.data(),
                                  static_cast<std::size_t>(out.eigen.vector.size()));
  out.order = order_from_vector(x, options.ties);
  out.tie_count = count_ties(x);
  return out;
}

std::pair<Permutation, bool> align_up_to_reversal(const Permutation& candidate,
                                                  const Permutation& truth) {
  Permutation rev = candidate.reversed();
  if (kendall_distance(rev, truth) < kendall_distance(candidate, truth)) return {std::move(rev), true};
  return {candidate, false};
}

Permutation degree_baseline_order(const RandomLinearGraph& graph) {
  const Index n = graph.size();
  if (n < 2) throw std::invalid_argument("degree_baseline_order: need at least two vertices");
  const auto deg = degree_vector(graph);
  const auto anchor = static_cast<Index>(std::min_element(deg.begin(), deg.end()) - deg.begin());

  // |N[anchor] ∩ N[v]| with closed neighborhoods.
  std::vector<std::int64_t> overlap(static_cast<std::size_t>(n), 0);
  for (Index v = 0; v < n; ++v) {
    std::int64_t c = 0;
    for (Index w = 0; w < n; ++w) {
      const bool in_a = w == anchor || graph.adjacency(anchor, w);
      const bool in_v = w == v || graph.adjacency(v, w);
      c += in_a && in_v;
    }
    overlap[static_cast<std::size_t>(v)] = c;
  }

  std::vector<double> others;
  others.reserve(static_cast<std::size_t>(n - 1));
  for (Index v = 0; v < n; ++v)
    if (v != anchor) others.push_back(static_cast<double>(overlap[static_cast<std::size_t>(v)]));
  std::sort(others.begin(), others.end());
  const std::size_t m = others.size();
  const double med = m % 2 == 1 ? others[m / 2] : 0.5 * (others[m / 2 - 1] + others[m / 2]);

  std::vector<Index> near{anchor};
  std::vector<Index> far;
  for (Index v = 0; v < n; ++v) {
    if (v == anchor) continue;
    (static_cast<double>(overlap[static_cast<std::size_t>(v)]) > med ? near : far).push_back(v);
  }
  auto d = [&](Index v) { return deg[static_cast<std::size_t>(v)]; };
  std::sort(near.begin(), near.end(), [&](Index a, Index b) {
    return d(a) != d(b) ? d(a) < d(b) : a < b;
  });
  std::sort(far.begin(), far.end(), [&](Index a, Index b) {
    return d(a) != d(b) ? d(a) > d(b) : a < b;
  });
  near.insert(near.end(), far.begin(), far.end());
  return Permutation(std::move(near));
}

} // namespace rlg
