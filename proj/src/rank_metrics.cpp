#include "rlg/rank_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "rlg/model_spectrum.hpp"

namespace rlg {

namespace {

std::int64_t merge_count(std::vector<Index>& a, std::vector<Index>& buf, std::size_t lo,
                         std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t count = merge_count(a, buf, lo, mid) + merge_count(a, buf, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (a[j] < a[i]) {
      count += static_cast<std::int64_t>(mid - i);
      buf[k++] = a[j++];
    } else {
      buf[k++] = a[i++];
    }
  }
  while (i < mid) buf[k++] = a[i++];
  while (j < hi) buf[k++] = a[j++];
  std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo), buf.begin() + static_cast<std::ptrdiff_t>(hi),
            a.begin() + static_cast<std::ptrdiff_t>(lo));
  return count;
}

class Fenwick {
public:
  explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}
  void add(std::size_t i) {
    for (++i; i < tree_.size(); i += i & (~i + 1)) ++tree_[i];
  }
  // Number of inserted ranks < i.
  std::int64_t below(std::size_t i) const {
    std::int64_t s = 0;
    for (; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

private:
  std::vector<std::int64_t> tree_;
};

} // namespace

std::int64_t kendall_distance(const Permutation& sigma) {
  std::vector<Index> a(sigma.values().begin(), sigma.values().end());
  std::vector<Index> buf(a.size());
  return merge_count(a, buf, 0, a.size());
}

std::int64_t kendall_distance(const Permutation& candidate, const Permutation& truth) {
  if (candidate.size() != truth.size()) {
    throw std::invalid_argument("kendall_distance: sizes differ");
  }
  return kendall_distance(truth.inverse().compose(candidate));
}

std::int64_t d_k_r(std::span<const double> y, Index k, Index r) {
  if (k < 1 || r < 1) throw std::invalid_argument("d_k_r: k and r must be at least 1");
  const auto n = static_cast<Index>(y.size());
  for (double v : y)
    if (std::isnan(v)) throw std::invalid_argument("d_k_r: NaN entry");

  std::vector<double> sorted(y.begin(), y.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  auto rank = [&](double v) {
    return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin());
  };

  Fenwick fw(sorted.size());
  std::int64_t count = 0;
  // 1-based j; i = j - k becomes eligible once i >= r.
  for (Index j = 1; j <= n; ++j) {
    const Index i = j - k;
    if (i >= r) fw.add(rank(y[static_cast<std::size_t>(i - 1)]));
    count += fw.below(rank(y[static_cast<std::size_t>(j - 1)]));
  }
  return count;
}

std::int64_t spearman_footrule(const Permutation& sigma) {
  std::int64_t f = 0;
  for (std::size_t i = 0; i < sigma.size(); ++i) f += std::abs(static_cast<std::int64_t>(i) - sigma[i]);
  return f;
}

KendallTau kendall_tau(const Permutation& sigma) {
  const auto n = static_cast<double>(sigma.size());
  if (sigma.size() < 2) throw std::invalid_argument("kendall_tau: need n >= 2");
  const auto d = static_cast<double>(kendall_distance(sigma));
  const double pairs = n * (n - 1.0);
  return KendallTau{1.0 - d / pairs, 1.0 - 4.0 * d / pairs};
}

bool diaconis_graham_check(const Permutation& sigma) {
  const std::int64_t d = kendall_distance(sigma);
  const std::int64_t f = spearman_footrule(sigma);
  return d <= f && f <= 2 * d;
}

Eigen::VectorXd adversarial_y_star(Index n, Index k) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("adversarial_y_star: n must be even and >= 4");
  if (k < 1 || k >= n / 2) throw std::invalid_argument("adversarial_y_star: need 1 <= k < n/2");
  Eigen::VectorXd y = eigvec2_A_unit(n);
  const double mean = y.head(k).mean();
  y.head(k).setConstant(mean);
  return y.normalized();
}

MetricReport metric_report(const Permutation& sigma,
                           std::span<const std::pair<Index, Index>> dkr_requests) {
  MetricReport rep;
  rep.kendall_D = kendall_distance(sigma);
  rep.footrule_F = spearman_footrule(sigma);
  const auto tau = kendall_tau(sigma);
  rep.tau_paper = tau.paper;
  rep.tau_standard = tau.standard;
  if (!dkr_requests.empty()) {
    const std::size_t n = sigma.size();
    std::vector<double> y(n);
    for (std::size_t pos = 0; pos < n; ++pos)
      y[static_cast<std::size_t>(sigma[pos])] = static_cast<double>(n - pos);
    for (const auto& [k, r] : dkr_requests) rep.dkr_table.push_back({k, r, d_k_r(y, k, r)});
  }
  return rep;
}

} // namespace rlg
