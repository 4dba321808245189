#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "oracles.hpp"
#include "rlg/model_spectrum.hpp"
#include "rlg/rank_metrics.hpp"
#include "rlg/seriation.hpp"

using namespace rlg;
using doctest::Approx;

namespace {

Permutation from_ints(const std::vector<int>& v) { return Permutation(std::vector<Index>(v.begin(), v.end())); }

std::vector<int> to_ints(const Permutation& p) { return {p.values().begin(), p.values().end()}; }

} // namespace

TEST_CASE("kendall_distance examples") {
  CHECK(kendall_distance(Permutation::identity(10)) == 0);
  CHECK(kendall_distance(Permutation::identity(4).reversed()) == 6);
  CHECK(kendall_distance(Permutation::from_one_based(std::vector<Index>{2, 1, 4, 3})) == 2);
  CHECK(kendall_distance(Permutation()) == 0);
}

TEST_CASE("exhaustive agreement with brute force for n <= 8") {
  for (int n = 1; n <= 8; ++n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    do {
      const auto perm = from_ints(p);
      CHECK(kendall_distance(perm) == oracle::inversions(p));
      CHECK(spearman_footrule(perm) == oracle::footrule(p));
    } while (std::next_permutation(p.begin(), p.end()));
  }
}

TEST_CASE("random agreement with brute force up to n = 2000") {
  std::mt19937_64 gen(3);
  for (int t = 0; t < 500; ++t) {
    const int n = 1 + static_cast<int>(gen() % (t < 450 ? 200 : 2000));
    const auto p = oracle::random_perm(n, gen);
    CHECK(kendall_distance(from_ints(p)) == oracle::inversions(p));
  }
}

TEST_CASE("two-argument kendall distance") {
  std::mt19937_64 gen(9);
  for (int t = 0; t < 50; ++t) {
    const auto c = from_ints(oracle::random_perm(30, gen));
    const auto truth = from_ints(oracle::random_perm(30, gen));
    // Brute force: pairs of items ordered differently.
    std::vector<int> pc(30), pt(30);
    for (int i = 0; i < 30; ++i) {
      pc[c[i]] = i;
      pt[truth[i]] = i;
    }
    std::int64_t brute = 0;
    for (int a = 0; a < 30; ++a)
      for (int b = a + 1; b < 30; ++b) brute += (pc[a] < pc[b]) != (pt[a] < pt[b]);
    CHECK(kendall_distance(c, truth) == brute);
  }
  CHECK_THROWS_AS(kendall_distance(Permutation::identity(3), Permutation::identity(4)), std::invalid_argument);
}

TEST_CASE("reversal complement and tau antisymmetry") {
  std::mt19937_64 gen(4);
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + static_cast<int>(gen() % 60);
    const auto p = from_ints(oracle::random_perm(n, gen));
    CHECK(kendall_distance(p) + kendall_distance(p.reversed()) == std::int64_t{n} * (n - 1) / 2);
    CHECK(kendall_tau(p).standard == Approx(-kendall_tau(p.reversed()).standard).scale(1.0));
  }
}

TEST_CASE("d_k_r") {
  const std::vector<double> y{1, 3, 2};
  CHECK(d_k_r(y, 1, 1) == 2);
  CHECK(d_k_r(y, 2, 1) == 1);
  CHECK(d_k_r(y, 1, 2) == 0);
  CHECK(d_k_r(y, 3, 1) == 0);
  const std::vector<double> tied{2, 2, 2};
  CHECK(d_k_r(tied, 1, 1) == 0);
  CHECK_THROWS_AS(d_k_r(y, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(d_k_r(y, 1, 0), std::invalid_argument);
  const std::vector<double> bad{1, std::nan(""), 0};
  CHECK_THROWS_AS(d_k_r(bad, 1, 1), std::invalid_argument);
}

TEST_CASE("d_k_r agrees with brute force") {
  std::mt19937_64 gen(12);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + static_cast<int>(gen() % 300);
    std::vector<double> y(static_cast<std::size_t>(n));
    // Every fourth vector gets coarse values so ties occur.
    for (auto& v : y) v = t % 4 == 0 ? std::round(3 * nd(gen)) : nd(gen);
    for (int k : {1, 2, 5, 17, 100})
      for (int r : {1, 2, 9, 50}) CHECK(d_k_r(y, k, r) == oracle::dkr(y, k, r));
  }
}

TEST_CASE("d_k_r is antitone in k and r") {
  std::mt19937_64 gen(21);
  std::normal_distribution<double> nd;
  std::vector<double> y(150);
  for (auto& v : y) v = nd(gen);
  for (int k = 1; k < 40; ++k)
    for (int r = 1; r < 40; ++r) {
      CHECK(d_k_r(y, k + 1, r) <= d_k_r(y, k, r));
      CHECK(d_k_r(y, k, r + 1) <= d_k_r(y, k, r));
    }
}

TEST_CASE("D_{1,1}(y) equals the Kendall distance of the sorting order") {
  std::mt19937_64 gen(31);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(gen() % 200);
    std::vector<double> y(static_cast<std::size_t>(n));
    for (auto& v : y) v = t % 3 == 0 ? std::round(nd(gen)) : nd(gen);
    const auto sigma = order_from_vector(y, TiePolicy::ascending_index);
    CHECK(d_k_r(y, 1, 1) == kendall_distance(sigma));
  }
}

TEST_CASE("spearman_footrule examples") {
  CHECK(spearman_footrule(Permutation::identity(6)) == 0);
  CHECK(spearman_footrule(Permutation::identity(4).reversed()) == 8);
  std::vector<Index> swap{4, 1, 2, 3, 0, 5, 6, 7};
  CHECK(spearman_footrule(Permutation(swap)) == 8);
}

TEST_CASE("kendall_tau conventions") {
  auto t = kendall_tau(Permutation::identity(5));
  CHECK(t.paper == 1.0);
  CHECK(t.standard == 1.0);
  t = kendall_tau(Permutation::identity(4).reversed());
  CHECK(t.paper == Approx(0.5));
  CHECK(t.standard == Approx(-1.0));
  t = kendall_tau(Permutation::from_one_based(std::vector<Index>{2, 1, 4, 3}));
  CHECK(t.paper == Approx(5.0 / 6.0));
  CHECK(t.standard == Approx(1.0 / 3.0));
  CHECK_THROWS_AS(kendall_tau(Permutation::identity(1)), std::invalid_argument);
}

TEST_CASE("Diaconis-Graham chain") {
  CHECK(diaconis_graham_check(Permutation::identity(7)));
  CHECK(diaconis_graham_check(Permutation::identity(4).reversed()));
  std::mt19937_64 gen(1000);
  for (int t = 0; t < 1000; ++t) CHECK(diaconis_graham_check(from_ints(oracle::random_perm(100, gen))));
}

TEST_CASE("adversarial_y_star") {
  SUBCASE("k=1 is the unit eigenvector") {
    const auto y = adversarial_y_star(20, 1);
    CHECK((y - eigvec2_A_unit(20)).norm() < 1e-14);
  }
  SUBCASE("structure") {
    const Index n = 100, k = 10;
    const auto y = adversarial_y_star(n, k);
    const auto x = eigvec2_A_unit(n);
    CHECK(y.norm() == Approx(1.0).epsilon(1e-14));
    for (Index i = 1; i < k; ++i) CHECK(y(i) == y(0));
    const double ratio = y(k) / x(k);
    for (Index i = k; i < n; ++i) CHECK(y(i) == Approx(ratio * x(i)).epsilon(1e-12).scale(1e-300));
  }
  SUBCASE("descending-index ties give binom(k, 2) inversions") {
    const auto y = adversarial_y_star(100, 10);
    std::vector<double> v(y.data(), y.data() + y.size());
    CHECK(kendall_distance(order_from_vector(v, TiePolicy::descending_index)) == 45);
    CHECK(kendall_distance(order_from_vector(v, TiePolicy::ascending_index)) == 0);
    // Brute force over the score vector.
    const auto sigma = to_ints(order_from_vector(v, TiePolicy::descending_index));
    CHECK(oracle::inversions(sigma) == 45);
  }
  SUBCASE("distance scales like 1/n at k = n^(4/5)") {
    std::vector<double> scaled;
    for (Index n : {500, 1000, 2000}) {
      const auto k = static_cast<Index>(std::llround(std::pow(n, 0.8)));
      scaled.push_back((eigvec2_A_unit(n) - adversarial_y_star(n, k)).squaredNorm() * n);
    }
    const auto [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
    CHECK(*hi / *lo < 2.0);
  }
  CHECK_THROWS_AS(adversarial_y_star(20, 0), std::invalid_argument);
  CHECK_THROWS_AS(adversarial_y_star(20, 10), std::invalid_argument);
  CHECK_THROWS_AS(adversarial_y_star(21, 2), std::invalid_argument);
}

TEST_CASE("metric_report") {
  std::mt19937_64 gen(55);
  for (int t = 0; t < 30; ++t) {
    const int n = 2 + static_cast<int>(gen() % 80);
    const auto p = oracle::random_perm(n, gen);
    const auto sigma = from_ints(p);
    const std::vector<std::pair<Index, Index>> req{{1, 1}, {3, 2}, {10, 1}};
    const auto rep = metric_report(sigma, req);
    CHECK(rep.kendall_D == oracle::inversions(p));
    CHECK(rep.footrule_F == oracle::footrule(p));
    CHECK(rep.kendall_D <= rep.footrule_F);
    CHECK(rep.footrule_F <= 2 * rep.kendall_D);
    CHECK(rep.tau_standard >= -1.0);
    CHECK(rep.tau_standard <= 1.0);
    REQUIRE(rep.dkr_table.size() == 3);
    CHECK(rep.dkr_table[0].count == rep.kendall_D);
    std::vector<double> y(static_cast<std::size_t>(n));
    for (int pos = 0; pos < n; ++pos) y[static_cast<std::size_t>(p[pos])] = n - pos;
    CHECK(rep.dkr_table[1].count == oracle::dkr(y, 3, 2));
    CHECK(rep.dkr_table[2].count == oracle::dkr(y, 10, 1));
    for (const auto& e : rep.dkr_table) CHECK(e.count <= rep.kendall_D);
  }
}
