#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rlg/graph_model.hpp"
#include "rlg/model_spectrum.hpp"
#include "rlg/spectral_solver.hpp"

using namespace rlg;
using doctest::Approx;

namespace {

double sign_free_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return std::min((a - b).norm(), (a + b).norm());
}

} // namespace

TEST_CASE("dense_spectrum ordering") {
  Eigen::MatrixXd d = Eigen::Vector2d(2, -3).asDiagonal();
  auto sp = dense_spectrum(d);
  CHECK(sp.values(0) == -3.0);
  CHECK(sp.values(1) == 2.0);

  sp = dense_spectrum(Eigen::MatrixXd::Identity(3, 3));
  for (Index i = 0; i < 3; ++i) CHECK(sp.values(i) == Approx(1.0));

  sp = dense_spectrum(oracle::matrix_A(4));
  const double expected[] = {2.618034, 1.618034, 0.618034, 0.381966};
  for (Index i = 0; i < 4; ++i) CHECK(std::abs(sp.values(i)) == Approx(expected[i]).epsilon(1e-6));

  // |lambda| tie broken toward the larger value.
  Eigen::MatrixXd t = Eigen::Vector3d(-2, 1, 2).asDiagonal();
  sp = dense_spectrum(t);
  CHECK(sp.values(0) == 2.0);
  CHECK(sp.values(1) == -2.0);

  Eigen::MatrixXd ns(2, 2);
  ns << 1, 2, 3, 4;
  CHECK_THROWS_AS(dense_spectrum(ns), std::invalid_argument);
  CHECK_THROWS_AS(dense_spectrum(Eigen::MatrixXd::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("second_abs_eigenpair on small diagonals") {
  Eigen::MatrixXd d = Eigen::Vector3d(5, -4, 1).asDiagonal();
  const auto r = second_abs_eigenpair(d);
  CHECK(r.value == Approx(-4.0).epsilon(1e-12));
  CHECK(std::abs(r.vector(1)) == Approx(1.0).epsilon(1e-10));
  CHECK(r.vector(1) > 0);
  CHECK(r.residual <= 1e-8);

  const auto a = second_largest_eigenpair(d);
  CHECK(a.value == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("model matrix n=64 p=1") {
  const Eigen::MatrixXd m = build_model_matrix(ModelParams::make(64, 1.0));
  const auto pair = eig2_A(64);
  const auto r = second_abs_eigenpair(m);
  CHECK(r.value == Approx(pair.value - 1.0).epsilon(1e-10));
  CHECK(sign_free_distance(r.vector, pair.vector) < 1e-7);
  const auto dense = dense_spectrum(m);
  CHECK(r.value == Approx(dense.values(1)).epsilon(1e-10));
}

TEST_CASE("sampled matrix n=512 p=0.5") {
  const auto params = ModelParams::make(512, 0.5);
  const auto g = sample_graph(params, 2024);
  const Eigen::MatrixXd mhat = g.adjacency_as_double();
  const Eigen::MatrixXd m = build_model_matrix(params);
  const auto r = second_abs_eigenpair(mhat, SolverOptions{1e-8, 0, 3, 0});
  CHECK(r.residual <= 1e-8);
  CHECK((mhat * r.vector - r.value * r.vector).norm() <= 1e-8);
  const double lambda2_model = 0.5 * (eig2_A(512).value - 1.0);
  const double enorm = dense_spectrum(mhat - m).values.cwiseAbs().maxCoeff();
  CHECK(std::abs(r.value - lambda2_model) <= enorm);
}

TEST_CASE("oracle equivalence on random symmetric matrices") {
  std::mt19937_64 gen(77);
  int compared_vectors = 0;
  for (int t = 0; t < 50; ++t) {
    const int n = 3 + static_cast<int>(gen() % 62);
    const auto m = oracle::random_symmetric(n, gen);
    const auto dense = dense_spectrum(m);
    for (auto order : {SpectralOrder::magnitude, SpectralOrder::algebraic}) {
      std::vector<double> vals(dense.values.data(), dense.values.data() + n);
      std::vector<Index> idx(static_cast<std::size_t>(n));
      std::iota(idx.begin(), idx.end(), 0);
      if (order == SpectralOrder::algebraic) {
        std::sort(idx.begin(), idx.end(), [&](Index a, Index b) { return vals[a] > vals[b]; });
      }
      const double second = vals[idx[1]];
      const double third = vals[idx[2]];
      const double key2 = order == SpectralOrder::magnitude ? std::abs(second) : second;
      const double key3 = order == SpectralOrder::magnitude ? std::abs(third) : third;
      const double key1 = order == SpectralOrder::magnitude ? std::abs(vals[idx[0]]) : vals[idx[0]];
      if (key2 - key3 <= 1e-8) continue;
      const auto r = second_eigenpair(m, order, SolverOptions{1e-9, 0, static_cast<std::uint64_t>(t), 0});
      CHECK(r.value == Approx(second).epsilon(1e-8).scale(1.0));
      CHECK(r.vector.norm() == Approx(1.0).epsilon(1e-12));
      if (key1 - key2 > 1e-4 && key2 - key3 > 1e-4) {
        CHECK(sign_free_distance(r.vector, dense.vectors.col(idx[1])) < 1e-6);
        ++compared_vectors;
      }
    }
  }
  CHECK(compared_vectors > 50);
}

TEST_CASE("restarts on a matrix larger than the basis") {
  std::mt19937_64 gen(5);
  const auto m = oracle::random_symmetric(300, gen);
  const auto dense = dense_spectrum(m);
  const auto r = second_eigenpair(m, SpectralOrder::magnitude, SolverOptions{1e-8, 0, 1, 20});
  CHECK(r.value == Approx(dense.values(1)).epsilon(1e-9));
  CHECK(r.residual <= 1e-8);
}

TEST_CASE("solver invariances") {
  const auto g = sample_graph(ModelParams::make(200, 0.5), 99);
  const Eigen::MatrixXd mhat = g.adjacency_as_double();
  const SolverOptions opts{1e-10, 0, 12, 0};
  const auto base = second_abs_eigenpair(mhat, opts);

  SUBCASE("determinism") {
    const auto again = second_abs_eigenpair(mhat, opts);
    CHECK(again.value == base.value);
    CHECK(again.vector == base.vector);
    CHECK(again.iterations == base.iterations);
  }
  SUBCASE("permutation equivariance") {
    const auto pi = random_permutation(200, 4);
    Eigen::MatrixXd pm(200, 200);
    for (Index i = 0; i < 200; ++i)
      for (Index j = 0; j < 200; ++j) pm(pi[i], pi[j]) = mhat(i, j);
    const auto r = second_abs_eigenpair(pm, opts);
    Eigen::VectorXd mapped(200);
    for (Index i = 0; i < 200; ++i) mapped(pi[i]) = base.vector(i);
    CHECK(sign_free_distance(r.vector, mapped) < 1e-8);
  }
  SUBCASE("scale equivariance") {
    const auto r = second_abs_eigenpair(3.5 * mhat, opts);
    CHECK(r.value == Approx(3.5 * base.value).epsilon(1e-10));
    CHECK(sign_free_distance(r.vector, base.vector) < 1e-8);
  }
}

TEST_CASE("errors") {
  SUBCASE("ambiguity between second and third") {
    Eigen::MatrixXd d = Eigen::Vector4d(5, 3, -3, 1).asDiagonal();
    CHECK_THROWS_AS(second_abs_eigenpair(d), AmbiguityError);
    Eigen::MatrixXd e = Eigen::Vector4d(5, 2, 2, 1).asDiagonal();
    CHECK_THROWS_AS(second_largest_eigenpair(e), AmbiguityError);
    try {
      second_abs_eigenpair(d);
    } catch (const AmbiguityError& err) {
      CHECK(std::abs(err.second()) == Approx(3.0));
      CHECK(std::abs(err.third()) == Approx(3.0));
    }
  }
  SUBCASE("budget exhaustion reports the best residual") {
    std::mt19937_64 gen(8);
    const auto m = oracle::random_symmetric(400, gen);
    try {
      second_abs_eigenpair(m, SolverOptions{1e-12, 5, 0, 0});
      FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& err) {
      CHECK(err.best_residual() > 0.0);
    }
  }
  Eigen::MatrixXd ns(3, 3);
  ns << 1, 2, 0, 0, 1, 0, 0, 0, 1;
  CHECK_THROWS_AS(second_abs_eigenpair(ns), std::invalid_argument);
  CHECK_THROWS_AS(second_abs_eigenpair(Eigen::MatrixXd::Identity(3, 3), SolverOptions{0.0, 0, 0, 0}),
                  std::invalid_argument);
}

TEST_CASE("disconnected graph: the solver finds both blocks") {
  // Two disjoint cliques of sizes 6 and 4 plus an isolated vertex: the
  // Lanczos start vector must not lose the second block.
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(11, 11);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) m(i, j) = i != j;
  for (int i = 6; i < 10; ++i)
    for (int j = 6; j < 10; ++j) m(i, j) = i != j;
  const auto r = second_largest_eigenpair(m);
  CHECK(r.value == Approx(3.0));
  CHECK(r.vector.head(6).norm() < 1e-8);
}

TEST_CASE("canonicalize_sign") {
  Eigen::VectorXd v(3);
  v << 0.2, -0.9, 0.1;
  canonicalize_sign(v);
  CHECK(v(1) == 0.9);
  v << -0.5, 0.5, 0.0;
  canonicalize_sign(v);
  CHECK(v(0) == 0.5);
}
