#include "rlg/spectral_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "rlg/rng.hpp"

namespace rlg {

namespace {

void require_symmetric(const Eigen::MatrixXd& m, const char* who) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(who) + ": matrix is " + std::to_string(m.rows()) +
                                "x" + std::to_string(m.cols()) + ", not square");
  }
  if (m.size() == 0) throw std::invalid_argument(std::string(who) + ": empty matrix");
  if (!m.allFinite()) throw std::invalid_argument(std::string(who) + ": non-finite entry");
  const double scale = m.cwiseAbs().maxCoeff();
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(scale, 1.0)) {
    throw std::invalid_argument(std::string(who) + ": matrix is not symmetric");
  }
}

// Strict weak order that puts the wanted end of the spectrum first.
struct Wanted {
  SpectralOrder order;
  double key(double v) const { return order == SpectralOrder::magnitude ? std::abs(v) : v; }
  bool operator()(double a, double b) const {
    if (key(a) != key(b)) return key(a) > key(b);
    return a > b;
  }
};

std::vector<Eigen::Index> sorted_indices(const Eigen::VectorXd& values, Wanted wanted) {
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(values.size()));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return wanted(values(a), values(b)); });
  return idx;
}

// Twice-applied classical Gram-Schmidt against the first `cols` columns of V.
// Returns the accumulated coefficients.
Eigen::VectorXd orthogonalize(const Eigen::MatrixXd& V, Eigen::Index cols, Eigen::VectorXd& w) {
  Eigen::VectorXd h = V.leftCols(cols).transpose() * w;
  w.noalias() -= V.leftCols(cols) * h;
  Eigen::VectorXd h2 = V.leftCols(cols).transpose() * w;
  w.noalias() -= V.leftCols(cols) * h2;
  return h + h2;
}

Eigen::VectorXd random_unit(Rng& rng, Eigen::Index n) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.uniform() - 0.5;
  return v.normalized();
}

} // namespace

void canonicalize_sign(Eigen::VectorXd& v) {
  Eigen::Index best = 0;
  double mag = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > mag) {
      mag = std::abs(v(i));
      best = i;
    }
  }
  if (v.size() > 0 && v(best) < 0) v = -v;
}

DenseSpectrum dense_spectrum(const Eigen::MatrixXd& matrix) {
  require_symmetric(matrix, "dense_spectrum");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(matrix);
  if (es.info() != Eigen::Success) throw std::runtime_error("dense_spectrum: decomposition failed");
  const auto idx = sorted_indices(es.eigenvalues(), Wanted{SpectralOrder::magnitude});
  DenseSpectrum out;
  out.values.resize(matrix.rows());
  out.vectors.resize(matrix.rows(), matrix.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const auto c = static_cast<Eigen::Index>(i);
    out.values(c) = es.eigenvalues()(idx[i]);
    out.vectors.col(c) = es.eigenvectors().col(idx[i]);
  }
  return out;
}

EigenResult second_eigenpair(const Eigen::MatrixXd& matrix, SpectralOrder order,
                             const SolverOptions& options) {
  require_symmetric(matrix, "second_eigenpair");
  const Eigen::Index n = matrix.rows();
  if (n < 2) throw std::invalid_argument("second_eigenpair: need at least a 2x2 matrix");
  if (!(options.tol > 0.0)) throw std::invalid_argument("second_eigenpair: tol must be positive");

  const Wanted wanted{order};
  const double tol = options.tol;
  const Index budget = options.max_iter > 0 ? options.max_iter : static_cast<Index>(10 * n);
  const Eigen::Index nev = std::min<Eigen::Index>(3, n);
  Eigen::Index m = options.basis_size > 0 ? options.basis_size : 40;
  m = std::clamp<Eigen::Index>(m, std::min<Eigen::Index>(n, nev + 2), n);

  const double anorm = matrix.norm();
  const double breakdown = 1e-12 * std::max(anorm, std::numeric_limits<double>::min());

  Rng rng(options.seed);
  Eigen::MatrixXd V = Eigen::MatrixXd::Zero(n, m + 1);
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m + 1, m + 1);
  V.col(0) = random_unit(rng, n);

  Index matvecs = 0;
  Eigen::Index kept = 0;
  double best_residual = std::numeric_limits<double>::infinity();
  Eigen::VectorXd w(n);

  for (;;) {
    // Expand the basis from column `kept` up to m columns.
    Eigen::Index built = m;
    bool exhausted = false;
    for (Eigen::Index j = kept; j < m; ++j) {
      w.noalias() = matrix * V.col(j);
      ++matvecs;
      H.col(j).head(j + 1) = orthogonalize(V, j + 1, w);
      if (j + 1 == n) {
        built = j + 1;
        exhausted = true;
        break;
      }
      double beta = w.norm();
      if (beta <= breakdown) {
        // Invariant subspace: continue with a fresh direction, uncoupled.
        Eigen::VectorXd r = random_unit(rng, n);
        orthogonalize(V, j + 1, r);
        const double rn = r.norm();
        if (rn <= 1e-8) {
          built = j + 1;
          exhausted = true;
          break;
        }
        H(j + 1, j) = 0.0;
        V.col(j + 1) = r / rn;
        continue;
      }
      H(j + 1, j) = beta;
      V.col(j + 1) = w / beta;
    }

    const Eigen::MatrixXd T =
        0.5 * (H.topLeftCorner(built, built) + H.topLeftCorner(built, built).transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    if (es.info() != Eigen::Success) {
      throw ConvergenceError("second_eigenpair: projected eigenproblem failed", best_residual);
    }
    const auto idx = sorted_indices(es.eigenvalues(), wanted);
    const double beta_m = exhausted ? 0.0 : H(built, built - 1);
    const Eigen::Index nwant = std::min<Eigen::Index>(nev, built);

    bool estimates_ok = true;
    for (Eigen::Index i = 0; i < nwant; ++i) {
      const double est = std::abs(beta_m * es.eigenvectors()(built - 1, idx[i]));
      if (est > tol) estimates_ok = false;
      if (i == 1) best_residual = std::min(best_residual, est);
    }

    if (estimates_ok && built >= 2) {
      Eigen::VectorXd x = V.leftCols(built) * es.eigenvectors().col(idx[1]);
      x.normalize();
      Eigen::VectorXd mx = matrix * x;
      ++matvecs;
      const double rq = x.dot(mx);
      const double res = (mx - rq * x).norm();
      best_residual = std::min(best_residual, res);
      if (res <= tol) {
        if (nwant >= 3) {
          const double second = es.eigenvalues()(idx[1]);
          const double third = es.eigenvalues()(idx[2]);
          if (std::abs(wanted.key(second) - wanted.key(third)) <= tol) {
            throw AmbiguityError("second_eigenpair: second and third eigenvalues coincide (" +
                                     std::to_string(second) + ", " + std::to_string(third) + ")",
                                 second, third);
          }
        }
        EigenResult out;
        out.value = rq;
        out.vector = std::move(x);
        canonicalize_sign(out.vector);
        out.residual = res;
        out.iterations = matvecs;
        return out;
      }
    }

    if (matvecs >= budget) {
      throw ConvergenceError("second_eigenpair: no convergence after " + std::to_string(matvecs) +
                                 " products",
                             best_residual);
    }
    if (exhausted) {
      // Whole space spanned yet the explicit check failed; start over.
      V.col(0) = random_unit(rng, n);
      H.setZero();
      kept = 0;
      continue;
    }

    // Thick restart: keep the wanted Ritz vectors plus the residual direction.
    const Eigen::Index keep = std::clamp<Eigen::Index>(built / 2, nwant, built - 1);
    Eigen::MatrixXd Y(built, keep);
    for (Eigen::Index i = 0; i < keep; ++i) Y.col(i) = es.eigenvectors().col(idx[i]);
    const Eigen::MatrixXd ritz = V.leftCols(built) * Y;
    const Eigen::VectorXd next = V.col(built);
    H.setZero();
    for (Eigen::Index i = 0; i < keep; ++i) {
      H(i, i) = es.eigenvalues()(idx[i]);
      H(keep, i) = beta_m * Y(built - 1, i);
    }
    V.leftCols(keep) = ritz;
    V.col(keep) = next;
    kept = keep;
  }
}

} // namespace rlg
