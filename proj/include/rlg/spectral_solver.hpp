#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "rlg/permutation.hpp"

namespace rlg {

/// Which end of the spectrum "second eigenvalue" refers to.
enum class SpectralOrder {
  magnitude, ///< second largest |lambda|; ties broken by larger lambda
  algebraic, ///< second largest lambda
};

struct SolverOptions {
  /// Bound on ||M v - lambda v|| for the returned pair.
  double tol = 1e-8;
  /// Matrix-vector product budget; 0 means 10 n.
  Index max_iter = 0;
  /// Seeds the Lanczos start vector.
  std::uint64_t seed = 0;
  /// Krylov basis size before a restart; 0 picks min(n, 40).
  Index basis_size = 0;
};

struct EigenResult {
  double value = 0.0;
  /// Unit norm; the component of largest magnitude is positive.
  Eigen::VectorXd vector;
  double residual = 0.0;
  /// Matrix-vector products spent.
  Index iterations = 0;
};

class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, double best_residual)
      : std::runtime_error(what), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

private:
  double best_residual_;
};

/// The requested eigenvalue is not separated from the next one within tol.
class AmbiguityError : public std::runtime_error {
public:
  AmbiguityError(const std::string& what, double second, double third)
      : std::runtime_error(what), second_(second), third_(third) {}
  double second() const noexcept { return second_; }
  double third() const noexcept { return third_; }

private:
  double second_;
  double third_;
};

struct DenseSpectrum {
  /// Sorted by |lambda| descending, ties by lambda descending.
  Eigen::VectorXd values;
  /// Column i belongs to values[i].
  Eigen::MatrixXd vectors;
};

/// Full eigendecomposition. Throws std::invalid_argument if the matrix is not
/// square and symmetric to 1e-12 (relative to its largest entry), and
/// std::runtime_error if the decomposition fails.
DenseSpectrum dense_spectrum(const Eigen::MatrixXd& matrix);

/// Second eigenpair in the requested order by thick-restart Lanczos with full
/// reorthogonalization. Throws ConvergenceError when the product budget runs
/// out, AmbiguityError when the second and third eigenvalues (in the same
/// order) coincide within tol.
EigenResult second_eigenpair(const Eigen::MatrixXd& matrix, SpectralOrder order,
                             const SolverOptions& options = {});

inline EigenResult second_abs_eigenpair(const Eigen::MatrixXd& matrix,
                                        const SolverOptions& options = {}) {
  return second_eigenpair(matrix, SpectralOrder::magnitude, options);
}

inline EigenResult second_largest_eigenpair(const Eigen::MatrixXd& matrix,
                                            const SolverOptions& options = {}) {
  return second_eigenpair(matrix, SpectralOrder::algebraic, options);
}

/// Flips v so that its largest-magnitude component (first one on ties) is
/// positive.
void canonicalize_sign(Eigen::VectorXd& v);

} // namespace rlg
