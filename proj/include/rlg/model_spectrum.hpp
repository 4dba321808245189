#pragma once

// Closed-form and semi-analytic spectra of the deterministic matrices behind
// the linear model:
//
//   A  n x n, ones on |i-j| <= s-1 (diagonal included), s = n/2;  M = p(A - I)
//   B  J - A
//   D  s x s, D(i,j) = 1 + [i + j >= s + 2] (1-based); [x; Px] lifts an
//      eigenvector of D to one of A, P being the reversal.
//
// Trigonometric arguments are kept as exact rational multiples of pi and
// reduced to the first quadrant before evaluation.

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rlg/graph_model.hpp"
#include "rlg/permutation.hpp"

namespace rlg {

/// cos(pi * num / den) with exact reduction of the rational argument.
double cos_pi_ratio(std::int64_t num, std::int64_t den);
/// sin(pi * num / den) with exact reduction of the rational argument.
double sin_pi_ratio(std::int64_t num, std::int64_t den);

enum class ModelMatrixId { A, B, D };

struct ClosedFormEigenpair {
  double value = 0.0;
  Eigen::VectorXd vector;
  ModelMatrixId matrix_id = ModelMatrixId::A;
  Index index_k = 0;
};

// Dense materializations, used as oracles and by the CLI.
Eigen::MatrixXd build_A(Index n);
Eigen::MatrixXd build_B(Index n);
Eigen::MatrixXd build_D(Index s);

// O(n) products through prefix sums; every row of A and B is one or two
// contiguous runs of ones.
Eigen::VectorXd apply_A(const Eigen::VectorXd& x);
Eigen::VectorXd apply_B(const Eigen::VectorXd& x);

/// |lambda_2(A)| = 1 / sqrt(2 + 2 cos(2 s pi / (2s + 1))). Requires s >= 2.
double lambda2_abs_A(Index s);

/// Monotone second eigenvector of A: u_j = cos((2j-1) pi / (4s+2)) for
/// j <= s, antisymmetric extension u_j = -u_{n-j+1}. Unnormalized.
Eigen::VectorXd eigvec2_A(Index n);
/// Same vector scaled to unit Euclidean norm.
Eigen::VectorXd eigvec2_A_unit(Index n);
/// Same vector scaled by omega = sqrt(4 theta / pi), theta = pi / (2s+1); the
/// first half then has unit norm and the full vector has norm sqrt(2).
Eigen::VectorXd eigvec2_A_half_normalized(Index n);

/// Signed eigenpair for the monotone vector. The sign of the eigenvalue is
/// chosen by residual minimization over +-|lambda_2(A)|.
ClosedFormEigenpair eig2_A(Index n);

/// Eigenpair of B for 1 <= k <= n = 2s. The first half is the reversed
/// sin-form P x, x_j = (-1)^j sin(2 j k pi / (2s+1)); the second half is -x
/// for k <= s (antisymmetric) and x for k > s (symmetric). |value| =
/// 1/sqrt(2 + 2cos(2 k pi / (2s+1))); the sign is fixed by residual
/// minimization. Throws std::out_of_range for k outside [1, n].
ClosedFormEigenpair eig_B(Index k, Index s);

/// p(theta) = sin((s+1)t) + 3 sin(s t) - 4 sin((s-1)t) - 4 sin(t).
double char_poly_D(double theta, Index s);

/// Im p(pi + i phi) scaled by exp(-s phi). p has exactly one root
/// on the line Re(theta) = pi; it carries the eigenvalue of D that has no real
/// theta (2 - 2cos(theta) = 2 + 2cosh(phi) > 4).
double char_poly_D_continued(double phi, Index s);

struct ThetaRoot {
  /// Real root in (0, pi); for the continued root this holds phi, the
  /// imaginary part of theta = pi + i phi.
  double theta = 0.0;
  Index s = 0;
  double lo = 0.0;
  double hi = 0.0;
  bool continued = false;

  /// |eigenvalue| of D: 1/sqrt(2 - 2cos(theta)), or 1/sqrt(2 + 2cosh(phi)).
  double eigenvalue() const;
};

/// All s roots of p for s >= 2: the s-1 real roots found by a sign-change
/// scan on a 32 s point grid over (0, pi) followed by bisection to full
/// precision, plus the continued root. Real roots come first, ascending.
/// Throws std::runtime_error if the scan finds fewer than s-1 sign changes.
std::vector<ThetaRoot> theta_roots_D(Index s);

/// Smallest positive root of p, certified by a sign change. Requires s >= 2.
ThetaRoot smallest_theta_root_D(Index s);

/// Perron value of A, equal to the Perron value of D: 1/sqrt(2 - 2cos(theta_1)).
double lambda1_A(Index s);

/// 1/sqrt(2 - 2cos(pi / s)). Every eigenvalue of A other than lambda_1 and
/// lambda_2 is smaller than this in magnitude.
double lambda3_abs_upper_bound(Index s);

struct GapBounds {
  /// p (lambda_1(A) - lambda_2(A)).
  double gap12_lower = 0.0;
  /// p (lambda_2(A) - lambda3_abs_upper_bound): lower bound on the distance
  /// from lambda_2(M) to every eigenvalue of M below it.
  double gap23_lower = 0.0;
  /// 4 theta / pi with theta = pi / (2s + 1).
  double omega_sq = 0.0;
};

/// Requires the default band n/2 - 1 and s >= 5. Throws std::invalid_argument
/// otherwise.
GapBounds gap_bounds_M(const ModelParams& params);

/// Leading term (1/pi) k^2 (2r + k - 1)^2 theta^5, theta = pi / (2s+1), of the
/// squared gap between entries r and r+k of the half-normalized eigenvector.
/// Requires r >= 1, k >= 1, r + k <= s.
double diff_sq_asymptotic(Index r, Index k, Index s);

} // namespace rlg
