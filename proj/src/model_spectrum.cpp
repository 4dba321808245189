#include "rlg/model_spectrum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rlg {

namespace {

constexpr double kPi = std::numbers::pi;

void require_half(Index s, Index min_s, const char* who) {
  if (s < min_s) {
    throw std::invalid_argument(std::string(who) + ": need s >= " + std::to_string(min_s) +
                                ", got " + std::to_string(s));
  }
}

Index half_of(Index n, const char* who) {
  if (n < 4 || n % 2 != 0) {
    throw std::invalid_argument(std::string(who) + ": n must be even and >= 4, got " +
                                std::to_string(n));
  }
  return n / 2;
}

// Bisection on a bracket with f(lo), f(hi) of opposite sign, run until the
// midpoint no longer moves.
template <class F>
double bisect(F f, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double signed_by_residual(const Eigen::VectorXd& mv, const Eigen::VectorXd& v, double magnitude) {
  const double rp = (mv - magnitude * v).norm();
  const double rm = (mv + magnitude * v).norm();
  return rp <= rm ? magnitude : -magnitude;
}

} // namespace

double cos_pi_ratio(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw std::invalid_argument("cos_pi_ratio: denominator must be positive");
  // Reduce num/den into [0, 2).
  const std::int64_t period = 2 * den;
  num %= period;
  if (num < 0) num += period;
  if (num > den) num = period - num; // cos(2pi - x) = cos(x)
  double sign = 1.0;
  if (2 * num > den) { // cos(pi - x) = -cos(x)
    num = den - num;
    sign = -1.0;
  }
  // Now x = num/den in [0, 1/2].
  if (4 * num > den) {
    // cos(pi x) = sin(pi (1/2 - x))
    return sign * std::sin(kPi * static_cast<double>(den - 2 * num) / static_cast<double>(2 * den));
  }
  return sign * std::cos(kPi * static_cast<double>(num) / static_cast<double>(den));
}

double sin_pi_ratio(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw std::invalid_argument("sin_pi_ratio: denominator must be positive");
  // sin(pi x) = cos(pi (1/2 - x))
  return cos_pi_ratio(den - 2 * num, 2 * den);
}

Eigen::MatrixXd build_A(Index n) {
  const Index s = half_of(n, "build_A");
  Eigen::MatrixXd a(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) a(i, j) = std::abs(i - j) <= s - 1 ? 1.0 : 0.0;
  return a;
}

Eigen::MatrixXd build_B(Index n) {
  return Eigen::MatrixXd::Ones(n, n) - build_A(n);
}

Eigen::MatrixXd build_D(Index s) {
  require_half(s, 1, "build_D");
  Eigen::MatrixXd d(s, s);
  for (Index j = 1; j <= s; ++j)
    for (Index i = 1; i <= s; ++i) d(i - 1, j - 1) = i + j >= s + 2 ? 2.0 : 1.0;
  return d;
}

Eigen::VectorXd apply_A(const Eigen::VectorXd& x) {
  const Index n = static_cast<Index>(x.size());
  const Index s = half_of(n, "apply_A");
  Eigen::VectorXd prefix(n + 1);
  prefix(0) = 0.0;
  for (Index i = 0; i < n; ++i) prefix(i + 1) = prefix(i) + x(i);
  Eigen::VectorXd y(n);
  for (Index i = 0; i < n; ++i) {
    const Index lo = std::max<Index>(0, i - (s - 1));
    const Index hi = std::min<Index>(n - 1, i + (s - 1));
    y(i) = prefix(hi + 1) - prefix(lo);
  }
  return y;
}

Eigen::VectorXd apply_B(const Eigen::VectorXd& x) {
  return Eigen::VectorXd::Constant(x.size(), x.sum()) - apply_A(x);
}

double lambda2_abs_A(Index s) {
  require_half(s, 2, "lambda2_abs_A");
  // 2 + 2cos(2s pi/(2s+1)) = 4 sin^2(pi/(4s+2))
  return 0.5 / sin_pi_ratio(1, 4 * static_cast<std::int64_t>(s) + 2);
}

Eigen::VectorXd eigvec2_A(Index n) {
  const Index s = half_of(n, "eigvec2_A");
  Eigen::VectorXd u(n);
  const std::int64_t den = 4 * static_cast<std::int64_t>(s) + 2;
  for (Index j = 1; j <= s; ++j) {
    const double c = cos_pi_ratio(2 * j - 1, den);
    u(j - 1) = c;
    u(n - j) = -c;
  }
  return u;
}

Eigen::VectorXd eigvec2_A_unit(Index n) { return eigvec2_A(n).normalized(); }

Eigen::VectorXd eigvec2_A_half_normalized(Index n) {
  const Index s = half_of(n, "eigvec2_A_half_normalized");
  const double theta = kPi / (2.0 * s + 1.0);
  return std::sqrt(4.0 * theta / kPi) * eigvec2_A(n);
}

ClosedFormEigenpair eig2_A(Index n) {
  const Index s = half_of(n, "eig2_A");
  ClosedFormEigenpair out;
  out.vector = eigvec2_A_unit(n);
  out.matrix_id = ModelMatrixId::A;
  out.index_k = 2;
  out.value = signed_by_residual(apply_A(out.vector), out.vector, lambda2_abs_A(s));
  return out;
}

ClosedFormEigenpair eig_B(Index k, Index s) {
  require_half(s, 1, "eig_B");
  const Index n = 2 * s;
  if (k < 1 || k > n) {
    throw std::out_of_range("eig_B: k must lie in [1, " + std::to_string(n) + "], got " +
                            std::to_string(k));
  }
  const std::int64_t den = 2 * static_cast<std::int64_t>(s) + 1;
  Eigen::VectorXd x(s);
  for (Index j = 1; j <= s; ++j) {
    const double sign = j % 2 == 0 ? 1.0 : -1.0;
    x(j - 1) = sign * sin_pi_ratio(2 * static_cast<std::int64_t>(j) * k, den);
  }
  Eigen::VectorXd v(n);
  const double tail = k <= s ? -1.0 : 1.0;
  for (Index i = 0; i < s; ++i) {
    v(i) = x(s - 1 - i);
    v(s + i) = tail * x(i);
  }
  v.normalize();

  ClosedFormEigenpair out;
  out.vector = std::move(v);
  out.matrix_id = ModelMatrixId::B;
  out.index_k = k;
  // 2 + 2cos(2k pi/(2s+1)) = 4 cos^2(k pi/(2s+1))
  const double c = cos_pi_ratio(k, den);
  const double magnitude = 0.5 / std::abs(c);
  out.value = signed_by_residual(apply_B(out.vector), out.vector, magnitude);
  return out;
}

double char_poly_D(double theta, Index s) {
  return std::sin((s + 1) * theta) + 3.0 * std::sin(s * theta) - 4.0 * std::sin((s - 1) * theta) -
         4.0 * std::sin(theta);
}

double char_poly_D_continued(double phi, Index s) {
  // sinh(m phi) e^{-s phi}, without forming e^{m phi}.
  auto scaled = [&](Index m) {
    return 0.5 * (std::exp((m - s) * phi) - std::exp(-(m + s) * phi));
  };
  const double sign = s % 2 == 0 ? 1.0 : -1.0;
  return sign * (-scaled(s + 1) + 3.0 * scaled(s) + 4.0 * scaled(s - 1)) +
         4.0 * std::sinh(phi) * std::exp(-s * phi);
}

double ThetaRoot::eigenvalue() const {
  if (continued) return 1.0 / std::sqrt(2.0 + 2.0 * std::cosh(theta));
  return 0.5 / std::sin(0.5 * theta);
}

std::vector<ThetaRoot> theta_roots_D(Index s) {
  require_half(s, 2, "theta_roots_D");
  const Index grid = 32 * s;
  auto f = [s](double t) { return char_poly_D(t, s); };
  std::vector<ThetaRoot> roots;
  double prev_t = kPi / grid;
  double prev_f = f(prev_t);
  for (Index g = 2; g < grid; ++g) {
    const double t = kPi * g / grid;
    const double ft = f(t);
    if (ft == 0.0 || (ft < 0) != (prev_f < 0)) {
      ThetaRoot r;
      r.s = s;
      r.lo = prev_t;
      r.hi = t;
      r.theta = ft == 0.0 ? t : bisect(f, prev_t, t);
      roots.push_back(r);
      if (ft == 0.0) {
        // Step past an exact grid hit so it is not counted twice.
        ++g;
        if (g >= grid) break;
        prev_t = kPi * g / grid;
        prev_f = f(prev_t);
        continue;
      }
    }
    prev_t = t;
    prev_f = ft;
  }
  if (static_cast<Index>(roots.size()) < s - 1) {
    throw std::runtime_error("theta_roots_D: found " + std::to_string(roots.size()) +
                             " sign changes for s = " + std::to_string(s) + ", expected " +
                             std::to_string(s - 1));
  }

  auto g = [s](double phi) { return char_poly_D_continued(phi, s); };
  const double lo = std::log(2.0);
  const double hi = std::log(8.0);
  if ((g(lo) < 0) == (g(hi) < 0)) {
    throw std::runtime_error("theta_roots_D: continued root not bracketed for s = " +
                             std::to_string(s));
  }
  ThetaRoot c;
  c.s = s;
  c.lo = lo;
  c.hi = hi;
  c.continued = true;
  c.theta = bisect(g, lo, hi);
  roots.push_back(c);
  return roots;
}

ThetaRoot smallest_theta_root_D(Index s) {
  require_half(s, 2, "smallest_theta_root_D");
  const Index grid = 32 * s;
  auto f = [s](double t) { return char_poly_D(t, s); };
  double prev_t = kPi / grid;
  double prev_f = f(prev_t);
  for (Index g = 2; g < grid; ++g) {
    const double t = kPi * g / grid;
    const double ft = f(t);
    if (ft == 0.0 || (ft < 0) != (prev_f < 0)) {
      ThetaRoot r;
      r.s = s;
      r.lo = prev_t;
      r.hi = t;
      r.theta = ft == 0.0 ? t : bisect(f, prev_t, t);
      return r;
    }
    prev_t = t;
    prev_f = ft;
  }
  throw std::runtime_error("smallest_theta_root_D: no sign change for s = " + std::to_string(s));
}

double lambda1_A(Index s) { return smallest_theta_root_D(s).eigenvalue(); }

double lambda3_abs_upper_bound(Index s) {
  require_half(s, 2, "lambda3_abs_upper_bound");
  // 2 - 2cos(pi/s) = 4 sin^2(pi/(2s))
  return 0.5 / sin_pi_ratio(1, 2 * static_cast<std::int64_t>(s));
}

GapBounds gap_bounds_M(const ModelParams& params) {
  params.validate();
  if (!params.has_default_band()) {
    throw std::invalid_argument("gap_bounds_M: requires band n/2 - 1");
  }
  const Index s = params.half();
  require_half(s, 5, "gap_bounds_M");
  const double l1 = lambda1_A(s);
  const double l2 = lambda2_abs_A(s);
  const double l3 = lambda3_abs_upper_bound(s);
  GapBounds b;
  b.gap12_lower = params.p * (l1 - l2);
  b.gap23_lower = params.p * (l2 - l3);
  b.omega_sq = 4.0 / (2.0 * s + 1.0);
  return b;
}

double diff_sq_asymptotic(Index r, Index k, Index s) {
  if (r < 1 || k < 1 || r + k > s) {
    throw std::invalid_argument("diff_sq_asymptotic: need r >= 1, k >= 1, r + k <= s");
  }
  const double theta = kPi / (2.0 * s + 1.0);
  const double a = static_cast<double>(k) * (2.0 * r + k - 1.0);
  return a * a * std::pow(theta, 5) / kPi;
}

} // namespace rlg
