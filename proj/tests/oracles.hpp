#pragma once

// Independent reference computations for the tests. None of these call into
// the library's numerical routines.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace oracle {

using C = std::complex<double>;
inline constexpr double pi = 3.141592653589793238462643383279502884;

/// sum c_n sqrt(alpha^n/n!) z^n by plain recurrence.
inline C monomial_eval(const std::vector<C>& c, double alpha, C z) {
  C acc = 0.0;
  C term = 1.0;  // sqrt(alpha^n/n!) z^n
  for (std::size_t n = 0; n < c.size(); ++n) {
    if (n > 0) term *= std::sqrt(alpha / static_cast<double>(n)) * z;
    acc += c[n] * term;
  }
  return acc;
}

/// Jacobi theta_1(v, q) and theta_1'(0, q) for real 0 < q < 1.
inline C theta1(C v, double q) {
  C acc = 0.0;
  for (int n = 0; n < 40; ++n) {
    const double log_e = std::log(q) * (n + 0.5) * (n + 0.5);
    if (log_e + (2 * n + 1) * std::abs(v.imag()) < -700.0) break;
    acc += (n % 2 ? -1.0 : 1.0) * std::exp(log_e) * std::sin(static_cast<double>(2 * n + 1) * v);
  }
  return 2.0 * acc;
}

inline double theta1_prime0(double q) {
  double acc = 0.0;
  for (int n = 0; n < 40; ++n) {
    acc += (n % 2 ? -1.0 : 1.0) * std::pow(q, (n + 0.5) * (n + 0.5)) * (2 * n + 1);
  }
  return 2.0 * acc;
}

/// Weierstrass sigma of the square lattice s(Z + iZ) through the theta
/// representation sigma(z) = (s/pi) e^{pi z^2/(2 s^2)} theta_1(pi z/s)/theta_1'(0), q = e^{-pi}.
inline C sigma_theta(double s, C z) {
  const double q = std::exp(-pi);
  return (s / pi) * std::exp(pi * z * z / (2.0 * s * s)) * theta1(pi * z / s, q) / theta1_prime0(q);
}

/// sum over |m|,|n| <= M of e^{-pi (m^2 + n^2)}
inline double theta_sum_2d(int M) {
  double acc = 0.0;
  for (int m = -M; m <= M; ++m) {
    for (int n = -M; n <= M; ++n) acc += std::exp(-pi * (m * m + n * n));
  }
  return acc;
}

inline double min_pair_distance(const std::vector<C>& p) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) best = std::min(best, std::abs(p[i] - p[j]));
  }
  return best;
}

inline double nearest_distance(const std::vector<C>& p, C z) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& w : p) best = std::min(best, std::abs(w - z));
  return best;
}

inline std::int64_t count_in_square(const std::vector<C>& p, double tx, double ty, double r) {
  std::int64_t n = 0;
  for (const auto& z : p) {
    if (z.real() >= tx && z.real() < tx + r && z.imag() >= ty && z.imag() < ty + r) ++n;
  }
  return n;
}

inline bool square_fits(double tx, double ty, double r, double window) {
  const double xs[2] = {tx, tx + r};
  const double ys[2] = {ty, ty + r};
  for (double x : xs) {
    for (double y : ys) {
      if (x * x + y * y > window * window) return false;
    }
  }
  return true;
}

/// Extremal counts over a dense grid of translates plus, per axis, every
/// coordinate where a count can change and the midpoints between them.
/// Brackets the exact extrema: n_minus >= exact, n_plus <= exact.
inline std::pair<std::int64_t, std::int64_t> exhaustive_counts(const std::vector<C>& p, double r, double window,
                                                               double step) {
  std::vector<double> cand;
  for (double t = -window; t <= window; t += step) cand.push_back(t);
  std::vector<double> crit;
  for (const auto& z : p) {
    crit.push_back(z.real());
    crit.push_back(z.real() - r);
    crit.push_back(z.imag());
    crit.push_back(z.imag() - r);
  }
  std::sort(crit.begin(), crit.end());
  crit.erase(std::unique(crit.begin(), crit.end()), crit.end());
  for (std::size_t i = 0; i < crit.size(); ++i) {
    cand.push_back(crit[i]);
    if (i + 1 < crit.size()) cand.push_back(0.5 * (crit[i] + crit[i + 1]));
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  std::int64_t lo = std::numeric_limits<std::int64_t>::max();
  std::int64_t hi = -1;
  for (double tx : cand) {
    for (double ty : cand) {
      if (!square_fits(tx, ty, r, window)) continue;
      const auto n = count_in_square(p, tx, ty, r);
      lo = std::min(lo, n);
      hi = std::max(hi, n);
    }
  }
  return {lo, hi};
}

/// Gauss-Legendre rule by Newton iteration on the three-term recurrence.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  std::vector<double> x(n), w(n);
  auto legendre = [n](double t, double& p, double& dp) {
    double p0 = 1.0, p1 = t;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    p = p1;
    dp = n * (t * p1 - p0) / (t * t - 1.0);
  };
  for (int i = 0; i < n; ++i) {
    double t = std::cos(pi * (i + 0.75) / (n + 0.5));
    double p = 0.0, dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      legendre(t, p, dp);
      const double dt = p / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    legendre(t, p, dp);
    x[i] = t;
    w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
  return {x, w};
}

}  // namespace oracle
