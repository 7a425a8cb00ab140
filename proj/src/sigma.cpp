#include "bargmann/canonical.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>

namespace bargmann {

namespace {

constexpr int kTailTerms = 40;
constexpr int kShellsPastBox = 400;
constexpr double kTruncationTolerance = 1e-12;

// Sum over Z[i] \ {0} of (m+in)^{-4}, from the Lipschitz expansion at tau = i:
// 2 zeta(4) + 2 (2 pi)^4 / 3! sum_N sigma_3(N) e^{-2 pi N}.
double g4_gaussian_integers() {
  double series = 0.0;
  for (int N = 1; N <= 14; ++N) {
    double s3 = 0.0;
    for (int d = 1; d <= N; ++d) {
      if (N % d == 0) s3 += static_cast<double>(d) * d * d;
    }
    series += s3 * std::exp(-2.0 * kPi * N);
  }
  const double two_pi = 2.0 * kPi;
  return std::pow(kPi, 4) / 45.0 + 2.0 * std::pow(two_pi, 4) / 6.0 * series;
}

// The square shell max(|m|,|n|) = k is four rotations of the edge m = k,
// -k < n <= k, and rotation by i leaves lambda^{-4p} unchanged.
// Returned scaled by base^{kpow}.
Complex shell_sum(std::int64_t k, int kpow, double base) {
  Complex acc{0.0, 0.0};
  for (std::int64_t n = -k + 1; n <= k; ++n) {
    const double kk = static_cast<double>(k);
    const double nn = static_cast<double>(n);
    const double log_mod = 0.5 * std::log((kk * kk + nn * nn) / (base * base));
    acc += std::polar(std::exp(-kpow * log_mod), -kpow * std::atan2(nn, kk));
  }
  return 4.0 * acc;
}

// t_p = (M+1)^{4p} * sum over (m,n) outside the box |m|,|n| <= M of (m+in)^{-4p}.
std::vector<Complex> compute_tail(int M) {
  const double base = M + 1.0;
  std::vector<Complex> t(kTailTerms);

  Complex inside{0.0, 0.0};
  for (std::int64_t k = 1; k <= M; ++k) inside += shell_sum(k, 4, 1.0);
  t[0] = (g4_gaussian_integers() - inside) * std::pow(base, 4);

  for (int p = 2; p <= kTailTerms; ++p) {
    const int kpow = 4 * p;
    Complex acc{0.0, 0.0};
    std::int64_t k = M + 1;
    const std::int64_t last = M + kShellsPastBox;
    for (; k <= last; ++k) {
      acc += shell_sum(k, kpow, base);
      if ((1.0 - kpow) * std::log(k / base) < std::log(1e-18)) break;
    }
    if (k > last) {
      // shell k ~ c_p k^{1-4p}, c_p = 4 int_{-1}^{1} (1+it)^{-4p} dt
      const Complex i1(0.0, 1.0);
      const double e = 1.0 - kpow;
      const Complex cp = 4.0 * (std::pow(Complex(1.0, 1.0), e) - std::pow(Complex(1.0, -1.0), e)) / (i1 * e);
      const double K = static_cast<double>(last);
      const double sum_rest = std::pow(K / base, 2.0 - kpow) * base / (kpow - 2.0) -
                              0.5 * std::pow(K / base, 1.0 - kpow);
      acc += cp * sum_rest * base;
    }
    t[p - 1] = acc;
  }
  return t;
}

const std::vector<Complex>& tail_for(int M) {
  static std::mutex mu;
  static std::map<int, std::vector<Complex>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(M);
  if (it == cache.end()) it = cache.emplace(M, compute_tail(M)).first;
  return it->second;
}

Complex reduced_imag(Complex w) { return {w.real(), reduce_phase(w.imag())}; }

}  // namespace

WeierstrassSigma::WeierstrassSigma(SquareLattice lattice, int truncation)
    : lattice_(lattice), M_(truncation) {
  if (truncation < 1 || truncation > 4000) {
    throw Error(ErrorCode::InvalidArgument, "sigma truncation must be in [1, 4000]");
  }
  tail_ = tail_for(M_);

  const double s = lattice_.spacing();
  const Complex is(0.0, s);
  const Complex probes[] = {{0.1, 0.2}, {0.25, -0.15}, {-0.3, 0.05}};
  Complex e1[3];
  Complex e2[3];
  for (int p = 0; p < 3; ++p) {
    const Complex z = probes[p] * s;
    const Complex base = log_unreduced(z).log();
    const Complex d1 = reduced_imag(log_unreduced(z + s).log() - base - Complex(0.0, kPi));
    const Complex d2 = reduced_imag(log_unreduced(z + is).log() - base - Complex(0.0, kPi));
    e1[p] = d1 / (z + 0.5 * s);
    e2[p] = d2 / (z + 0.5 * is);
  }
  eta_.eta1 = (e1[0] + e1[1] + e1[2]) / 3.0;
  eta_.eta2 = (e2[0] + e2[1] + e2[2]) / 3.0;
  for (int p = 0; p < 3; ++p) {
    eta_.probe_spread = std::max({eta_.probe_spread, std::abs(e1[p] - eta_.eta1), std::abs(e2[p] - eta_.eta2)});
  }
  eta_.legendre_residual = std::abs(eta_.eta1 * is - eta_.eta2 * s - Complex(0.0, 2.0 * kPi));

  // Tolerances are on the dimensionless eta * s.
  const double rotation = std::abs(eta_.eta2 + Complex(0.0, 1.0) * eta_.eta1) * s;
  if (eta_.probe_spread * s > 1e-10 || eta_.legendre_residual > 1e-10 || rotation > 1e-10) {
    throw Error(ErrorCode::InconsistentProbes,
                "quasi-period probes disagree: spread " + std::to_string(eta_.probe_spread * s) +
                    ", Legendre residual " + std::to_string(eta_.legendre_residual) +
                    ", rotation residual " + std::to_string(rotation));
  }
}

double WeierstrassSigma::remainder_bound(Complex z) const noexcept {
  const double rho = std::abs(z) / ((M_ + 1.0) * lattice_.spacing());
  if (rho >= 1.0) return std::numeric_limits<double>::infinity();
  const double r4 = std::pow(rho, 4.0);
  const int next = kTailTerms + 1;
  return 16.0 * (M_ + 1.0) * (M_ + 1.0) * std::pow(r4, next) / (4.0 * next * (1.0 - r4));
}

Complex WeierstrassSigma::log_over_z(Complex z) const {
  const double bound = remainder_bound(z);
  if (bound > kTruncationTolerance) {
    throw Error(ErrorCode::TruncationTooSmall,
                "sigma truncation M=" + std::to_string(M_) + " too small at |z|=" +
                    std::to_string(std::abs(z)) + " (remainder bound " + std::to_string(bound) + ")");
  }
  const double s = lattice_.spacing();
  Complex acc{0.0, 0.0};
  for (int n = -M_; n <= M_; ++n) {
    for (int m = -M_; m <= M_; ++m) {
      if (m == 0 && n == 0) continue;
      const Complex u = z / Complex(s * m, s * n);
      acc += log1p(-u) + u + 0.5 * u * u;
    }
  }
  const Complex w = z / (s * (M_ + 1.0));
  const Complex w4 = (w * w) * (w * w);
  Complex pw = w4;
  for (int p = 1; p <= kTailTerms; ++p) {
    acc -= pw * tail_[p - 1] / (4.0 * p);
    pw *= w4;
    if (std::abs(pw) < 1e-300) break;
  }
  return acc;
}

Complex WeierstrassSigma::quasi_shift(LatticeIndex idx, Complex z0) const noexcept {
  const Complex omega = lattice_.point(idx);
  const Complex eta = static_cast<double>(idx.m) * eta_.eta1 + static_cast<double>(idx.n) * eta_.eta2;
  const std::int64_t parity = ((idx.m + idx.n + idx.m * idx.n) % 2 + 2) % 2;
  return eta * (z0 + 0.5 * omega) + Complex(0.0, kPi * static_cast<double>(parity));
}

LogComplex WeierstrassSigma::log_unreduced(Complex z) const {
  if (z == Complex(0.0, 0.0)) return LogComplex::zero();
  const Complex rest = log_over_z(z);
  if (rest.real() == -std::numeric_limits<double>::infinity()) return LogComplex::zero();
  return LogComplex::from_log(std::log(z) + rest);
}

LogComplex WeierstrassSigma::log_value(Complex z) const {
  const LatticeIndex idx = lattice_.nearest_index(z);
  const Complex z0 = z - lattice_.point(idx);
  if (z0 == Complex(0.0, 0.0)) return LogComplex::zero();
  return LogComplex::from_log(std::log(z0) + log_over_z(z0) + quasi_shift(idx, z0));
}

LogComplex WeierstrassSigma::log_deflated(Complex z, LatticeIndex idx) const {
  const Complex z0 = z - lattice_.point(idx);
  return LogComplex::from_log(log_over_z(z0) + quasi_shift(idx, z0) + Complex(0.0, kPi));
}

LogComplex WeierstrassSigma::log_derivative_at(LatticeIndex idx) const {
  return LogComplex::from_log(quasi_shift(idx, Complex(0.0, 0.0)));
}

LogComplex sigma_log(const SquareLattice& lattice, Complex z, int truncation) {
  return WeierstrassSigma(lattice, truncation).log_value(z);
}

QuasiPeriods quasi_period_constants(const SquareLattice& lattice, int truncation) {
  return WeierstrassSigma(lattice, truncation).quasi_periods();
}

}  // namespace bargmann
