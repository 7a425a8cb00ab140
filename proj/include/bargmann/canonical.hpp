#pragma once

#include <optional>
#include <vector>

#include "bargmann/core_space.hpp"
#include "bargmann/pointsets.hpp"
#include "bargmann/types.hpp"

namespace bargmann {

struct QuasiPeriods {
  Complex eta1;
  Complex eta2;
  /// Largest deviation of a single probe from the mean, over both constants.
  double probe_spread = 0.0;
  /// |eta1 (is) - eta2 s - 2 pi i|
  double legendre_residual = 0.0;
};

/// sigma(z) = z prod' (1 - z/lambda) exp(z/lambda + z^2/(2 lambda^2)) for the square lattice.
/// The factors with |m|,|n| <= M are multiplied directly; the product over
/// the remaining lattice is summed in closed form through the lattice sums
/// sum lambda^{-4p} outside the box.
class WeierstrassSigma {
 public:
  explicit WeierstrassSigma(SquareLattice lattice, int truncation = 4);

  const SquareLattice& lattice() const noexcept { return lattice_; }
  int truncation() const noexcept { return M_; }
  const QuasiPeriods& quasi_periods() const noexcept { return eta_; }

  /// The product at z itself, without reduction to the central cell.
  LogComplex log_unreduced(Complex z) const;
  /// sigma(z), reducing z to the cell around its nearest lattice point first.
  LogComplex log_value(Complex z) const;
  /// sigma(z) / (lambda_idx - z); finite at z = lambda_idx.
  LogComplex log_deflated(Complex z, LatticeIndex idx) const;
  /// sigma'(lambda_idx).
  LogComplex log_derivative_at(LatticeIndex idx) const;

  /// Bound on the neglected terms of the outside-box series at z.
  double remainder_bound(Complex z) const noexcept;

 private:
  // log(sigma(z)/z) from the box product plus tail series. z must be unreduced-safe.
  Complex log_over_z(Complex z) const;
  // eta_Omega (z0 + Omega/2) + i pi (m + n + mn) for Omega = lambda_idx.
  Complex quasi_shift(LatticeIndex idx, Complex z0) const noexcept;

  SquareLattice lattice_;
  int M_;
  std::vector<Complex> tail_;  // tail_[p-1] = sum outside box of (m+in)^{-4p}
  QuasiPeriods eta_;
};

LogComplex sigma_log(const SquareLattice& lattice, Complex z, int truncation);
QuasiPeriods quasi_period_constants(const SquareLattice& lattice, int truncation);

struct GValue {
  LogComplex value;
  /// Largest |log| contribution of a point of gamma left out by the truncation.
  double omitted = 0.0;
  /// Summed contribution of the outermost retained shell.
  double last_shell = 0.0;
};

struct NodeDerivative {
  LogComplex value;
  /// |finite-difference estimate / value - 1|
  double fd_discrepancy = 0.0;
};

/// g(z) = (z - z00) prod' (1 - z/z_mn) exp(z/z_mn + z^2/(2 lambda_mn^2)) for an
/// indexed set uniformly close to the lattice. Indices not present in gamma
/// are filled by the lattice points themselves, so g = sigma * R with R a
/// finite correction over the perturbed points.
class CanonicalProduct {
 public:
  /// truncation defaults to the largest |m|,|n| in gamma.
  CanonicalProduct(const PointSet& gamma, SquareLattice lattice,
                   std::optional<int> truncation = std::nullopt, int sigma_truncation = 4);

  const SquareLattice& lattice() const noexcept { return sigma_.lattice(); }
  const WeierstrassSigma& sigma() const noexcept { return sigma_; }
  Complex z00() const noexcept { return z00_; }
  int truncation_index() const noexcept { return M_; }
  double closeness_Q() const noexcept { return Q_; }
  double separation_q() const noexcept { return q_; }
  double window_radius() const noexcept { return window_; }
  const std::vector<LatticeIndex>& indices() const noexcept { return idx_; }
  const std::vector<Complex>& zeros() const noexcept { return z_; }

  LogComplex log_value(Complex z) const;
  GValue evaluate(Complex z) const;
  /// log of g(z) / (z - z00); equals log g'(z00) at z = z00.
  LogComplex log_quotient(Complex z) const;

  /// g'(z_idx) from the product of the remaining factors.
  LogComplex log_derivative_at(LatticeIndex idx) const;
  /// Same, with a Richardson-extrapolated central-difference cross-check.
  NodeDerivative derivative_at_node(LatticeIndex idx) const;

  /// The product for gamma - z_idx, re-indexed so that z_idx sits at (0,0).
  CanonicalProduct translated_to(LatticeIndex idx) const;

  std::optional<std::size_t> find(LatticeIndex idx) const;
  /// Retained zeros followed by the lattice points standing in for truncated ones.
  std::vector<Complex> zero_set() const;
  double distance_to_zeros(Complex z) const;

 private:
  struct Retained {
    LatticeIndex idx;
    Complex z;
    Complex lambda;
    Complex delta;
    Complex lin;   // log1p(delta/lambda) subtracted in c0 (0 for the origin index)
    Complex inv;   // 1/z - 1/lambda (0 for the origin index)
  };

  CanonicalProduct(WeierstrassSigma sigma, std::vector<LatticeIndex> idx, std::vector<Complex> z,
                   double window, std::optional<int> truncation);
  void build(std::optional<int> truncation);

  // sum of log((z_k - z)/(lambda_k - z)) over retained k except `skip`.
  Complex sum_L(Complex z, std::optional<std::size_t> skip) const;
  Complex correction(Complex z) const noexcept { return c0_ + c1_ * z; }

  WeierstrassSigma sigma_;
  std::vector<LatticeIndex> idx_;
  std::vector<Complex> z_;
  double window_ = 0.0;
  Complex z00_;
  int M_ = 0;
  double Q_ = 0.0;
  double q_ = 0.0;
  std::vector<Retained> kept_;
  std::vector<std::size_t> dropped_;  // positions in z_ outside the truncation box
  std::unordered_map<LatticeIndex, std::size_t, LatticeIndexHash> where_;  // into kept_
  Complex c0_{0.0, 0.0};
  Complex c1_{0.0, 0.0};
};

struct GrowthBoundFit {
  double c = 0.0;
  double C1 = 0.0;
  double C2 = 0.0;
  double grid_radius = 0.0;
  std::size_t grid_points = 0;
  std::size_t violations = 0;
};

/// Fits C1 e^{-c phi(z)} dist(z, gamma) <= e^{-alpha|z|^2/2}|g(z)| <= C2 e^{c phi(z)}
/// on the grid, phi(z) = max(|z|,1) log max(|z|,1). C1 and C2 are taken from
/// the core disk |z| <= max(1, s); c is the smallest exponent covering the rest.
GrowthBoundFit growth_check(const CanonicalProduct& cp, FockParameter alpha, double grid_radius,
                            double grid_step);

}  // namespace bargmann
