#pragma once

#include <vector>

#include "bargmann/types.hpp"

namespace bargmann {

/// The Gaussian weight exponent alpha of d mu_alpha = (alpha/pi) e^{-alpha|z|^2} dxdy.
class FockParameter {
 public:
  explicit FockParameter(double alpha);

  double value() const noexcept { return alpha_; }
  bool operator==(const FockParameter&) const = default;

 private:
  double alpha_;
};

/// log sqrt(alpha^n / n!), the scale of the orthonormal monomial e_n.
double log_basis_scale(double alpha, int n) noexcept;

/// e_n(z) = sqrt(alpha^n / n!) z^n in log form.
LogComplex basis_log(double alpha, int n, Complex z) noexcept;

/// A finite element of F_alpha^2: either coefficients in the orthonormal
/// monomial basis, or a combination of kernels sum_j w_j K(zeta_j, .).
class FockFunction {
 public:
  enum class Representation { Monomial, Kernel };

  static FockFunction monomial(FockParameter alpha, std::vector<Complex> coeffs);
  static FockFunction kernel_combination(FockParameter alpha, std::vector<Complex> nodes,
                                         std::vector<Complex> weights);

  Representation representation() const noexcept { return repr_; }
  bool is_monomial() const noexcept { return repr_ == Representation::Monomial; }
  FockParameter parameter() const noexcept { return alpha_; }
  double alpha() const noexcept { return alpha_.value(); }

  const std::vector<Complex>& coefficients() const noexcept { return coeffs_; }
  const std::vector<Complex>& nodes() const noexcept { return nodes_; }
  const std::vector<Complex>& weights() const noexcept { return weights_; }

  /// Highest index with a nonzero coefficient (0 for the zero function).
  int degree() const noexcept;

  /// Radius outside of which the weighted modulus is Gaussian-small:
  /// sqrt(N/alpha) + 4/sqrt(alpha) for monomials of degree N,
  /// max|zeta_j| + 4/sqrt(alpha) for kernel combinations.
  double concentration_radius() const noexcept;

  /// f(z) in log form.
  LogComplex value_log(Complex z) const;
  /// e^{-alpha|z|^2/2} f(z) in log form.
  LogComplex weighted_log(Complex z) const;
  /// f(z); throws Overflow outside the linear range.
  Complex operator()(Complex z) const { return value_log(z).to_complex(); }

 private:
  FockFunction(FockParameter alpha, Representation repr) : alpha_(alpha), repr_(repr) {}

  FockParameter alpha_;
  Representation repr_;
  std::vector<Complex> coeffs_;
  std::vector<Complex> nodes_;
  std::vector<Complex> weights_;
};

/// K(z, zeta) = e^{alpha conj(z) zeta}. Throws Overflow past e^700.
Complex kernel(FockParameter alpha, Complex z, Complex zeta);
LogComplex kernel_log(FockParameter alpha, Complex z, Complex zeta) noexcept;

/// e^{-alpha|z|^2/2} f(z), accumulated term-by-term in log form.
Complex eval_weighted(const FockFunction& f, Complex z);

/// The F_alpha^2 norm; exact for both representations.
double norm2(const FockFunction& f);

/// Grid estimate of sup_z e^{-alpha|z|^2/2}|f(z)| over |z| <= search_radius,
/// with one 3x-finer refinement pass around the grid maximiser.
double norm_inf(const FockFunction& f, double search_radius, double grid_step);

/// (T_a f)(z) = e^{alpha conj(a) z - alpha|a|^2/2} f(z - a). Kernel form only.
FockFunction translate(const FockFunction& f, Complex a);

/// <f, g> = integral of f conj(g) d mu_alpha, so that <f, K(z, .)> = f(z).
Complex inner(const FockFunction& f, const FockFunction& g);

}  // namespace bargmann
