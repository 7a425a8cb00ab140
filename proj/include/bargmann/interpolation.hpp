#pragma once

#include <map>
#include <memory>
#include <vector>

#include "bargmann/canonical.hpp"
#include "bargmann/core_space.hpp"
#include "bargmann/pointsets.hpp"

namespace bargmann {

using NodeData = std::map<LatticeIndex, Complex>;

/// Weighted interpolation data e^{-alpha|z_k|^2/2} f(z_k) = a_k on an indexed set.
/// Nodes without an entry carry a_k = 0.
struct InterpolationProblem {
  PointSet gamma;
  SquareLattice lattice;
  FockParameter alpha;
  NodeData data;
};

/// pi * density of the lattice, the beta of density beta/pi.
double lattice_beta(const SquareLattice& lattice) noexcept;

/// Partial sums of f(z) = sum f(z_k)/g'(z_k) g(z)/(z - z_k) over |z_k| <= R.
class LagrangeReconstructor {
 public:
  LagrangeReconstructor(const PointSet& gamma, SquareLattice lattice, FockParameter alpha, NodeData samples,
                        double truncation_radius);

  /// Throws InvalidArgument unless |z| < R/2.
  LogComplex value_log(Complex z) const;
  /// At a node the supplied sample itself.
  Complex operator()(Complex z) const;

  double truncation_radius() const noexcept { return R_; }
  std::size_t term_count() const noexcept { return nodes_.size(); }

 private:
  struct Term {
    Complex z;
    Complex sample;
    LogComplex sample_over_derivative;
  };
  CanonicalProduct g_;
  double R_;
  std::vector<Term> nodes_;
};

Complex lagrange_reconstruct(const PointSet& gamma, SquareLattice lattice, FockParameter alpha,
                             const NodeData& samples, Complex z, double truncation_radius);

struct NormGrowth {
  /// l2 norm of the data on the nodes the series uses.
  double data_l2 = 0.0;
  double norm2 = 0.0;
  /// norm2 / data_l2; NaN when the data vanish.
  double ratio = 0.0;
  bool applicable = false;
  int degree = 0;
};

/// The explicit interpolation series
///   e^{-alpha|z|^2/2} f(z) = sum_k a_k e^{-alpha|w|^2/2 + i alpha Im(conj(z_k) z)} g_k(w)/w,
/// w = z - z_k, g_k the canonical product of gamma - z_k, over |z_k| <= R.
class InterpolantEvaluator {
 public:
  const InterpolationProblem& problem() const noexcept;
  double truncation_radius() const noexcept;
  const std::vector<LatticeIndex>& term_indices() const noexcept;
  const std::vector<Complex>& coefficients() const noexcept { return coeff_; }

  /// Weighted basis term for node k (data 1), in log form.
  LogComplex term_log(std::size_t k, Complex z) const;
  /// e^{-alpha|z|^2/2} f(z)
  Complex weighted(Complex z) const;
  LogComplex value_log(Complex z) const;

  /// Max |weighted(z_j) - a_j| over nodes with |z_j| <= R/2.
  double residual_check() const;
  /// C = max over grid points |z| <= R/2 of sum_k |term_k(z)|, so that
  /// |weighted(z)| <= sup|a| C there.
  double pointwise_constant(double grid_step) const;

  /// Same nodes and cached products, different data.
  InterpolantEvaluator with_data(const NodeData& data) const;

  NormGrowth norm_growth_report(int N) const;

 private:
  struct Basis;
  InterpolantEvaluator(std::shared_ptr<const Basis> basis, InterpolationProblem problem);
  friend InterpolantEvaluator build_interpolant(const InterpolationProblem& problem, double truncation_radius);

  std::shared_ptr<const Basis> basis_;
  InterpolationProblem problem_;
  std::vector<Complex> coeff_;
};

InterpolantEvaluator build_interpolant(const InterpolationProblem& problem, double truncation_radius);

NormGrowth norm_growth_report(const InterpolantEvaluator& ev, int N);

}  // namespace bargmann
