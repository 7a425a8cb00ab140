#include "bargmann/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "quadrature.hpp"

namespace bargmann {

namespace {

constexpr int kCellOrder = 24;

void require_degree(int N) {
  if (N < 0 || N > 400) throw Error(ErrorCode::InvalidArgument, "degree N must be in [0, 400]");
}

double effective_radius(double alpha, int N) { return std::sqrt(N / alpha) + 4.0 / std::sqrt(alpha); }

// Cell integral of the weighted |h|^2 over center + [-half, half]^2 against d mu.
double cell_integral(const FockFunction& h, Complex center, double half, int order) {
  const auto& rule = detail::gauss_legendre(order);
  double acc = 0.0;
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    double row = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const Complex z = center + Complex(half * rule.nodes[i], half * rule.nodes[j]);
      const LogComplex w = h.weighted_log(z);
      if (w.is_zero()) continue;
      row += rule.weights[i] * std::exp(2.0 * w.log_mag);
    }
    acc += rule.weights[j] * row;
  }
  return h.alpha() / kPi * half * half * acc;
}

}  // namespace

Eigen::MatrixXcd frame_matrix(const PointSet& gamma, FockParameter alpha, int N) {
  require_degree(N);
  const int dim = N + 1;
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(dim, dim);
  std::vector<LogComplex> v(dim);
  std::vector<Complex> lin(dim);
  for (const auto& z : gamma.points()) {
    const double weight = -0.5 * alpha.value() * std::norm(z);
    for (int j = 0; j < dim; ++j) {
      v[j] = basis_log(alpha.value(), j, z);
      if (!v[j].is_zero()) v[j].log_mag += weight;
      lin[j] = v[j].is_zero() ? Complex(0.0, 0.0) : std::polar(std::exp(v[j].log_mag), v[j].phase);
    }
    for (int k = 0; k < dim; ++k) {
      for (int j = 0; j <= k; ++j) S(j, k) += std::conj(lin[j]) * lin[k];
    }
  }
  for (int k = 0; k < dim; ++k) {
    S(k, k) = Complex(S(k, k).real(), 0.0);
    for (int j = 0; j < k; ++j) S(k, j) = std::conj(S(j, k));
  }
  return S;
}

FrameRow extremal_eigenvalues(const Eigen::MatrixXcd& S, int N) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(S, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::InvalidArgument, "eigenvalue iteration did not converge");
  }
  const auto& ev = es.eigenvalues();
  return {N, std::max(ev(0), 0.0), std::max(ev(ev.size() - 1), 0.0)};
}

FrameEstimate frame_bounds(const PointSet& gamma, FockParameter alpha, int N, double window_radius) {
  require_degree(N);
  if (!(window_radius > 0.0) || !std::isfinite(window_radius)) {
    throw Error(ErrorCode::InvalidArgument, "window_radius must be positive");
  }
  for (const auto& z : gamma.points()) {
    if (std::abs(z) > window_radius * (1.0 + 1e-12)) {
      throw Error(ErrorCode::InvalidArgument, "window does not contain all of gamma");
    }
  }
  FrameEstimate est;
  est.degree = N;
  est.window_radius = window_radius;
  est.effective_radius = effective_radius(alpha.value(), N);
  est.reliable = est.effective_radius <= window_radius;

  std::vector<int> ladder = {N / 2, (3 * N) / 4, N};
  ladder.erase(std::unique(ladder.begin(), ladder.end()), ladder.end());
  const Eigen::MatrixXcd S = frame_matrix(gamma, alpha, N);
  for (const int n : ladder) {
    // The leading block of S is the frame matrix for degree n.
    est.convergence_table.push_back(extremal_eigenvalues(S.topLeftCorner(n + 1, n + 1), n));
  }
  est.A = est.convergence_table.back().A;
  est.B = est.convergence_table.back().B;
  return est;
}

double norm_decomposition_check(const FockFunction& f, int K) {
  if (f.is_monomial()) {
    throw Error(ErrorCode::UnsupportedRepresentation, "norm decomposition needs a kernel combination");
  }
  if (K < 0 || K > 200) throw Error(ErrorCode::InvalidArgument, "cell range K must be in [0, 200]");
  const double h = 1.0 / std::sqrt(f.alpha());
  for (const auto& node : f.nodes()) {
    if (std::abs(node) > 0.5 * (K + 0.5) * h) {
      throw Error(ErrorCode::InvalidArgument, "kernel nodes must lie within half the covered radius");
    }
  }
  const double total = norm2(f);
  if (total == 0.0) return 0.0;
  double sum = 0.0;
  for (int l = -K; l <= K; ++l) {
    for (int k = -K; k <= K; ++k) {
      // |T_a f|^2 e^{-alpha|z|^2} on R equals |f|^2 e^{-alpha|z|^2} on R - a.
      const Complex lam(h * k, h * l);
      const FockFunction moved = translate(f, lam);
      const double coarse = cell_integral(moved, 0.0, 0.5 * h, kCellOrder);
      const double fine = cell_integral(moved, 0.0, 0.5 * h, 2 * kCellOrder);
      if (std::abs(coarse - fine) > 1e-10 * std::abs(fine) + 1e-300) {
        throw Error(ErrorCode::QuadratureOrderTooLow,
                    "cell (" + std::to_string(k) + "," + std::to_string(l) + ") changes by " +
                        std::to_string(std::abs(coarse - fine) / std::abs(fine)) + " when the order doubles");
      }
      sum += coarse;
    }
  }
  return (total * total - sum) / (total * total);
}

RemovalResult point_removal_experiment(const PointSet& gamma, FockParameter alpha, int N, Complex removed) {
  const auto pos = gamma.find_point(removed);
  if (!pos) throw Error(ErrorCode::PointNotInSet, "removed point is not a member of gamma");
  std::vector<Complex> rest;
  rest.reserve(gamma.size() - 1);
  for (std::size_t k = 0; k < gamma.size(); ++k) {
    if (k != *pos) rest.push_back(gamma.points()[k]);
  }
  const double window = std::max(gamma.window_radius(), 1e-300);
  RemovalResult out;
  out.before = frame_bounds(gamma, alpha, N, window);
  out.after = frame_bounds(PointSet(std::move(rest), window), alpha, N, window);
  return out;
}

}  // namespace bargmann
