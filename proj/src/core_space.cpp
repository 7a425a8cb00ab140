#include "bargmann/core_space.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bargmann {

namespace {

void require_finite(const std::vector<Complex>& v, const char* what) {
  for (const auto& w : v) {
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
      throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be finite");
    }
  }
}

void require_same_alpha(const FockFunction& f, const FockFunction& g) {
  const double a = f.alpha();
  const double b = g.alpha();
  if (std::abs(a - b) > 1e-15 * std::max(a, b)) {
    throw Error(ErrorCode::AlphaMismatch, "inner product of functions with alpha " +
                                              std::to_string(a) + " and " + std::to_string(b));
  }
}

// K(zeta, z) = e^{alpha conj(zeta) z} as a complex logarithm.
Complex kernel_exponent(double alpha, Complex zeta, Complex z) {
  return alpha * std::conj(zeta) * z;
}

}  // namespace

FockParameter::FockParameter(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::InvalidArgument, "alpha must be a positive finite number, got " +
                                                std::to_string(alpha));
  }
}

double log_basis_scale(double alpha, int n) noexcept {
  return 0.5 * (n * std::log(alpha) - std::lgamma(n + 1.0));
}

LogComplex basis_log(double alpha, int n, Complex z) noexcept {
  if (n == 0) return LogComplex::one();
  if (z == Complex(0.0, 0.0)) return LogComplex::zero();
  return {log_basis_scale(alpha, n) + n * std::log(std::abs(z)), reduce_phase(n * std::arg(z))};
}

FockFunction FockFunction::monomial(FockParameter alpha, std::vector<Complex> coeffs) {
  require_finite(coeffs, "monomial coefficients");
  FockFunction f(alpha, Representation::Monomial);
  f.coeffs_ = std::move(coeffs);
  return f;
}

FockFunction FockFunction::kernel_combination(FockParameter alpha, std::vector<Complex> nodes,
                                              std::vector<Complex> weights) {
  if (nodes.size() != weights.size()) {
    throw Error(ErrorCode::InvalidArgument, "kernel combination needs one weight per node");
  }
  require_finite(nodes, "kernel nodes");
  require_finite(weights, "kernel weights");
  std::vector<Complex> sorted = nodes;
  std::sort(sorted.begin(), sorted.end(), [](Complex a, Complex b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::DuplicatePoints, "kernel nodes must be pairwise distinct");
  }
  FockFunction f(alpha, Representation::Kernel);
  f.nodes_ = std::move(nodes);
  f.weights_ = std::move(weights);
  return f;
}

int FockFunction::degree() const noexcept {
  for (int n = static_cast<int>(coeffs_.size()) - 1; n > 0; --n) {
    if (coeffs_[n] != Complex(0.0, 0.0)) return n;
  }
  return 0;
}

double FockFunction::concentration_radius() const noexcept {
  const double a = alpha();
  if (is_monomial()) return std::sqrt(degree() / a) + 4.0 / std::sqrt(a);
  double r = 0.0;
  for (const auto& z : nodes_) r = std::max(r, std::abs(z));
  return r + 4.0 / std::sqrt(a);
}

LogComplex FockFunction::value_log(Complex z) const {
  std::vector<LogComplex> terms;
  if (is_monomial()) {
    terms.reserve(coeffs_.size());
    for (int n = 0; n < static_cast<int>(coeffs_.size()); ++n) {
      terms.push_back(LogComplex::from_complex(coeffs_[n]) * basis_log(alpha(), n, z));
    }
  } else {
    terms.reserve(nodes_.size());
    for (std::size_t j = 0; j < nodes_.size(); ++j) {
      terms.push_back(LogComplex::from_complex(weights_[j]) *
                      LogComplex::from_log(kernel_exponent(alpha(), nodes_[j], z)));
    }
  }
  return log_sum(terms);
}

LogComplex FockFunction::weighted_log(Complex z) const {
  const double weight = -0.5 * alpha() * std::norm(z);
  std::vector<LogComplex> terms;
  if (is_monomial()) {
    terms.reserve(coeffs_.size());
    for (int n = 0; n < static_cast<int>(coeffs_.size()); ++n) {
      LogComplex t = LogComplex::from_complex(coeffs_[n]) * basis_log(alpha(), n, z);
      if (!t.is_zero()) t.log_mag += weight;
      terms.push_back(t);
    }
  } else {
    terms.reserve(nodes_.size());
    for (std::size_t j = 0; j < nodes_.size(); ++j) {
      const Complex e = kernel_exponent(alpha(), nodes_[j], z) + weight;
      terms.push_back(LogComplex::from_complex(weights_[j]) * LogComplex::from_log(e));
    }
  }
  return log_sum(terms);
}

Complex kernel(FockParameter alpha, Complex z, Complex zeta) {
  return checked_exp(alpha.value() * std::conj(z) * zeta);
}

LogComplex kernel_log(FockParameter alpha, Complex z, Complex zeta) noexcept {
  return LogComplex::from_log(alpha.value() * std::conj(z) * zeta);
}

Complex eval_weighted(const FockFunction& f, Complex z) {
  return f.weighted_log(z).to_complex();
}

double norm2(const FockFunction& f) {
  if (f.is_monomial()) {
    double scale = 0.0;
    for (const auto& c : f.coefficients()) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) return 0.0;
    double acc = 0.0;
    for (const auto& c : f.coefficients()) acc += std::norm(c / scale);
    return scale * std::sqrt(acc);
  }

  // sum_jk w_j conj(w_k) e^{alpha conj(zeta_j) zeta_k}, with each entry
  // rescaled by e^{-alpha(|zeta_j|^2+|zeta_k|^2)/2} and the weights by the
  // largest e^{alpha|zeta_j|^2/2}|w_j|.
  const double a = f.alpha();
  const auto& nodes = f.nodes();
  const auto& weights = f.weights();
  const std::size_t n = nodes.size();
  std::vector<double> lw(n);
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    lw[j] = weights[j] == Complex(0.0, 0.0)
                ? -std::numeric_limits<double>::infinity()
                : std::log(std::abs(weights[j])) + 0.5 * a * std::norm(nodes[j]);
    top = std::max(top, lw[j]);
  }
  if (top == -std::numeric_limits<double>::infinity()) return 0.0;
  std::vector<Complex> u(n);
  for (std::size_t j = 0; j < n; ++j) {
    u[j] = std::polar(std::exp(lw[j] - top), std::arg(weights[j]));
  }
  double q = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex g = std::exp(a * std::conj(nodes[j]) * nodes[k] -
                                 0.5 * a * (std::norm(nodes[j]) + std::norm(nodes[k])));
      q += (u[j] * std::conj(u[k]) * g).real();
    }
  }
  q = std::max(q, 0.0);
  const double log_norm = top + 0.5 * std::log(q);
  if (log_norm >= kMaxLogMagnitude) {
    throw Error(ErrorCode::Overflow, "norm e^" + std::to_string(log_norm) + " is out of range");
  }
  return std::exp(log_norm);
}

double norm_inf(const FockFunction& f, double search_radius, double grid_step) {
  if (!(grid_step > 0.0) || !std::isfinite(grid_step)) {
    throw Error(ErrorCode::InvalidArgument, "grid_step must be positive");
  }
  const double needed = f.concentration_radius();
  if (!(search_radius >= needed)) {
    throw Error(ErrorCode::RadiusTooSmall,
                "search_radius " + std::to_string(search_radius) +
                    " is below the concentration radius " + std::to_string(needed));
  }
  const auto k = static_cast<long>(std::floor(search_radius / grid_step));
  double best = -std::numeric_limits<double>::infinity();
  Complex arg_best{0.0, 0.0};
  for (long j = -k; j <= k; ++j) {
    for (long i = -k; i <= k; ++i) {
      const Complex z(i * grid_step, j * grid_step);
      if (std::abs(z) > search_radius) continue;
      const double v = f.weighted_log(z).log_mag;
      if (v > best) {
        best = v;
        arg_best = z;
      }
    }
  }
  const double fine = grid_step / 3.0;
  for (int j = -3; j <= 3; ++j) {
    for (int i = -3; i <= 3; ++i) {
      const Complex z = arg_best + Complex(i * fine, j * fine);
      if (std::abs(z) > search_radius) continue;
      best = std::max(best, f.weighted_log(z).log_mag);
    }
  }
  if (best >= kMaxLogMagnitude) {
    throw Error(ErrorCode::Overflow, "weighted sup norm out of range");
  }
  return best == -std::numeric_limits<double>::infinity() ? 0.0 : std::exp(best);
}

FockFunction translate(const FockFunction& f, Complex a) {
  if (f.is_monomial()) {
    throw Error(ErrorCode::UnsupportedRepresentation,
                "translation is only closed-form for kernel combinations");
  }
  const double alpha = f.alpha();
  std::vector<Complex> nodes;
  std::vector<Complex> weights;
  nodes.reserve(f.nodes().size());
  weights.reserve(f.nodes().size());
  for (std::size_t j = 0; j < f.nodes().size(); ++j) {
    const Complex zeta = f.nodes()[j];
    const Complex w = f.weights()[j];
    nodes.push_back(zeta + a);
    if (w == Complex(0.0, 0.0)) {
      weights.push_back(w);
      continue;
    }
    const Complex e = -0.5 * alpha * std::norm(a) - alpha * std::conj(zeta) * a;
    weights.push_back((LogComplex::from_complex(w) * LogComplex::from_log(e)).to_complex());
  }
  return FockFunction::kernel_combination(f.parameter(), std::move(nodes), std::move(weights));
}

Complex inner(const FockFunction& f, const FockFunction& g) {
  require_same_alpha(f, g);
  const double alpha = f.alpha();

  if (f.is_monomial() && g.is_monomial()) {
    const std::size_t n = std::min(f.coefficients().size(), g.coefficients().size());
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) acc += f.coefficients()[i] * std::conj(g.coefficients()[i]);
    return acc;
  }

  if (!f.is_monomial() && !g.is_monomial()) {
    // <K(zeta, .), K(eta, .)> = K(zeta, eta)
    std::vector<LogComplex> terms;
    terms.reserve(f.nodes().size() * g.nodes().size());
    for (std::size_t j = 0; j < f.nodes().size(); ++j) {
      const LogComplex wj = LogComplex::from_complex(f.weights()[j]);
      for (std::size_t k = 0; k < g.nodes().size(); ++k) {
        const LogComplex vk = LogComplex::from_complex(g.weights()[k]).conj();
        terms.push_back(wj * vk * LogComplex::from_log(alpha * std::conj(f.nodes()[j]) * g.nodes()[k]));
      }
    }
    return log_sum(terms).to_complex();
  }

  if (f.is_monomial()) {
    // <p, sum_k v_k K(eta_k, .)> = sum_k conj(v_k) p(eta_k)
    std::vector<LogComplex> terms;
    terms.reserve(g.nodes().size());
    for (std::size_t k = 0; k < g.nodes().size(); ++k) {
      terms.push_back(LogComplex::from_complex(g.weights()[k]).conj() * f.value_log(g.nodes()[k]));
    }
    return log_sum(terms).to_complex();
  }
  return std::conj(inner(g, f));
}

}  // namespace bargmann
