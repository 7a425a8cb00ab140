#include "bargmann/interpolation.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <string>

#include <Eigen/Dense>
#include <boost/math/special_functions/gamma.hpp>

#include "quadrature.hpp"

namespace bargmann {

namespace {

constexpr double kDensityTolerance = 1e-12;

void require_radius(double R) {
  if (!(R > 0.0) || !std::isfinite(R)) {
    throw Error(ErrorCode::InvalidArgument, "truncation_radius must be positive and finite");
  }
}

std::string beta_alpha(double beta, double alpha) {
  return "beta=" + std::to_string(beta) + ", alpha=" + std::to_string(alpha);
}

}  // namespace

double lattice_beta(const SquareLattice& lattice) noexcept { return kPi * lattice.density(); }

namespace {

const PointSet& dense_enough(const PointSet& gamma, const SquareLattice& lattice, FockParameter alpha, double R) {
  require_radius(R);
  const double beta = lattice_beta(lattice);
  if (!(beta > alpha.value() * (1.0 + kDensityTolerance))) {
    throw Error(ErrorCode::DensityOrderViolated,
                "reconstruction needs lattice density above alpha/pi (" + beta_alpha(beta, alpha.value()) + ")");
  }
  return gamma;
}

}  // namespace

LagrangeReconstructor::LagrangeReconstructor(const PointSet& gamma, SquareLattice lattice, FockParameter alpha,
                                             NodeData samples, double truncation_radius)
    : g_(dense_enough(gamma, lattice, alpha, truncation_radius), lattice), R_(truncation_radius) {
  const auto& idx = gamma.indices();
  for (std::size_t k = 0; k < gamma.size(); ++k) {
    const Complex zk = gamma.points()[k];
    if (std::abs(zk) > R_) continue;
    const auto it = samples.find(idx[k]);
    if (it == samples.end()) {
      throw Error(ErrorCode::MissingSamples, "no sample for node (" + std::to_string(idx[k].m) + "," +
                                                 std::to_string(idx[k].n) + ") inside the truncation radius");
    }
    const Complex v = it->second;
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(ErrorCode::InvalidArgument, "samples must be finite");
    }
    const LogComplex ratio =
        v == Complex(0.0, 0.0) ? LogComplex::zero() : LogComplex::from_complex(v) / g_.log_derivative_at(idx[k]);
    nodes_.push_back({zk, v, ratio});
  }
}

LogComplex LagrangeReconstructor::value_log(Complex z) const {
  if (!(std::abs(z) < 0.5 * R_)) {
    throw Error(ErrorCode::InvalidArgument, "evaluation point must satisfy |z| < truncation_radius/2");
  }
  for (const auto& t : nodes_) {
    if (t.z == z) return t.sample == Complex(0.0, 0.0) ? LogComplex::zero() : LogComplex::from_complex(t.sample);
  }
  const LogComplex gz = g_.log_value(z);
  std::vector<LogComplex> terms;
  terms.reserve(nodes_.size());
  for (const auto& t : nodes_) {
    if (t.sample_over_derivative.is_zero()) continue;
    terms.push_back(t.sample_over_derivative * gz / LogComplex::from_complex(z - t.z));
  }
  return log_sum(terms);
}

Complex LagrangeReconstructor::operator()(Complex z) const {
  for (const auto& t : nodes_) {
    if (t.z == z && std::abs(z) < 0.5 * R_) return t.sample;
  }
  return value_log(z).to_complex();
}

Complex lagrange_reconstruct(const PointSet& gamma, SquareLattice lattice, FockParameter alpha,
                             const NodeData& samples, Complex z, double truncation_radius) {
  return LagrangeReconstructor(gamma, lattice, alpha, samples, truncation_radius)(z);
}

struct InterpolantEvaluator::Basis {
  FockParameter alpha{1.0};
  double R = 0.0;
  std::vector<LatticeIndex> idx;
  std::vector<Complex> z;
  std::vector<CanonicalProduct> g;
  std::vector<std::pair<LatticeIndex, Complex>> interior;

  mutable std::mutex mu;
  mutable std::map<int, Eigen::MatrixXcd> projections;  // terms x (N+1)

  LogComplex term(std::size_t k, Complex at) const {
    const Complex w = at - z[k];
    const LogComplex q = g[k].log_quotient(w);
    if (q.is_zero()) return q;
    const double a = alpha.value();
    return LogComplex::from_log(q.log() + Complex(-0.5 * a * std::norm(w), a * (std::conj(z[k]) * at).imag()));
  }
};

InterpolantEvaluator::InterpolantEvaluator(std::shared_ptr<const Basis> basis, InterpolationProblem problem)
    : basis_(std::move(basis)), problem_(std::move(problem)) {
  coeff_.assign(basis_->idx.size(), Complex(0.0, 0.0));
  std::map<LatticeIndex, std::size_t> where;
  for (std::size_t k = 0; k < basis_->idx.size(); ++k) where.emplace(basis_->idx[k], k);
  for (const auto& [key, value] : problem_.data) {
    if (!problem_.gamma.find(key)) {
      throw Error(ErrorCode::InvalidArgument, "data node (" + std::to_string(key.m) + "," +
                                                  std::to_string(key.n) + ") is not in gamma");
    }
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
      throw Error(ErrorCode::InvalidArgument, "interpolation data must be finite");
    }
    const auto it = where.find(key);
    if (it != where.end()) coeff_[it->second] = value;
  }
}

InterpolantEvaluator build_interpolant(const InterpolationProblem& problem, double truncation_radius) {
  require_radius(truncation_radius);
  const double beta = lattice_beta(problem.lattice);
  const double alpha = problem.alpha.value();
  if (!(beta < alpha * (1.0 - kDensityTolerance))) {
    throw Error(ErrorCode::DensityOrderViolated,
                "interpolation needs lattice density below alpha/pi (" + beta_alpha(beta, alpha) + ")");
  }
  const CanonicalProduct base(problem.gamma, problem.lattice);
  auto basis = std::make_shared<InterpolantEvaluator::Basis>();
  basis->alpha = problem.alpha;
  basis->R = truncation_radius;
  const auto& idx = problem.gamma.indices();
  for (std::size_t k = 0; k < problem.gamma.size(); ++k) {
    const Complex zk = problem.gamma.points()[k];
    if (std::abs(zk) <= 0.5 * truncation_radius) basis->interior.emplace_back(idx[k], zk);
    if (std::abs(zk) > truncation_radius) continue;
    basis->idx.push_back(idx[k]);
    basis->z.push_back(zk);
    basis->g.push_back(base.translated_to(idx[k]));
  }
  return InterpolantEvaluator(std::move(basis), problem);
}

const InterpolationProblem& InterpolantEvaluator::problem() const noexcept { return problem_; }
double InterpolantEvaluator::truncation_radius() const noexcept { return basis_->R; }
const std::vector<LatticeIndex>& InterpolantEvaluator::term_indices() const noexcept { return basis_->idx; }

LogComplex InterpolantEvaluator::term_log(std::size_t k, Complex z) const { return basis_->term(k, z); }

LogComplex InterpolantEvaluator::value_log(Complex z) const {
  std::vector<LogComplex> terms;
  terms.reserve(coeff_.size());
  for (std::size_t k = 0; k < coeff_.size(); ++k) {
    if (coeff_[k] == Complex(0.0, 0.0)) continue;
    terms.push_back(LogComplex::from_complex(coeff_[k]) * basis_->term(k, z));
  }
  LogComplex out = log_sum(terms);
  if (!out.is_zero()) out.log_mag += 0.5 * problem_.alpha.value() * std::norm(z);
  return out;
}

Complex InterpolantEvaluator::weighted(Complex z) const {
  std::vector<LogComplex> terms;
  terms.reserve(coeff_.size());
  for (std::size_t k = 0; k < coeff_.size(); ++k) {
    if (coeff_[k] == Complex(0.0, 0.0)) continue;
    terms.push_back(LogComplex::from_complex(coeff_[k]) * basis_->term(k, z));
  }
  return log_sum(terms).to_complex();
}

double InterpolantEvaluator::residual_check() const {
  double worst = 0.0;
  for (const auto& [key, zj] : basis_->interior) {
    const auto it = problem_.data.find(key);
    const Complex target = it == problem_.data.end() ? Complex(0.0, 0.0) : it->second;
    worst = std::max(worst, std::abs(weighted(zj) - target));
  }
  return worst;
}

double InterpolantEvaluator::pointwise_constant(double grid_step) const {
  if (!(grid_step > 0.0) || !std::isfinite(grid_step)) {
    throw Error(ErrorCode::InvalidArgument, "grid_step must be positive");
  }
  const double half = 0.5 * basis_->R;
  const auto n = static_cast<long>(std::floor(half / grid_step));
  double C = 0.0;
  std::vector<LogComplex> mags;
  for (long j = -n; j <= n; ++j) {
    for (long i = -n; i <= n; ++i) {
      const Complex z(i * grid_step, j * grid_step);
      if (std::abs(z) > half) continue;
      mags.clear();
      for (std::size_t k = 0; k < basis_->z.size(); ++k) {
        const LogComplex t = basis_->term(k, z);
        mags.push_back({t.log_mag, 0.0});
      }
      C = std::max(C, log_sum(mags).to_complex().real());
    }
  }
  return C;
}

InterpolantEvaluator InterpolantEvaluator::with_data(const NodeData& data) const {
  InterpolationProblem p = problem_;
  p.data = data;
  return InterpolantEvaluator(basis_, std::move(p));
}

NormGrowth InterpolantEvaluator::norm_growth_report(int N) const {
  if (N < 0 || N > 200) throw Error(ErrorCode::InvalidArgument, "degree N must be in [0, 200]");
  NormGrowth out;
  out.degree = N;
  for (const auto& a : coeff_) out.data_l2 += std::norm(a);
  out.data_l2 = std::sqrt(out.data_l2);
  if (out.data_l2 == 0.0) {
    out.ratio = std::numeric_limits<double>::quiet_NaN();
    return out;
  }

  Eigen::MatrixXcd proj;
  {
    std::lock_guard<std::mutex> lock(basis_->mu);
    auto it = basis_->projections.find(N);
    if (it == basis_->projections.end()) {
      // <f, e_n> = (alpha/pi) int W_f conj(W_{e_n}) dA over the disk |z| <= rho,
      // Gauss-Legendre in r, trapezoid in the angle.
      const double a = basis_->alpha.value();
      const double rho = std::sqrt(N / a) + 4.0 / std::sqrt(a);
      const int n_r = N + 32;
      const int n_t = N + 2 * static_cast<int>(std::ceil(a * rho * rho)) + 24;
      const auto& rule = detail::gauss_legendre(n_r);
      const std::size_t terms = basis_->z.size();
      Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(terms), N + 1);
      std::vector<double> mass(N + 1, 0.0);
      std::vector<Complex> en(N + 1);
      std::vector<Complex> bk(terms);
      for (int i = 0; i < n_r; ++i) {
        const double r = 0.5 * rho * (rule.nodes[i] + 1.0);
        const double wr = 0.5 * rho * rule.weights[i] * r * (2.0 * kPi / n_t) * a / kPi;
        for (int t = 0; t < n_t; ++t) {
          const Complex z = std::polar(r, 2.0 * kPi * t / n_t);
          for (int n = 0; n <= N; ++n) {
            LogComplex e = basis_log(a, n, z);
            if (!e.is_zero()) e.log_mag -= 0.5 * a * r * r;
            en[n] = e.is_zero() ? Complex(0.0, 0.0) : std::polar(std::exp(e.log_mag), e.phase);
            mass[n] += wr * std::norm(en[n]);
          }
          for (std::size_t k = 0; k < terms; ++k) bk[k] = basis_->term(k, z).to_complex();
          for (std::size_t k = 0; k < terms; ++k) {
            for (int n = 0; n <= N; ++n) P(static_cast<Eigen::Index>(k), n) += wr * bk[k] * std::conj(en[n]);
          }
        }
      }
      // mass of e_n on the disk is P(n+1, alpha rho^2)
      for (int n = 0; n <= N; ++n) {
        const double gap = std::abs(mass[n] - boost::math::gamma_p(n + 1.0, a * rho * rho));
        if (gap > 1e-8) {
          char msg[96];
          std::snprintf(msg, sizeof msg, "projection quadrature misses the disk mass of e_%d by %.3g", n, gap);
          throw Error(ErrorCode::QuadratureOrderTooLow, msg);
        }
      }
      it = basis_->projections.emplace(N, std::move(P)).first;
    }
    proj = it->second;
  }
  Eigen::VectorXcd a(static_cast<Eigen::Index>(coeff_.size()));
  for (std::size_t k = 0; k < coeff_.size(); ++k) a(static_cast<Eigen::Index>(k)) = coeff_[k];
  const Eigen::VectorXcd c = proj.transpose() * a;
  out.norm2 = c.norm();
  out.ratio = out.norm2 / out.data_l2;
  out.applicable = true;
  return out;
}

NormGrowth norm_growth_report(const InterpolantEvaluator& ev, int N) { return ev.norm_growth_report(N); }

}  // namespace bargmann
