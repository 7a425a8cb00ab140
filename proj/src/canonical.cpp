#include "bargmann/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spatial_index.hpp"

namespace bargmann {

namespace {

constexpr double kOmittedTolerance = 1e-12;

// log((zk - z)/(lk - z)) = log(1 + delta/(lk - z)), without cancellation near either end.
Complex log_ratio(Complex zk, Complex lk, Complex delta, Complex z) {
  const Complex u = delta / (lk - z);
  if (std::abs(u) < 0.5) return log1p(u);
  const Complex num = zk - z;
  if (num == Complex(0.0, 0.0)) return {-std::numeric_limits<double>::infinity(), 0.0};
  return std::log(num / (lk - z));
}

std::int64_t chebyshev(LatticeIndex idx) { return std::max(std::abs(idx.m), std::abs(idx.n)); }

bool is_neg_inf(Complex w) { return w.real() == -std::numeric_limits<double>::infinity(); }

}  // namespace

CanonicalProduct::CanonicalProduct(const PointSet& gamma, SquareLattice lattice,
                                   std::optional<int> truncation, int sigma_truncation)
    : sigma_(lattice, sigma_truncation),
      idx_(gamma.indices()),
      z_(gamma.points()),
      window_(gamma.window_radius()) {
  q_ = gamma.size() >= 2 ? separation(gamma) : std::numeric_limits<double>::infinity();
  build(truncation);
}

CanonicalProduct::CanonicalProduct(WeierstrassSigma sigma, std::vector<LatticeIndex> idx,
                                   std::vector<Complex> z, double window, std::optional<int> truncation)
    : sigma_(std::move(sigma)), idx_(std::move(idx)), z_(std::move(z)), window_(window) {
  build(truncation);
}

void CanonicalProduct::build(std::optional<int> truncation) {
  const SquareLattice& lat = sigma_.lattice();
  std::optional<std::size_t> origin;
  std::int64_t widest = 0;
  for (std::size_t k = 0; k < z_.size(); ++k) {
    if (idx_[k] == LatticeIndex{0, 0}) origin = k;
    widest = std::max(widest, chebyshev(idx_[k]));
    Q_ = std::max(Q_, std::abs(z_[k] - lat.point(idx_[k])));
  }
  if (!origin) throw Error(ErrorCode::NodeIndexMissing, "gamma has no point with lattice index (0,0)");
  if (!(Q_ < 0.5 * lat.spacing())) {
    throw Error(ErrorCode::NotUniformlyClose, "closeness Q=" + std::to_string(Q_) +
                                                  " is not below half the spacing " +
                                                  std::to_string(0.5 * lat.spacing()));
  }
  z00_ = z_[*origin];
  if (truncation && *truncation < 1) throw Error(ErrorCode::InvalidArgument, "truncation index must be >= 1");
  M_ = truncation ? *truncation : static_cast<int>(std::max<std::int64_t>(widest, 1));

  kept_.clear();
  dropped_.clear();
  where_.clear();
  c0_ = c1_ = Complex(0.0, 0.0);
  for (std::size_t k = 0; k < z_.size(); ++k) {
    if (chebyshev(idx_[k]) > M_) {
      dropped_.push_back(k);
      continue;
    }
    Retained r{idx_[k], z_[k], lat.point(idx_[k]), {}, {0.0, 0.0}, {0.0, 0.0}};
    r.delta = r.z - r.lambda;
    if (k != *origin) {
      r.lin = log1p(r.delta / r.lambda);
      r.inv = 1.0 / r.z - 1.0 / r.lambda;
      c0_ -= r.lin;
      c1_ += r.inv;
    }
    where_.emplace(r.idx, kept_.size());
    kept_.push_back(r);
  }
}

std::optional<std::size_t> CanonicalProduct::find(LatticeIndex idx) const {
  const auto it = where_.find(idx);
  if (it == where_.end()) return std::nullopt;
  return it->second;
}

Complex CanonicalProduct::sum_L(Complex z, std::optional<std::size_t> skip) const {
  Complex acc{0.0, 0.0};
  for (std::size_t k = 0; k < kept_.size(); ++k) {
    if (skip && *skip == k) continue;
    const auto& r = kept_[k];
    if (r.delta == Complex(0.0, 0.0)) continue;
    acc += log_ratio(r.z, r.lambda, r.delta, z);
  }
  return acc;
}

GValue CanonicalProduct::evaluate(Complex z) const {
  GValue out;
  const LatticeIndex j = lattice().nearest_index(z);
  const auto pos = find(j);
  Complex total;
  if (pos) {
    const auto& r = kept_[*pos];
    if (z == r.z) {
      out.value = LogComplex::zero();
    } else {
      total = sigma_.log_deflated(z, j).log() + std::log(r.z - z) + sum_L(z, pos) + correction(z);
      out.value = LogComplex::from_log(total);
    }
  } else {
    const LogComplex s = sigma_.log_value(z);
    out.value = s.is_zero() ? s : LogComplex::from_log(s.log() + sum_L(z, std::nullopt) + correction(z));
  }

  const SquareLattice& lat = lattice();
  for (const std::size_t d : dropped_) {
    const Complex lk = lat.point(idx_[d]);
    const Complex delta = z_[d] - lk;
    if (delta == Complex(0.0, 0.0)) continue;
    const Complex term = log_ratio(z_[d], lk, delta, z) - log1p(delta / lk) + (1.0 / z_[d] - 1.0 / lk) * z;
    out.omitted = std::max(out.omitted, is_neg_inf(term) ? std::numeric_limits<double>::infinity() : std::abs(term));
  }
  Complex shell{0.0, 0.0};
  for (const auto& r : kept_) {
    if (chebyshev(r.idx) != M_ || r.delta == Complex(0.0, 0.0)) continue;
    shell += log_ratio(r.z, r.lambda, r.delta, z) - r.lin + r.inv * z;
  }
  out.last_shell = is_neg_inf(shell) ? std::numeric_limits<double>::infinity() : std::abs(shell);
  return out;
}

LogComplex CanonicalProduct::log_value(Complex z) const {
  const GValue v = evaluate(z);
  if (v.omitted > kOmittedTolerance) {
    throw Error(ErrorCode::TruncationTooSmall,
                "truncation M=" + std::to_string(M_) + " leaves out points of gamma contributing " +
                    std::to_string(v.omitted) + " at z");
  }
  return v.value;
}

LogComplex CanonicalProduct::log_quotient(Complex z) const {
  const LatticeIndex origin{0, 0};
  if (z == z00_) return log_derivative_at(origin);
  if (lattice().nearest_index(z) == origin) {
    const auto pos = find(origin);
    return LogComplex::from_log(sigma_.log_deflated(z, origin).log() + Complex(0.0, kPi) + sum_L(z, pos) +
                                correction(z));
  }
  return log_value(z) / LogComplex::from_complex(z - z00_);
}

LogComplex CanonicalProduct::log_derivative_at(LatticeIndex idx) const {
  const auto pos = find(idx);
  if (!pos) {
    throw Error(ErrorCode::NodeIndexMissing, "no retained zero with index (" + std::to_string(idx.m) + "," +
                                                 std::to_string(idx.n) + ")");
  }
  const Complex zk = kept_[*pos].z;
  return LogComplex::from_log(sigma_.log_deflated(zk, idx).log() + sum_L(zk, pos) + correction(zk) +
                              Complex(0.0, kPi));
}

NodeDerivative CanonicalProduct::derivative_at_node(LatticeIndex idx) const {
  NodeDerivative out;
  out.value = log_derivative_at(idx);
  const Complex zk = kept_[*find(idx)].z;
  // phi(z) = g(z) e^{-a conj(zk) z} has phi'(zk) = g'(zk) e^{-a|zk|^2}; the
  // exponential keeps phi of moderate size around zk.
  const double s = lattice().spacing();
  const double a = kPi / (s * s);
  const Complex ref = out.value.log() - a * std::norm(zk);
  const auto phi = [&](Complex z) {
    const LogComplex g = evaluate(z).value;
    if (g.is_zero()) return Complex(0.0, 0.0);
    return std::exp(g.log() - a * std::conj(zk) * z - ref);
  };
  const auto central = [&](double h) { return (phi(zk + h) - phi(zk - h)) / (2.0 * h); };
  const double h = 0.01 * s;
  const Complex d1 = central(h);
  const Complex d2 = central(0.5 * h);
  const Complex d3 = central(0.25 * h);
  const Complex r1 = (4.0 * d2 - d1) / 3.0;
  const Complex r2 = (4.0 * d3 - d2) / 3.0;
  const Complex fd = (16.0 * r2 - r1) / 15.0;
  out.fd_discrepancy = std::abs(fd - 1.0);
  return out;
}

CanonicalProduct CanonicalProduct::translated_to(LatticeIndex idx) const {
  const auto pos = find(idx);
  if (!pos) {
    throw Error(ErrorCode::NodeIndexMissing, "no retained zero with index (" + std::to_string(idx.m) + "," +
                                                 std::to_string(idx.n) + ")");
  }
  const Complex shift = kept_[*pos].z;
  std::vector<LatticeIndex> idx2;
  std::vector<Complex> z2;
  idx2.reserve(kept_.size());
  z2.reserve(kept_.size());
  for (const auto& r : kept_) {
    idx2.push_back({r.idx.m - idx.m, r.idx.n - idx.n});
    z2.push_back(r.z - shift);
  }
  CanonicalProduct out(sigma_, std::move(idx2), std::move(z2), window_ + std::abs(shift), std::nullopt);
  out.q_ = q_;
  return out;
}

double CanonicalProduct::distance_to_zeros(Complex z) const {
  const std::vector<Complex> zs = zero_set();
  const detail::GridIndex grid(zs, detail::natural_cell(zs));
  return grid.nearest_distance(z);
}

std::vector<Complex> CanonicalProduct::zero_set() const {
  std::vector<Complex> out;
  out.reserve(z_.size());
  for (const auto& r : kept_) out.push_back(r.z);
  for (const std::size_t d : dropped_) out.push_back(lattice().point(idx_[d]));
  return out;
}

GrowthBoundFit growth_check(const CanonicalProduct& cp, FockParameter alpha, double grid_radius,
                            double grid_step) {
  if (!(grid_radius > 0.0) || !(grid_step > 0.0) || !std::isfinite(grid_radius) || !std::isfinite(grid_step)) {
    throw Error(ErrorCode::InvalidArgument, "grid_radius and grid_step must be positive");
  }
  if (grid_radius > 0.6 * cp.window_radius() * (1.0 + 1e-12)) {
    throw Error(ErrorCode::InvalidArgument, "grid_radius exceeds 0.6 x the window radius " +
                                                std::to_string(cp.window_radius()));
  }
  const double a = alpha.value();
  const std::vector<Complex> zs = cp.zero_set();
  const detail::GridIndex grid(zs, detail::natural_cell(zs));

  struct Sample {
    double r;
    double v;     // log of the weighted modulus
    double dist;
  };
  std::vector<Sample> samples;
  const auto k = static_cast<long>(std::floor(grid_radius / grid_step));
  for (long j = -k; j <= k; ++j) {
    for (long i = -k; i <= k; ++i) {
      const Complex z(i * grid_step, j * grid_step);
      const double r = std::abs(z);
      if (r > grid_radius) continue;
      const double v = cp.evaluate(z).value.log_mag - 0.5 * a * r * r;
      samples.push_back({r, v, grid.nearest_distance(z)});
    }
  }

  GrowthBoundFit fit;
  fit.grid_radius = grid_radius;
  fit.grid_points = samples.size();
  const double core = std::max(1.0, cp.lattice().spacing());
  double log_c2 = -std::numeric_limits<double>::infinity();
  double log_c1 = std::numeric_limits<double>::infinity();
  for (const auto& p : samples) {
    if (std::isnan(p.v) || p.v == std::numeric_limits<double>::infinity() ||
        (p.dist > 0.0 && !std::isfinite(p.v))) {
      ++fit.violations;
      continue;
    }
    if (p.r > core) continue;
    log_c2 = std::max(log_c2, p.v);
    if (p.dist > 0.0) log_c1 = std::min(log_c1, p.v - std::log(p.dist));
  }
  if (!std::isfinite(log_c1) || !std::isfinite(log_c2)) {
    ++fit.violations;
    return fit;
  }
  fit.C1 = std::exp(log_c1);
  fit.C2 = std::exp(log_c2);
  for (const auto& p : samples) {
    if (p.r <= 1.0 || !std::isfinite(p.v)) continue;
    const double phi = p.r * std::log(p.r);
    fit.c = std::max(fit.c, (p.v - log_c2) / phi);
    if (p.dist > 0.0) fit.c = std::max(fit.c, (log_c1 + std::log(p.dist) - p.v) / phi);
  }
  return fit;
}

}  // namespace bargmann
