#include "bargmann/types.hpp"

#include <algorithm>
#include <cmath>

namespace bargmann {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::RadiusTooSmall: return "RadiusTooSmall";
    case ErrorCode::UnsupportedRepresentation: return "UnsupportedRepresentation";
    case ErrorCode::AlphaMismatch: return "AlphaMismatch";
    case ErrorCode::EmptyWindow: return "EmptyWindow";
    case ErrorCode::DuplicatePoints: return "DuplicatePoints";
    case ErrorCode::CollisionAfterPerturbation: return "CollisionAfterPerturbation";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::NotUniformlyClose: return "NotUniformlyClose";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::InconsistentProbes: return "InconsistentProbes";
    case ErrorCode::NodeIndexMissing: return "NodeIndexMissing";
    case ErrorCode::QuadratureOrderTooLow: return "QuadratureOrderTooLow";
    case ErrorCode::PointNotInSet: return "PointNotInSet";
    case ErrorCode::DensityOrderViolated: return "DensityOrderViolated";
    case ErrorCode::MissingSamples: return "MissingSamples";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

double reduce_phase(double phase) noexcept {
  if (!std::isfinite(phase)) return 0.0;
  double r = std::remainder(phase, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  if (r > kPi) r -= 2.0 * kPi;
  return r;
}

LogComplex LogComplex::from_complex(Complex w) noexcept {
  if (w == Complex(0.0, 0.0)) return zero();
  return {std::log(std::abs(w)), reduce_phase(std::arg(w))};
}

LogComplex LogComplex::from_log(Complex log_value) noexcept {
  if (log_value.real() == -std::numeric_limits<double>::infinity()) return zero();
  return {log_value.real(), reduce_phase(log_value.imag())};
}

Complex LogComplex::to_complex() const {
  if (is_zero()) return {0.0, 0.0};
  if (log_mag >= kMaxLogMagnitude) {
    throw Error(ErrorCode::Overflow,
                "value e^" + std::to_string(log_mag) + " is out of the linear range; use the log form");
  }
  return std::polar(std::exp(log_mag), phase);
}

LogComplex LogComplex::operator*(const LogComplex& o) const noexcept {
  if (is_zero() || o.is_zero()) return zero();
  return {log_mag + o.log_mag, reduce_phase(phase + o.phase)};
}

LogComplex LogComplex::operator/(const LogComplex& o) const noexcept {
  if (is_zero()) return zero();
  return {log_mag - o.log_mag, reduce_phase(phase - o.phase)};
}

LogComplex log_sum(std::span<const LogComplex> terms) {
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms) top = std::max(top, t.log_mag);
  if (top == -std::numeric_limits<double>::infinity()) return LogComplex::zero();
  Complex acc{0.0, 0.0};
  for (const auto& t : terms) {
    if (t.is_zero()) continue;
    acc += std::polar(std::exp(t.log_mag - top), t.phase);
  }
  if (acc == Complex(0.0, 0.0)) return LogComplex::zero();
  return {top + std::log(std::abs(acc)), reduce_phase(std::arg(acc))};
}

Complex checked_exp(Complex w) {
  if (w.real() >= kMaxLogMagnitude) {
    throw Error(ErrorCode::Overflow,
                "exponent " + std::to_string(w.real()) + " exceeds the linear range; use the log form");
  }
  return std::exp(w);
}

Complex log1p(Complex u) noexcept {
  const double x = u.real();
  const double y = u.imag();
  if (std::abs(u) > 0.5) return std::log(Complex(1.0 + x, y));
  // |1+u|^2 - 1 = 2x + x^2 + y^2
  const double re = 0.5 * std::log1p(2.0 * x + x * x + y * y);
  const double im = std::atan2(y, 1.0 + x);
  return {re, im};
}

void GridSpec::validate() const {
  for (const double v : {xmin, xmax, ymin, ymax, step}) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "grid bounds must be finite");
  }
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "grid step must be positive");
  if (xmax < xmin || ymax < ymin) throw Error(ErrorCode::InvalidArgument, "grid bounds are reversed");
  if ((xmax - xmin) / step > 1e5 || (ymax - ymin) / step > 1e5) {
    throw Error(ErrorCode::InvalidArgument, "grid has too many points");
  }
}

std::vector<Complex> GridSpec::points() const {
  validate();
  const auto nx = static_cast<long>(std::floor((xmax - xmin) / step + 1e-9)) + 1;
  const auto ny = static_cast<long>(std::floor((ymax - ymin) / step + 1e-9)) + 1;
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(nx * ny));
  for (long j = 0; j < ny; ++j) {
    for (long i = 0; i < nx; ++i) out.emplace_back(xmin + i * step, ymin + j * step);
  }
  return out;
}

}  // namespace bargmann
