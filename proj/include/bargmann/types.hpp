#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bargmann {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// exp() of anything at or above this is routed through LogComplex.
inline constexpr double kMaxLogMagnitude = 700.0;

enum class ErrorCode {
  InvalidArgument,
  Overflow,
  RadiusTooSmall,
  UnsupportedRepresentation,
  AlphaMismatch,
  EmptyWindow,
  DuplicatePoints,
  CollisionAfterPerturbation,
  TooFewPoints,
  NotUniformlyClose,
  WindowTooSmall,
  TruncationTooSmall,
  InconsistentProbes,
  NodeIndexMissing,
  QuadratureOrderTooLow,
  PointNotInSet,
  DensityOrderViolated,
  MissingSamples,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Reduce an angle to (-pi, pi].
double reduce_phase(double phase) noexcept;

/// A complex number stored as (log|w|, arg w). log_mag = -inf encodes 0.
struct LogComplex {
  double log_mag = -std::numeric_limits<double>::infinity();
  double phase = 0.0;

  static LogComplex zero() noexcept { return {}; }
  static LogComplex one() noexcept { return {0.0, 0.0}; }
  static LogComplex from_complex(Complex w) noexcept;
  /// From a (possibly unreduced) complex logarithm.
  static LogComplex from_log(Complex log_value) noexcept;

  bool is_zero() const noexcept { return log_mag == -std::numeric_limits<double>::infinity(); }

  /// Linear-scale value. Throws Error(Overflow) if |w| would exceed e^700.
  Complex to_complex() const;
  /// The complex logarithm with imaginary part = phase. Undefined for zero.
  Complex log() const noexcept { return {log_mag, phase}; }

  LogComplex operator*(const LogComplex& o) const noexcept;
  LogComplex operator/(const LogComplex& o) const noexcept;
  LogComplex conj() const noexcept { return {log_mag, is_zero() ? 0.0 : reduce_phase(-phase)}; }
};

/// Sum of terms given in log form; terms are combined in input order after
/// rescaling by the largest magnitude.
LogComplex log_sum(std::span<const LogComplex> terms);

/// exp(w) with the Overflow contract of the plain-Complex paths.
Complex checked_exp(Complex w);

/// log(1 + u) accurate for small |u|.
Complex log1p(Complex u) noexcept;

/// Rectangular evaluation grid [xmin, xmax] x [ymin, ymax] with spacing step.
struct GridSpec {
  double xmin = 0.0;
  double xmax = 0.0;
  double ymin = 0.0;
  double ymax = 0.0;
  double step = 1.0;

  /// Throws InvalidArgument for empty or non-finite grids.
  void validate() const;
  /// Row-major points, y outer and x inner.
  std::vector<Complex> points() const;
};

}  // namespace bargmann
