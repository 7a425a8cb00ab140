#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "bargmann/core_space.hpp"
#include "bargmann/types.hpp"

namespace bargmann {

struct LatticeIndex {
  std::int64_t m = 0;
  std::int64_t n = 0;
  auto operator<=>(const LatticeIndex&) const = default;
};

struct LatticeIndexHash {
  std::size_t operator()(const LatticeIndex& k) const noexcept {
    const auto a = static_cast<std::uint64_t>(k.m) * 0x9E3779B97F4A7C15ULL;
    const auto b = static_cast<std::uint64_t>(k.n) * 0xC2B2AE3D27D4EB4FULL;
    return static_cast<std::size_t>(a ^ (b + 0x165667B19E3779F9ULL + (a << 6) + (a >> 2)));
  }
};

/// A finite planar configuration. Points are pairwise distinct and lie in
/// the disk |z| <= window_radius; an optional lattice index labels each one.
class PointSet {
 public:
  PointSet(std::vector<Complex> points, double window_radius,
           std::optional<std::vector<LatticeIndex>> index = std::nullopt);

  const std::vector<Complex>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  double window_radius() const noexcept { return window_; }

  bool has_index() const noexcept { return index_.has_value(); }
  /// Throws NodeIndexMissing when the set carries no index.
  const std::vector<LatticeIndex>& indices() const;
  std::optional<std::size_t> find(LatticeIndex idx) const;
  /// Position of an exact point match.
  std::optional<std::size_t> find_point(Complex z) const;

 private:
  std::vector<Complex> points_;
  double window_;
  std::optional<std::vector<LatticeIndex>> index_;
  std::unordered_map<LatticeIndex, std::size_t, LatticeIndexHash> lookup_;
};

/// lambda_mn = s(m + in); density 1/s^2.
class SquareLattice {
 public:
  explicit SquareLattice(double spacing);
  /// Spacing sqrt(pi/(alpha ratio)), i.e. density ratio * alpha/pi.
  static SquareLattice for_density(FockParameter alpha, double ratio);

  double spacing() const noexcept { return s_; }
  double density() const noexcept { return 1.0 / (s_ * s_); }
  Complex point(LatticeIndex idx) const noexcept {
    return {s_ * static_cast<double>(idx.m), s_ * static_cast<double>(idx.n)};
  }
  LatticeIndex nearest_index(Complex z) const noexcept;

 private:
  double s_;
};

/// All lambda_mn with |lambda_mn| <= window_radius, ordered with n outer and m inner.
PointSet square_lattice(double spacing, double window_radius);

/// Points ma + inb within the window. Indexed like square_lattice.
PointSet rectangular_lattice(double a, double b, double window_radius);

PointSet scale_lattice_to_density(FockParameter alpha, double density_ratio, double window_radius);

/// Independent shifts uniform on the disk |d| <= max_shift (mt19937_64 seeded with seed).
PointSet perturb(const PointSet& lattice, double max_shift, std::uint64_t seed);

/// Exact minimum pairwise distance.
double separation(const PointSet& gamma);

/// Distance from z to the nearest point of gamma.
double distance_to_set(const PointSet& gamma, Complex z);

struct Closeness {
  double Q = 0.0;
  std::vector<LatticeIndex> matching;  // one per point, in point order
};

Closeness closeness(const PointSet& gamma, const SquareLattice& lattice);

struct CountExtrema {
  std::int64_t n_minus = 0;
  std::int64_t n_plus = 0;
};

/// Extremal number of points in t + [0,r)^2 over translates whose closed
/// square lies inside the window disk.
CountExtrema counts(const PointSet& gamma, double r, double translate_step);

struct DensityReport {
  std::vector<double> radii;
  std::vector<std::int64_t> n_minus;
  std::vector<std::int64_t> n_plus;
  std::vector<bool> reliable;
  double d_minus_estimate = 0.0;
  double d_plus_estimate = 0.0;
  /// Radii that entered the estimates (largest third of the reliable ones).
  std::size_t radii_used = 0;
};

DensityReport density_estimate(const PointSet& gamma, const std::vector<double>& radii,
                               double translate_step);

}  // namespace bargmann
