#include "bargmann/pointsets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "spatial_index.hpp"

namespace bargmann {

namespace {

bool complex_less(Complex a, Complex b) {
  return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
}

bool has_duplicates(std::vector<Complex> pts) {
  std::sort(pts.begin(), pts.end(), complex_less);
  return std::adjacent_find(pts.begin(), pts.end()) != pts.end();
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be positive and finite");
  }
}

PointSet grid_lattice(double a, double b, double window_radius) {
  require_positive(a, "spacing");
  require_positive(b, "spacing");
  if (window_radius < 0.0 || std::isnan(window_radius)) {
    throw Error(ErrorCode::EmptyWindow, "window_radius must be nonnegative");
  }
  const auto ny = static_cast<std::int64_t>(std::floor(window_radius / b));
  std::vector<Complex> pts;
  std::vector<LatticeIndex> idx;
  const double w2 = window_radius * window_radius;
  for (std::int64_t n = -ny; n <= ny; ++n) {
    const double y = b * static_cast<double>(n);
    const auto mx = static_cast<std::int64_t>(std::floor(std::sqrt(std::max(w2 - y * y, 0.0)) / a));
    for (std::int64_t m = -mx; m <= mx; ++m) {
      const Complex z(a * static_cast<double>(m), y);
      if (std::norm(z) > w2) continue;
      pts.push_back(z);
      idx.push_back({m, n});
    }
  }
  return PointSet(std::move(pts), window_radius, std::move(idx));
}

}  // namespace

PointSet::PointSet(std::vector<Complex> points, double window_radius,
                   std::optional<std::vector<LatticeIndex>> index)
    : points_(std::move(points)), window_(window_radius), index_(std::move(index)) {
  if (!(window_radius >= 0.0) || !std::isfinite(window_radius)) {
    throw Error(ErrorCode::InvalidArgument, "window_radius must be a finite nonnegative number");
  }
  const double slack = window_ * (1.0 + 1e-12) + 1e-300;
  for (const auto& z : points_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorCode::InvalidArgument, "points must be finite");
    }
    if (std::abs(z) > slack) {
      throw Error(ErrorCode::InvalidArgument, "point outside the window radius " + std::to_string(window_));
    }
  }
  if (has_duplicates(points_)) throw Error(ErrorCode::DuplicatePoints, "point set contains duplicate points");
  if (index_) {
    if (index_->size() != points_.size()) {
      throw Error(ErrorCode::InvalidArgument, "lattice index must have one entry per point");
    }
    lookup_.reserve(index_->size());
    for (std::size_t k = 0; k < index_->size(); ++k) {
      if (!lookup_.emplace((*index_)[k], k).second) {
        throw Error(ErrorCode::InvalidArgument, "lattice index is not injective");
      }
    }
  }
}

const std::vector<LatticeIndex>& PointSet::indices() const {
  if (!index_) throw Error(ErrorCode::NodeIndexMissing, "point set has no lattice index");
  return *index_;
}

std::optional<std::size_t> PointSet::find(LatticeIndex idx) const {
  const auto it = lookup_.find(idx);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> PointSet::find_point(Complex z) const {
  for (std::size_t k = 0; k < points_.size(); ++k) {
    if (points_[k] == z) return k;
  }
  return std::nullopt;
}

SquareLattice::SquareLattice(double spacing) : s_(spacing) { require_positive(spacing, "spacing"); }

SquareLattice SquareLattice::for_density(FockParameter alpha, double ratio) {
  require_positive(ratio, "density_ratio");
  return SquareLattice(std::sqrt(kPi / (alpha.value() * ratio)));
}

LatticeIndex SquareLattice::nearest_index(Complex z) const noexcept {
  return {static_cast<std::int64_t>(std::llround(z.real() / s_)),
          static_cast<std::int64_t>(std::llround(z.imag() / s_))};
}

PointSet square_lattice(double spacing, double window_radius) {
  return grid_lattice(spacing, spacing, window_radius);
}

PointSet rectangular_lattice(double a, double b, double window_radius) {
  return grid_lattice(a, b, window_radius);
}

PointSet scale_lattice_to_density(FockParameter alpha, double density_ratio, double window_radius) {
  return square_lattice(SquareLattice::for_density(alpha, density_ratio).spacing(), window_radius);
}

PointSet perturb(const PointSet& lattice, double max_shift, std::uint64_t seed) {
  if (!(max_shift >= 0.0) || !std::isfinite(max_shift)) {
    throw Error(ErrorCode::InvalidArgument, "max_shift must be a finite nonnegative number");
  }
  const auto& idx = lattice.indices();
  std::mt19937_64 rng(seed);
  const auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<Complex> pts;
  pts.reserve(lattice.size());
  for (const auto& z : lattice.points()) {
    const double rad = max_shift * std::sqrt(unit());
    const double ang = 2.0 * kPi * unit();
    pts.push_back(z + std::polar(rad, ang));
  }
  if (has_duplicates(pts)) {
    throw Error(ErrorCode::CollisionAfterPerturbation,
                "two perturbed points coincide; retry with another seed or a smaller max_shift");
  }
  return PointSet(std::move(pts), lattice.window_radius() + max_shift, idx);
}

double separation(const PointSet& gamma) {
  if (gamma.size() < 2) throw Error(ErrorCode::TooFewPoints, "separation needs at least two points");
  double cell = detail::natural_cell(gamma.points());
  while (true) {
    const detail::GridIndex grid(gamma.points(), cell);
    const double best = grid.closest_pair_nearby();
    // Any pair closer than one cell sits in the same or adjacent cells.
    if (best <= grid.cell()) return best;
    cell = 2.0 * grid.cell();
  }
}

double distance_to_set(const PointSet& gamma, Complex z) {
  const detail::GridIndex grid(gamma.points(), detail::natural_cell(gamma.points()));
  return grid.nearest_distance(z);
}

Closeness closeness(const PointSet& gamma, const SquareLattice& lattice) {
  Closeness out;
  out.matching.reserve(gamma.size());
  std::unordered_map<LatticeIndex, std::size_t, LatticeIndexHash> seen;
  seen.reserve(gamma.size());
  for (std::size_t k = 0; k < gamma.size(); ++k) {
    const Complex z = gamma.points()[k];
    const LatticeIndex idx = lattice.nearest_index(z);
    if (!seen.emplace(idx, k).second) {
      throw Error(ErrorCode::NotUniformlyClose,
                  "points " + std::to_string(seen[idx]) + " and " + std::to_string(k) +
                      " round to the same lattice index (" + std::to_string(idx.m) + "," +
                      std::to_string(idx.n) + ")");
    }
    out.Q = std::max(out.Q, std::abs(z - lattice.point(idx)));
    out.matching.push_back(idx);
  }
  return out;
}

CountExtrema counts(const PointSet& gamma, double r, double translate_step) {
  require_positive(r, "r");
  require_positive(translate_step, "translate_step");
  const double W = gamma.window_radius();
  if (r / std::sqrt(2.0) > W) {
    throw Error(ErrorCode::WindowTooSmall, "no translate of the r-square fits in the window");
  }
  // Translates t with the closed square [tx, tx+r] x [ty, ty+r] inside |z| <= W.
  const double x_max = std::sqrt(W * W - 0.25 * r * r);
  const double lo = -x_max;
  const double hi = x_max - r;
  const auto y_range = [&](double tx) {
    const double X = std::max(std::abs(tx), std::abs(tx + r));
    const double Y = std::sqrt(std::max(W * W - X * X, 0.0));
    return std::pair{-Y, Y - r};
  };

  std::vector<Complex> pts = gamma.points();
  std::sort(pts.begin(), pts.end(), complex_less);

  // Membership in x is constant on pieces (c_i, c_{i+1}] between the values x_j and x_j - r.
  std::vector<double> cuts;
  cuts.reserve(2 * pts.size() + 2);
  cuts.push_back(lo);
  for (const auto& z : pts) {
    for (const double c : {z.real(), z.real() - r}) {
      if (c > lo && c < hi) cuts.push_back(c);
    }
  }
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  // Cuts closer than tol are one cut; pieces are sampled at midpoints, so
  // rounding in x_j - r and at the range ends cannot produce a spurious count.
  const double tol = 1e-9 * (W + r);
  const auto merge = [tol](std::vector<double>& v) {
    std::size_t keep = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (keep == 0 || v[i] - v[keep - 1] > tol) v[keep++] = v[i];
    }
    v.resize(keep);
  };
  merge(cuts);

  CountExtrema out{std::numeric_limits<std::int64_t>::max(), 0};
  std::vector<double> ys;
  std::vector<double> cand;
  std::vector<double> probe;
  std::size_t enter = 0;
  std::size_t leave = 0;

  const auto scan_y = [&](double ylo, double yhi) {
    // Count on pieces (c, c'] in ty, evaluated at piece midpoints.
    if (yhi < ylo) return;
    cand.clear();
    cand.push_back(ylo);
    std::size_t a = 0;
    std::size_t b = 0;
    while (a < ys.size() || b < ys.size()) {
      double c;
      if (b >= ys.size() || (a < ys.size() && ys[a] <= ys[b] - r)) {
        c = ys[a++];
      } else {
        c = ys[b++] - r;
      }
      if (c > ylo && c < yhi) cand.push_back(c);
    }
    cand.push_back(yhi);
    merge(cand);
    probe.clear();
    for (std::size_t i = 0; i + 1 < cand.size(); ++i) probe.push_back(0.5 * (cand[i] + cand[i + 1]));
    if (probe.empty()) probe.push_back(0.5 * (ylo + yhi));
    std::size_t first = 0;  // first y >= ty
    std::size_t past = 0;   // first y >= ty + r
    for (const double ty : probe) {
      while (first < ys.size() && ys[first] < ty) ++first;
      while (past < ys.size() && ys[past] < ty + r) ++past;
      const auto n = static_cast<std::int64_t>(past - first);
      out.n_minus = std::min(out.n_minus, n);
      out.n_plus = std::max(out.n_plus, n);
    }
  };

  const auto advance_to = [&](double tx) {
    // Members satisfy tx <= x < tx + r; pts is sorted by x.
    while (enter < pts.size() && pts[enter].real() < tx + r) {
      const double y = pts[enter].imag();
      ys.insert(std::upper_bound(ys.begin(), ys.end(), y), y);
      ++enter;
    }
    while (leave < enter && pts[leave].real() < tx) {
      const double y = pts[leave].imag();
      ys.erase(std::lower_bound(ys.begin(), ys.end(), y));
      ++leave;
    }
  };

  if (cuts.size() == 1) {
    advance_to(lo);
    const auto [ylo, yhi] = y_range(lo);
    scan_y(ylo, yhi);
  }
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    advance_to(0.5 * (a + b));
    // The y-range is widest where the square is most centred in x.
    const auto [ylo, yhi] = y_range(std::clamp(-0.5 * r, a, b));
    scan_y(ylo, yhi);
  }
  return out;
}

DensityReport density_estimate(const PointSet& gamma, const std::vector<double>& radii,
                               double translate_step) {
  require_positive(translate_step, "translate_step");
  DensityReport rep;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    require_positive(radii[i], "radius");
    if (i > 0 && !(radii[i] > radii[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "radii must be strictly increasing");
    }
  }
  rep.radii = radii;
  std::vector<std::size_t> good;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    try {
      const auto c = counts(gamma, radii[i], translate_step);
      rep.n_minus.push_back(c.n_minus);
      rep.n_plus.push_back(c.n_plus);
      rep.reliable.push_back(true);
      good.push_back(i);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::WindowTooSmall) throw;
      rep.n_minus.push_back(0);
      rep.n_plus.push_back(0);
      rep.reliable.push_back(false);
    }
  }
  if (good.empty()) return rep;
  const std::size_t take = (good.size() + 2) / 3;
  rep.radii_used = take;
  rep.d_minus_estimate = std::numeric_limits<double>::infinity();
  for (std::size_t k = good.size() - take; k < good.size(); ++k) {
    const std::size_t i = good[k];
    const double r2 = radii[i] * radii[i];
    rep.d_minus_estimate = std::min(rep.d_minus_estimate, static_cast<double>(rep.n_minus[i]) / r2);
    rep.d_plus_estimate = std::max(rep.d_plus_estimate, static_cast<double>(rep.n_plus[i]) / r2);
  }
  return rep;
}

}  // namespace bargmann
