#include "spatial_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bargmann::detail {

namespace {

constexpr std::int64_t kMaxCells = std::int64_t{1} << 24;

}  // namespace

double natural_cell(std::span<const Complex> points) {
  if (points.size() < 2) return 1.0;
  double xmin = points[0].real(), xmax = xmin, ymin = points[0].imag(), ymax = ymin;
  for (const auto& z : points) {
    xmin = std::min(xmin, z.real());
    xmax = std::max(xmax, z.real());
    ymin = std::min(ymin, z.imag());
    ymax = std::max(ymax, z.imag());
  }
  const double w = std::max(xmax - xmin, ymax - ymin);
  if (w == 0.0) return 1.0;
  const double area = std::max((xmax - xmin) * (ymax - ymin), w * w / static_cast<double>(points.size()));
  return std::sqrt(area / static_cast<double>(points.size()));
}

GridIndex::GridIndex(std::span<const Complex> points, double cell) : pts_(points), cell_(cell) {
  if (points.empty()) {
    start_.assign(2, 0);
    return;
  }
  double xmax = points[0].real(), ymax = points[0].imag();
  x0_ = xmax;
  y0_ = ymax;
  for (const auto& z : points) {
    x0_ = std::min(x0_, z.real());
    y0_ = std::min(y0_, z.imag());
    xmax = std::max(xmax, z.real());
    ymax = std::max(ymax, z.imag());
  }
  // Keep the cell count bounded for very spread-out inputs.
  while (true) {
    nx_ = static_cast<std::int64_t>(std::floor((xmax - x0_) / cell_)) + 1;
    ny_ = static_cast<std::int64_t>(std::floor((ymax - y0_) / cell_)) + 1;
    if (nx_ * ny_ <= std::max<std::int64_t>(kMaxCells, 4 * static_cast<std::int64_t>(points.size()))) break;
    cell_ *= 2.0;
  }
  const std::size_t ncell = static_cast<std::size_t>(nx_ * ny_);
  start_.assign(ncell + 1, 0);
  std::vector<std::uint32_t> which(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    which[k] = static_cast<std::uint32_t>(cy(points[k].imag()) * nx_ + cx(points[k].real()));
    ++start_[which[k] + 1];
  }
  for (std::size_t c = 0; c < ncell; ++c) start_[c + 1] += start_[c];
  items_.resize(points.size());
  std::vector<std::uint32_t> fill(start_.begin(), start_.end() - 1);
  for (std::size_t k = 0; k < points.size(); ++k) items_[fill[which[k]]++] = static_cast<std::uint32_t>(k);
}

std::int64_t GridIndex::cx(double x) const noexcept {
  return std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor((x - x0_) / cell_)), 0, nx_ - 1);
}

std::int64_t GridIndex::cy(double y) const noexcept {
  return std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor((y - y0_) / cell_)), 0, ny_ - 1);
}

std::span<const std::uint32_t> GridIndex::bucket(std::int64_t i, std::int64_t j) const noexcept {
  const auto c = static_cast<std::size_t>(j * nx_ + i);
  return {items_.data() + start_[c], items_.data() + start_[c + 1]};
}

double GridIndex::closest_pair_nearby() const {
  double best2 = std::numeric_limits<double>::infinity();
  for (std::int64_t j = 0; j < ny_; ++j) {
    for (std::int64_t i = 0; i < nx_; ++i) {
      const auto here = bucket(i, j);
      if (here.empty()) continue;
      for (std::size_t a = 0; a < here.size(); ++a) {
        for (std::size_t b = a + 1; b < here.size(); ++b) {
          best2 = std::min(best2, std::norm(pts_[here[a]] - pts_[here[b]]));
        }
      }
      // Half of the 8-neighbourhood so every adjacent pair is seen once.
      static constexpr int kOffsets[4][2] = {{1, 0}, {-1, 1}, {0, 1}, {1, 1}};
      for (const auto& o : kOffsets) {
        const std::int64_t ii = i + o[0];
        const std::int64_t jj = j + o[1];
        if (ii < 0 || ii >= nx_ || jj >= ny_) continue;
        for (const auto pa : here) {
          for (const auto pb : bucket(ii, jj)) best2 = std::min(best2, std::norm(pts_[pa] - pts_[pb]));
        }
      }
    }
  }
  return std::sqrt(best2);
}

double GridIndex::nearest_distance(Complex z) const {
  if (pts_.empty()) return std::numeric_limits<double>::infinity();
  const auto fx = static_cast<std::int64_t>(std::floor((z.real() - x0_) / cell_));
  const auto fy = static_cast<std::int64_t>(std::floor((z.imag() - y0_) / cell_));
  const std::int64_t ci = std::clamp<std::int64_t>(fx, 0, nx_ - 1);
  const std::int64_t cj = std::clamp<std::int64_t>(fy, 0, ny_ - 1);
  double best2 = std::numeric_limits<double>::infinity();
  const std::int64_t max_ring = std::max(nx_, ny_);
  for (std::int64_t k = 0; k <= max_ring; ++k) {
    for (std::int64_t j = cj - k; j <= cj + k; ++j) {
      if (j < 0 || j >= ny_) continue;
      const bool edge_row = (j == cj - k || j == cj + k);
      for (std::int64_t i = ci - k; i <= ci + k; i += edge_row ? 1 : 2 * k) {
        if (i >= 0 && i < nx_) {
          for (const auto p : bucket(i, j)) best2 = std::min(best2, std::norm(pts_[p] - z));
        }
        if (k == 0) break;
      }
    }
    // Anything beyond ring k is at least k cells away along one axis.
    const double reach = static_cast<double>(k) * cell_;
    if (best2 <= reach * reach) break;
  }
  return std::sqrt(best2);
}

}  // namespace bargmann::detail
