#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bargmann/types.hpp"

namespace bargmann::detail {

// Uniform grid over the bounding box, points bucketed in CSR form.
class GridIndex {
 public:
  GridIndex(std::span<const Complex> points, double cell);

  double cell() const noexcept { return cell_; }

  // Smallest distance between two points in the same or adjacent cells;
  // +inf when there is no such pair.
  double closest_pair_nearby() const;

  // Exact distance from z to the nearest indexed point.
  double nearest_distance(Complex z) const;

 private:
  std::int64_t cx(double x) const noexcept;
  std::int64_t cy(double y) const noexcept;
  std::span<const std::uint32_t> bucket(std::int64_t i, std::int64_t j) const noexcept;

  std::span<const Complex> pts_;
  double cell_;
  double x0_ = 0.0;
  double y0_ = 0.0;
  std::int64_t nx_ = 1;
  std::int64_t ny_ = 1;
  std::vector<std::uint32_t> start_;
  std::vector<std::uint32_t> items_;
};

// Cell size for roughly one point per cell.
double natural_cell(std::span<const Complex> points);

}  // namespace bargmann::detail
