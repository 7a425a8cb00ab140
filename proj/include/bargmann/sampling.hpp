#pragma once

#include <vector>

#include <Eigen/Dense>

#include "bargmann/core_space.hpp"
#include "bargmann/pointsets.hpp"

namespace bargmann {

struct FrameRow {
  int N = 0;
  double A = 0.0;
  double B = 0.0;
};

struct FrameEstimate {
  double A = 0.0;
  double B = 0.0;
  int degree = 0;
  double effective_radius = 0.0;
  double window_radius = 0.0;
  /// effective_radius <= window_radius
  bool reliable = true;
  std::vector<FrameRow> convergence_table;  // N/2, 3N/4, N
};

/// S_jk = sum_z e^{-alpha|z|^2} conj(e_j(z)) e_k(z), (N+1) x (N+1), Hermitian.
Eigen::MatrixXcd frame_matrix(const PointSet& gamma, FockParameter alpha, int N);

/// Extremal eigenvalues of the frame matrix.
FrameRow extremal_eigenvalues(const Eigen::MatrixXcd& S, int N);

FrameEstimate frame_bounds(const PointSet& gamma, FockParameter alpha, int N, double window_radius);

/// Relative gap between ||f||^2 and the sum over |k|,|l| <= K of the cell
/// integrals of |T_{lambda_kl} f|^2 over the square of side 1/sqrt(alpha).
double norm_decomposition_check(const FockFunction& f, int K);

struct RemovalResult {
  FrameEstimate before;
  FrameEstimate after;
};

RemovalResult point_removal_experiment(const PointSet& gamma, FockParameter alpha, int N, Complex removed);

}  // namespace bargmann
