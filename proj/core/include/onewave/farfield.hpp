#pragma once

#include <Eigen/Dense>

#include "onewave/medium.hpp"

namespace onewave {

using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

// theta_j = 2 pi j / M
double grid_angle(int j, int M);

// Far field of a single incident wave sampled on the uniform grid: p = u.x_hat, s = u.x_hat_perp.
struct FarFieldData {
  int M = 0;
  PlaneWaveSpec incident;
  CVec p, s;

  void validate() const;
};

// Multistatic data; entry (j, l) = u_alpha,beta(x_hat_j; d_l).
struct FarFieldMatrixData {
  int M = 0;
  CMat pp, ps, sp, ss;

  void validate() const;
  const CMat& channel(int alpha, int beta) const;
  CMat& channel(int alpha, int beta);
};

}  // namespace onewave
