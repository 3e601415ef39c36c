#pragma once

#include <array>
#include <vector>

#include "onewave/medium.hpp"

namespace onewave {

struct ModeMatrices {
  int n = 0;
  double tp = 0.0;
  double ts = 0.0;
  CMat2 Hn, Jn, Yn;
  Eigen::Matrix2d Q;
};

struct ModeCoefficients {
  int n = 0;
  cplx A, B;
};

using LogMat2 = std::array<std::array<LogScaledComplex, 2>, 2>;

// Column-scaled mode matrices: M = Mhat * diag(exp(log_scale[0]), exp(log_scale[1])).
struct ScaledModeMatrices {
  int n = 0;
  CMat2 Hhat, Jhat;
  std::array<double, 2> h_log{}, j_log{};
};

// Analytic solution for the rigid disk B_R centred at the origin; all modes |n| <= nmax.
class DiskSolver {
 public:
  DiskSolver(double R, const ElasticMedium& m, int nmax);

  double radius() const { return R_; }
  const ElasticMedium& medium() const { return m_; }
  int nmax() const { return nmax_; }
  double tp() const { return tp_; }
  double ts() const { return ts_; }
  const CylinderTable& table_p() const { return tab_p_; }
  const CylinderTable& table_s() const { return tab_s_; }

  ModeMatrices mode_matrices(int n) const;
  ScaledModeMatrices scaled_mode_matrices(int n) const;
  // det of the order-n mode matrix of the given kind, free of leading-order cancellation.
  LogScaledComplex mode_determinant(CylKind kind, int n) const;
  // Sigma_n = H_n^{-1} J_n with overflow-safe entries.
  LogMat2 sigma(int n) const;
  ModeCoefficients coefficients_p(int n, double theta_d) const;
  ModeCoefficients coefficients_s(int n, double theta_d) const;

  // Entries (pp, ps; sp, ss) at theta = theta_x - theta_d.
  CMat2 farfield_matrix(double theta) const;
  // Magnitude of the |n| = nmax contribution to the far-field matrix.
  double tail_magnitude() const;

  // Scattered displacement at |x| >= R for the plane wave w.
  CVec2 scattered_field(const Vec2& x, const PlaneWaveSpec& w) const;

 private:
  double R_;
  ElasticMedium m_;
  int nmax_;
  double tp_, ts_;
  CylinderTable tab_p_, tab_s_;
  std::vector<CMat2> farfield_modes_;  // Q^{-1} Sigma_n Q^2, index n + nmax
};

int default_truncation(double ts);

ModeMatrices mode_matrices(int n, double R, const ElasticMedium& m);
ModeCoefficients coefficients_p(int n, double R, const ElasticMedium& m, double theta_d);
ModeCoefficients coefficients_s(int n, double R, const ElasticMedium& m, double theta_d);
CMat2 farfield_matrix(double theta, double R, const ElasticMedium& m, int N);
CVec2 scattered_field(const Vec2& x, const PlaneWaveSpec& w, double R, const ElasticMedium& m, int N);

// Far-field (p_part, s_part) of the disk B_R(center) under plane wave w, via translation.
CVec2 disk_farfield(double theta_x, const PlaneWaveSpec& w, const Vec2& center, const DiskSolver& disk);

}  // namespace onewave
