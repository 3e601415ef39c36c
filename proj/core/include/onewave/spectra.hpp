#pragma once

#include <array>
#include <utility>
#include <vector>

#include "onewave/disk.hpp"

namespace onewave {

enum class Channel { P, S };

// Eigenpair of Sigma_n = H_n^{-1} J_n and of the disk far-field operator.
// X = (1, -sigma) / sqrt(1 + |sigma|^2); for n = 0 the pairs are (1, 0) and (0, 1).
struct DiskSpectralPair {
  int n = 0;
  int j = 1;
  cplx sigma{0.0, 0.0};
  LogScaledComplex lambda_sigma;
  LogScaledComplex lambda_F;
  CVec2 X = CVec2::Zero();
  Vec2 center = Vec2::Zero();
};

// Eigenpair of the projected operator F^(alpha) with eigenfunction e^{i n theta}.
struct PSSpectralPair {
  int n = 0;
  Channel channel = Channel::P;
  LogScaledComplex eta;
  double log_lambda_sharp = -std::numeric_limits<double>::infinity();
  // sqrt(2 / (pi k_alpha)) e^{i pi/4} i Sigma_n(alpha, alpha), the n-th Fourier coefficient of u_alpha,alpha.
  LogScaledComplex farfield_coefficient;
  Vec2 center = Vec2::Zero();

  double lambda_sharp() const { return std::exp(log_lambda_sharp); }
};

// beta_n = i b with real b; requires n != 0.
LogScaledComplex beta_n(int n, const CylinderTable& tp, const CylinderTable& ts);
cplx beta_n(int n, double tp, double ts);

// Roots of sigma^2 + beta_n sigma + 1 = 0, ordered so that sigma_1 -> i (t_p/t_s)^n.
std::pair<cplx, cplx> sigma_pair(int n, double tp, double ts);

std::array<DiskSpectralPair, 2> disk_eigensystem(int n, const DiskSolver& disk);
std::array<DiskSpectralPair, 2> disk_eigensystem(int n, double R, const ElasticMedium& m);

std::array<PSSpectralPair, 2> ps_spectra(int n, const DiskSolver& disk);
std::array<PSSpectralPair, 2> ps_spectra(int n, double R, const ElasticMedium& m);

DiskSpectralPair translated_spectra(const DiskSpectralPair& base, const Vec2& z);
PSSpectralPair translated_spectra(const PSSpectralPair& base, const Vec2& z);

// (p, s) components of the eigenfunction at theta.
CVec2 eigenfunction(const DiskSpectralPair& pair, double theta, const ElasticMedium& m);
cplx eigenfunction(const PSSpectralPair& pair, double theta, const ElasticMedium& m);

// |J_n X - lambda H_n X| / (|J_n X| + |lambda H_n X|), evaluated in log-scaled form.
double eigen_residual(const DiskSpectralPair& pair, const DiskSolver& disk);

// All eigenpairs for |n| <= nmax of B_R centred at the origin.
class DiskSpectrum {
 public:
  DiskSpectrum(double R, const ElasticMedium& m, int nmax);

  const DiskSolver& solver() const { return disk_; }
  int nmax() const { return disk_.nmax(); }
  const std::array<DiskSpectralPair, 2>& pairs(int n) const;
  const std::array<PSSpectralPair, 2>& ps(int n) const;

 private:
  DiskSolver disk_;
  std::vector<std::array<DiskSpectralPair, 2>> pairs_;
  std::vector<std::array<PSSpectralPair, 2>> ps_;
};

// Large-n leading terms of the closed-form spectra.
namespace asymptotic {
LogScaledComplex beta(int n, double tp, double ts);
LogScaledComplex sigma1(int n, double tp, double ts);
LogScaledComplex sigma2(int n, double tp, double ts);
LogScaledComplex lambda_F1(int n, double tp, double ts, double omega);
LogScaledComplex lambda_F2(int n, double tp, double ts, double omega);
// Leading term of lambda_sharp for the p channel in its printed normalization.
double log_lambda_sharp_p(int n, double tp, double ts, double kp);
}  // namespace asymptotic

}  // namespace onewave
