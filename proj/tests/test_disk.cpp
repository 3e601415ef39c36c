#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "onewave/disk.hpp"
#include "onewave/errors.hpp"

using namespace onewave;

namespace {

constexpr cplx kI{0.0, 1.0};

double boundary_residual(const DiskSolver& disk, const PlaneWaveSpec& w, int samples = 64) {
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    double th = 2 * std::numbers::pi * k / samples + 0.01;
    Vec2 x = disk.radius() * Vec2(std::cos(th), std::sin(th));
    CVec2 total = plane_wave(x, w, disk.medium()) + disk.scattered_field(x, w);
    worst = std::max(worst, total.cwiseAbs().maxCoeff());
  }
  return worst;
}

double det_j_oracle(int n, double R, double lambda, double mu, double omega) {
  double tp = omega / std::sqrt(lambda + 2 * mu) * R, ts = omega / std::sqrt(mu) * R;
  auto jd = [](int k, double t) {
    return 0.5 * (std::cyl_bessel_j(k - 1.0, t) - std::cyl_bessel_j(k + 1.0, t));
  };
  return tp * ts * jd(n, tp) * jd(n, ts) - n * n * std::cyl_bessel_j(n, tp) * std::cyl_bessel_j(n, ts);
}

}  // namespace

TEST(Disk, ModeMatrixStructure) {
  ElasticMedium m = ElasticMedium::make(2.0, 1.0, 3.0);
  ModeMatrices z = mode_matrices(0, 1.0, m);
  EXPECT_EQ(z.Hn(0, 1), cplx(0.0));
  EXPECT_EQ(z.Hn(1, 0), cplx(0.0));
  EXPECT_EQ(z.Jn(0, 1), cplx(0.0));
  for (int n : {-3, 0, 1, 5, 12}) {
    ModeMatrices mm = mode_matrices(n, 0.8, m);
    EXPECT_EQ((mm.Hn - (mm.Jn + kI * mm.Yn)).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_DOUBLE_EQ(mm.Q(0, 0), 1.0 / std::sqrt(m.kp()));
    EXPECT_DOUBLE_EQ(mm.Q(1, 1), 1.0 / std::sqrt(m.ks()));
    EXPECT_EQ(mm.Q(0, 1), 0.0);
  }
}

TEST(Disk, HnInvertible) {
  for (auto [R, lam, mu, om] : {std::array<double, 4>{1.0, 2.0, 1.0, 3.0}, {0.5, 1.0, 1.0, 7.0},
                                {2.0, 0.5, 2.0, 1.3}}) {
    DiskSolver disk(R, ElasticMedium::make(lam, mu, om), 41);
    for (int n = 0; n <= 40; ++n) {
      ScaledModeMatrices s = disk.scaled_mode_matrices(n);
      EXPECT_GT(std::abs(s.Hhat.determinant()), 1e-8 * s.Hhat.cwiseAbs2().sum()) << n;
    }
  }
}

TEST(Disk, DetJnVanishesAtEigenfrequency) {
  const double R = 1.0, lam = 2.0, mu = 1.0;
  const int n = 1;
  double lo = 2.0, hi = 2.0;
  double flo = det_j_oracle(n, R, lam, mu, lo);
  while (det_j_oracle(n, R, lam, mu, hi) * flo > 0) hi += 0.05;
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    if (det_j_oracle(n, R, lam, mu, mid) * flo > 0) lo = mid;
    else hi = mid;
  }
  double root = 0.5 * (lo + hi);
  auto det_at = [&](double om) { return mode_matrices(n, R, ElasticMedium::make(lam, mu, om)).Jn.determinant(); };
  double scale = std::abs(det_at(root - 0.1).real());
  EXPECT_LT(std::abs(det_at(root)), 1e-10 * scale);
  EXPECT_LT(det_at(root - 1e-3).real() * det_at(root + 1e-3).real(), 0.0);
  EXPECT_LT(std::abs(det_at(root - 0.3).imag()), 1e-12 * scale);
}

TEST(Disk, CoefficientPhaseFactor) {
  ElasticMedium m = ElasticMedium::make(2.0, 1.0, 3.0);
  for (int n : {-4, 0, 2, 7}) {
    ModeCoefficients a = coefficients_p(n, 1.0, m, 0.0);
    ModeCoefficients b = coefficients_p(n, 1.0, m, std::numbers::pi / 3);
    cplx ph = std::exp(-kI * (n * std::numbers::pi / 3));
    EXPECT_LT(std::abs(b.A - a.A * ph), 1e-14 * std::abs(a.A) + 1e-300);
    EXPECT_LT(std::abs(b.B - a.B * ph), 1e-14 * std::abs(a.B) + 1e-300);
    ModeCoefficients c = coefficients_s(n, 1.0, m, 0.0);
    ModeCoefficients d = coefficients_s(n, 1.0, m, std::numbers::pi / 3);
    EXPECT_LT(std::abs(d.B - c.B * ph), 1e-14 * std::abs(c.B) + 1e-300);
  }
  ModeCoefficients z = coefficients_p(0, 1.0, m, 0.4);
  EXPECT_EQ(z.B, cplx(0.0));
  ModeCoefficients zs = coefficients_s(0, 1.0, m, 0.4);
  EXPECT_EQ(zs.A, cplx(0.0));
}

TEST(Disk, DirichletBoundaryResidual) {
  for (auto [R, lam, mu, om] : {std::array<double, 4>{1.0, 2.0, 1.0, 3.0}, {0.25, 2.0, 1.0, 4.0},
                                {1.0, 1.0, 1.0, 8.0}}) {
    ElasticMedium m = ElasticMedium::make(lam, mu, om);
    DiskSolver disk(R, m, default_truncation(m.ks() * R));
    EXPECT_LT(boundary_residual(disk, PlaneWaveSpec{Direction{0.3}, 1.0, 0.0}), 1e-8);
    EXPECT_LT(boundary_residual(disk, PlaneWaveSpec{Direction{1.9}, 0.0, 1.0}), 1e-8);
    EXPECT_LT(boundary_residual(disk, PlaneWaveSpec{Direction{4.0}, cplx(0.5, 1), cplx(-1, 0.2)}), 1e-8);
  }
}

TEST(Disk, ResidualDecaysSpectrally) {
  ElasticMedium m = ElasticMedium::make(2.0, 1.0, 4.0);
  PlaneWaveSpec w{Direction{0.7}, 1.0, 1.0};
  const int n0 = static_cast<int>(std::ceil(m.ks())) + 11;
  double r0 = boundary_residual(DiskSolver(1.0, m, n0), w);
  double r1 = boundary_residual(DiskSolver(1.0, m, n0 + 5), w);
  EXPECT_LT(r1, 0.2 * r0);
}

TEST(Disk, SwappedWaveNumbersMapCoefficients) {
  const double omega = 2.0, a = 1.3, b = 2.1, R = 1.0;
  double mu1 = omega * omega / (b * b), lam1 = omega * omega / (a * a) - 2 * mu1;
  double mu2 = omega * omega / (a * a), lam2 = omega * omega / (b * b) - 2 * mu2;
  ElasticMedium m1 = ElasticMedium::make(lam1, mu1, omega);
  ElasticMedium m2 = ElasticMedium::make(lam2, mu2, omega);
  Eigen::Matrix2d P;
  P << 0, 1, -1, 0;
  for (int n : {-3, 1, 4}) {
    ModeCoefficients s1 = coefficients_s(n, R, m1, 0.0);
    ModeCoefficients p2 = coefficients_p(n, R, m2, 0.0);
    CVec2 v1 = mode_matrices(n, R, m1).Q.cast<cplx>() * CVec2(s1.A, s1.B);
    CVec2 v2 = mode_matrices(n, R, m2).Q.cast<cplx>() * CVec2(p2.A, p2.B);
    EXPECT_LT((v2 - P.cast<cplx>() * v1).norm(), 1e-12 * v1.norm()) << n;
  }
}

TEST(Disk, FarFieldTwoRoutes) {
  ElasticMedium m = ElasticMedium::make(2.0, 1.0, 3.0);
  const double R = 1.0;
  DiskSolver disk(R, m, default_truncation(m.ks() * R));
  const cplx pref = std::sqrt(2 / std::numbers::pi) * std::exp(kI * (std::numbers::pi / 4));
  for (double thx : {0.0, 0.9, 2.2}) {
    for (double thd : {0.0, 1.0}) {
      cplx pp = 0, sp = 0, ps = 0, ss = 0;
      for (int n = -disk.nmax(); n <= disk.nmax(); ++n) {
        cplx e = std::pow(kI, -n) * std::exp(kI * (n * thx));
        ModeCoefficients cp = disk.coefficients_p(n, thd);
        ModeCoefficients cs = disk.coefficients_s(n, thd);
        pp += pref * e * cp.A;
        sp += pref * e * cp.B;
        ps += pref * e * cs.A;
        ss += pref * e * cs.B;
      }
      CMat2 U = disk.farfield_matrix(thx - thd);
      EXPECT_LT(std::abs(U(0, 0) - pp), 1e-10);
      EXPECT_LT(std::abs(U(1, 0) - sp), 1e-10);
      EXPECT_LT(std::abs(U(0, 1) - ps), 1e-10);
      EXPECT_LT(std::abs(U(1, 1) - ss), 1e-10);
    }
  }
}

TEST(Disk, FarFieldTruncationConvergence) {
  ElasticMedium m = ElasticMedium::make(1.0, 1.0, 4.0);
  const double R = 1.0;
  const int N = static_cast<int>(std::ceil(m.ks() * R)) + 20;
  for (double th : {0.3, 2.0}) {
    CMat2 a = farfield_matrix(th, R, m, N), b = farfield_matrix(th, R, m, N + 10);
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-12);
  }
  DiskSolver disk(R, m, N);
  EXPECT_LT(disk.tail_magnitude(), 1e-12);
}

TEST(Disk, ScatteredFieldFarLimit) {
  ElasticMedium m = ElasticMedium::make(2.0, 1.0, 3.0);
  const double R = 0.5;
  DiskSolver disk(R, m, default_truncation(m.ks() * R));
  PlaneWaveSpec w{Direction{0.4}, 1.0, 0.5};
  for (double th : {0.1, 2.5}) {
    Vec2 xh(std::cos(th), std::sin(th)), xp(-std::sin(th), std::cos(th));
    CVec2 far = disk_farfield(th, w, Vec2::Zero(), disk);
    double r = 1e3 * R;
    cplx p = std::sqrt(r) * std::exp(-kI * m.kp() * r) * xh.cast<cplx>().dot(disk.scattered_field(r * xh, w));
    EXPECT_LT(std::abs(p - far(0)), 1e-3);
    r = 1e5 * R;
    cplx s = std::sqrt(r) * std::exp(-kI * m.ks() * r) * xp.cast<cplx>().dot(disk.scattered_field(r * xh, w));
    EXPECT_LT(std::abs(s - far(1)), 1e-3);
  }
  EXPECT_THROW(disk.scattered_field(Vec2(0.1, 0.1), w), DomainError);
}

TEST(Disk, RotationInvariance) {
  ElasticMedium m = ElasticMedium::make(2.0, 1.0, 3.0);
  DiskSolver disk(1.0, m, default_truncation(m.ks()));
  PlaneWaveSpec w0{Direction{0.0}, 1.0, 0.3}, w1{Direction{0.8}, 1.0, 0.3};
  CVec2 a = disk_farfield(0.5, w0, Vec2::Zero(), disk);
  CVec2 b = disk_farfield(1.3, w1, Vec2::Zero(), disk);
  EXPECT_LT((a - b).norm(), 1e-13);
}
