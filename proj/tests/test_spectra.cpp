#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "onewave/errors.hpp"
#include "onewave/spectra.hpp"

using namespace onewave;

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

double J(int n, double t) { return std::cyl_bessel_j(static_cast<double>(n), t); }
double Y(int n, double t) { return std::cyl_neumann(static_cast<double>(n), t); }
cplx H(int n, double t) { return {J(n, t), Y(n, t)}; }

// Eigenvalues of H_n^{-1} J_n via trace and determinant, built from std special functions.
std::pair<cplx, cplx> brute_force_eigenvalues(int n, double tp, double ts) {
  auto d = [](auto f, int k, double t) { return t * f(k - 1, t) - double(k) * f(k, t); };  // t C'_k
  cplx hp = H(n, tp), hs = H(n, ts), hpm = H(n - 1, tp), hsm = H(n - 1, ts);
  cplx Hm[2][2] = {{d(H, n, tp), -kI * double(n) * hs}, {kI * double(n) * hp, d(H, n, ts)}};
  double Jm[2][2] = {{d(J, n, tp), 0}, {0, d(J, n, ts)}};
  cplx Jc[2][2] = {{Jm[0][0], -kI * double(n) * J(n, ts)}, {kI * double(n) * J(n, tp), Jm[1][1]}};
  // Expanded forms avoid the leading-order cancellation of t^2 C'C' - n^2 C C.
  double jp = J(n, tp), js = J(n, ts), jp1 = J(n + 1, tp), js1 = J(n + 1, ts);
  double detJ = -n * ts * jp * js1 - n * tp * jp1 * js + tp * ts * jp1 * js1;
  cplx detH = tp * ts * hpm * hsm - double(n) * tp * hpm * hs - double(n) * ts * hp * hsm;
  cplx tr = (Hm[1][1] * Jc[0][0] - Hm[0][1] * Jc[1][0] - Hm[1][0] * Jc[0][1] + Hm[0][0] * Jc[1][1]) / detH;
  cplx det = detJ / detH;
  cplx disc = std::sqrt(tr * tr / 4.0 - det);
  cplx a = tr / 2.0 + disc, b = tr / 2.0 - disc;
  cplx big = std::abs(a) >= std::abs(b) ? a : b;
  return {big, det / big};
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

double rel(const LogScaledComplex& a, const LogScaledComplex& b) {
  LogScaledComplex q = a / b;
  return std::abs(q.value() - 1.0);
}

ElasticMedium medium3() { return ElasticMedium::make(2.0, 1.0, 3.0); }

}  // namespace

TEST(Spectra, BetaMatchesReassembly) {
  const int n = 7;
  const double tp = 1.3, ts = 2.1;
  auto jd = [](int k, double t) { return 0.5 * (J(k - 1, t) - J(k + 1, t)); };
  auto yd = [](int k, double t) { return 0.5 * (Y(k - 1, t) - Y(k + 1, t)); };
  double bracket = n * n * (J(n, ts) * Y(n, tp) - J(n, tp) * Y(n, ts)) +
                   tp * ts * (jd(n, tp) * yd(n, ts) - jd(n, ts) * yd(n, tp));
  cplx expect = kPi / (2.0 * kI * double(n)) * bracket;
  EXPECT_LT(rel(beta_n(n, tp, ts), expect), 1e-10);
  EXPECT_LT(std::abs(beta_n(n, tp, ts).real()), 1e-12 * std::abs(expect));
}

TEST(Spectra, BetaSymmetricDegeneration) {
  for (int n : {1, 3, 8}) EXPECT_LT(std::abs(beta_n(n, 2.0, 2.0)), 1e-10) << n;
}

TEST(Spectra, BetaRejectsZeroOrder) {
  EXPECT_THROW(beta_n(0, 1.0, 2.0), DomainError);
  EXPECT_THROW(sigma_pair(0, 1.0, 2.0), DomainError);
}

TEST(Spectra, SigmaRootsAndProduct) {
  for (auto [tp, ts] : {std::pair{1.5, 3.0}, {0.5, 1.2}, {4.0, 8.0}}) {
    for (int n = 1; n <= 40; ++n) {
      auto [s1, s2] = sigma_pair(n, tp, ts);
      EXPECT_LT(std::abs(s1 * s2 - 1.0), 1e-10) << n;
      cplx b = beta_n(n, tp, ts);
      for (cplx s : {s1, s2}) EXPECT_LT(std::abs(s * s + b * s + 1.0), 1e-10 * (std::abs(s * s) + 1.0)) << n;
      if (n > 2 * ts + 5) EXPECT_LT(std::abs(s1), std::abs(s2)) << n;
    }
  }
}

TEST(Spectra, ClosedFormMatchesBruteForce) {
  for (auto [R, om] : {std::pair{1.0, 3.0}, {0.6, 2.0}, {1.2, 5.0}}) {
    ElasticMedium m = medium3();
    m.omega = om;
    DiskSolver disk(R, m, 31);
    for (int n = 1; n <= 30; ++n) {
      auto pairs = disk_eigensystem(n, disk);
      auto [big, small] = brute_force_eigenvalues(n, disk.tp(), disk.ts());
      for (const auto& p : pairs) {
        cplx l = p.lambda_sigma.value();
        double e = std::min(rel(l, big), rel(l, small));
        EXPECT_LT(e, 1e-10) << "n=" << n << " j=" << p.j << " R=" << R;
      }
      EXPECT_GT(std::abs(pairs[0].lambda_sigma.value() - pairs[1].lambda_sigma.value()),
                1e-6 * std::abs(small));
    }
  }
}

TEST(Spectra, ZeroModeIsDiagonal) {
  ElasticMedium m = medium3();
  DiskSolver disk(1.0, m, 2);
  auto pairs = disk_eigensystem(0, disk);
  cplx l1 = cyl_derivative(CylKind::J, 0, disk.tp()) / cyl_derivative(CylKind::H1, 0, disk.tp());
  cplx l2 = cyl_derivative(CylKind::J, 0, disk.ts()) / cyl_derivative(CylKind::H1, 0, disk.ts());
  EXPECT_LT(rel(pairs[0].lambda_sigma.value(), l1), 1e-12);
  EXPECT_LT(rel(pairs[1].lambda_sigma.value(), l2), 1e-12);
  cplx pref = std::sqrt(8 * kPi / m.omega) * kI;
  EXPECT_LT(rel(pairs[0].lambda_F.value(), pref * l1), 1e-12);
  EXPECT_EQ(pairs[0].X, CVec2(1.0, 0.0));
  EXPECT_EQ(pairs[1].X, CVec2(0.0, 1.0));
}

TEST(Spectra, GeneralizedResidual) {
  for (auto [lam, mu, om, R] : {std::array<double, 4>{2.0, 1.0, 3.0, 1.0}, {1.0, 1.0, 7.0, 0.5},
                                {0.5, 2.0, 1.3, 2.0}, {2.0, 1.0, 10.0, 0.9}}) {
    DiskSolver disk(R, ElasticMedium::make(lam, mu, om), 81);
    for (int n = -80; n <= 80; ++n) {
      for (const auto& p : disk_eigensystem(n, disk)) {
        EXPECT_LT(eigen_residual(p, disk), 1e-9) << "n=" << n << " j=" << p.j;
        EXPECT_NEAR(p.X.norm(), 1.0, 1e-14);
      }
    }
  }
}

TEST(Spectra, NegativeOrderSymmetry) {
  DiskSolver disk(1.0, medium3(), 20);
  for (int n = 1; n <= 20; ++n) {
    auto pos = disk_eigensystem(n, disk), neg = disk_eigensystem(-n, disk);
    for (int j = 0; j < 2; ++j) {
      EXPECT_LT(rel(neg[j].lambda_sigma, pos[j].lambda_sigma), 1e-12);
      EXPECT_LT(std::abs(neg[j].sigma + pos[j].sigma), 1e-12 * std::abs(pos[j].sigma));
    }
  }
}

TEST(Spectra, YGeneralizedRelation) {
  DiskSolver disk(1.0, medium3(), 16);
  for (int n = 0; n <= 15; ++n) {
    ModeMatrices mm = disk.mode_matrices(n);
    Eigen::ComplexEigenSolver<CMat2> es(mm.Yn.inverse() * mm.Jn);
    for (const auto& p : disk_eigensystem(n, disk)) {
      cplx l = p.lambda_sigma.value();
      double best = 1.0;
      for (int k = 0; k < 2; ++k) {
        cplx eta = es.eigenvalues()(k);
        best = std::min(best, rel(eta / (eta + kI), l));
      }
      EXPECT_LT(best, 1e-10) << n;
    }
  }
}

TEST(Spectra, ProjectedEigenvalueMatchesReassembly) {
  ElasticMedium m = medium3();
  DiskSolver disk(1.0, m, 21);
  cplx pref = std::sqrt(8 * kPi / m.omega) * kI;
  for (int n = 1; n <= 20; ++n) {
    auto pairs = disk_eigensystem(n, disk);
    auto ps = ps_spectra(n, disk);
    // Sigma_n = V diag(lambda) V^{-1} with V = [X_1 X_2].
    CMat2 V;
    V.col(0) = pairs[0].X;
    V.col(1) = pairs[1].X;
    double scale = std::abs(pairs[1].lambda_sigma.value());
    Eigen::Vector2cd lam(pairs[0].lambda_sigma.value() / scale, pairs[1].lambda_sigma.value() / scale);
    CMat2 sig = V * lam.asDiagonal() * V.inverse() * scale;
    EXPECT_LT(rel(ps[0].eta.value(), pref * sig(0, 0)), 1e-9) << n;
    EXPECT_LT(rel(ps[1].eta.value(), pref * sig(1, 1)), 1e-9) << n;
    EXPECT_EQ(ps[0].channel, Channel::P);
    EXPECT_EQ(ps[1].channel, Channel::S);
    cplx ff = std::sqrt(2 / (kPi * m.kp())) * std::exp(kI * kPi / 4.0) * kI * sig(0, 0);
    EXPECT_LT(rel(ps[0].farfield_coefficient.value(), ff), 1e-9) << n;
  }
}

TEST(Spectra, LambdaSharpPositive) {
  DiskSolver disk(1.0, medium3(), 61);
  for (int n = 0; n <= 60; ++n) {
    for (const auto& p : ps_spectra(n, disk)) {
      EXPECT_TRUE(std::isfinite(p.log_lambda_sharp)) << n;
      cplx e = p.eta.value();
      if (std::abs(e) > 1e-280) {
        EXPECT_GT(p.lambda_sharp(), 0.0);
        EXPECT_GE(p.lambda_sharp() * (1 + 1e-14), std::max(std::abs(e.real()), std::abs(e.imag())));
      }
    }
  }
}

namespace {

// |r(n) - c| decays like C/n over [20, 60].
void expect_converges(const std::function<double(int)>& ratio, double c, const char* what) {
  double first = std::abs(ratio(20) - c), last = std::abs(ratio(60) - c);
  EXPECT_LT(last, first) << what;
  for (int n = 20; n <= 60; n += 5) EXPECT_LT(n * std::abs(ratio(n) - c), 20.0 * c) << what << " n=" << n;
}

}  // namespace

TEST(Spectra, Asymptotics) {
  ElasticMedium m = medium3();
  DiskSolver disk(1.0, m, 61);
  const double tp = disk.tp(), ts = disk.ts();
  auto pair_ratio = [&](int j, bool use_lambda) {
    return [&, j, use_lambda](int n) {
      auto p = disk_eigensystem(n, disk)[j];
      if (use_lambda) {
        auto a = j == 0 ? asymptotic::lambda_F1(n, tp, ts, m.omega) : asymptotic::lambda_F2(n, tp, ts, m.omega);
        return ((p.lambda_F / a).value()).real();
      }
      auto a = j == 0 ? asymptotic::sigma1(n, tp, ts) : asymptotic::sigma2(n, tp, ts);
      return ((LogScaledComplex::from(p.sigma) / a).value()).real();
    };
  };
  expect_converges([&](int n) { return (LogScaledComplex::from(beta_n(n, tp, ts)) /
                                        asymptotic::beta(n, tp, ts)).value().real(); },
                   1.0, "beta");
  expect_converges(pair_ratio(0, false), 1.0, "sigma1");
  expect_converges(pair_ratio(1, false), 1.0, "sigma2");
  const double q = tp * tp + ts * ts;
  expect_converges(pair_ratio(0, true), q / (2 * tp * tp), "lambda1");
  expect_converges(pair_ratio(1, true), 2 * tp * tp / q, "lambda2");
  const double sharp_const = 4 * kPi * std::sqrt(2 * m.kp() / m.omega);
  expect_converges([&](int n) { return std::exp(ps_spectra(n, disk)[0].log_lambda_sharp -
                                                asymptotic::log_lambda_sharp_p(n, tp, ts, m.kp())); },
                   sharp_const, "lambda_sharp_p");
}

TEST(Spectra, TranslationKeepsEigenvaluesAndModulus) {
  ElasticMedium m = medium3();
  DiskSolver disk(0.7, m, 12);
  Vec2 z(0.3, -0.8);
  for (int n = -10; n <= 10; ++n) {
    for (const auto& p : disk_eigensystem(n, disk)) {
      DiskSpectralPair same = translated_spectra(p, Vec2::Zero());
      DiskSpectralPair t = translated_spectra(p, z);
      EXPECT_EQ(t.lambda_F.log_magnitude, p.lambda_F.log_magnitude);
      EXPECT_EQ(t.lambda_F.phase_factor, p.lambda_F.phase_factor);
      for (double th : {0.0, 0.9, 2.5, 4.1}) {
        EXPECT_EQ(eigenfunction(same, th, m), eigenfunction(p, th, m));
        CVec2 a = eigenfunction(t, th, m), b = eigenfunction(p, th, m);
        EXPECT_NEAR(std::abs(a(0)), std::abs(b(0)), 1e-13);
        EXPECT_NEAR(std::abs(a(1)), std::abs(b(1)), 1e-13);
      }
    }
    for (const auto& p : ps_spectra(n, disk)) {
      PSSpectralPair t = translated_spectra(p, z);
      EXPECT_EQ(t.eta.log_magnitude, p.eta.log_magnitude);
      EXPECT_NEAR(std::abs(eigenfunction(t, 1.3, m)), 1.0, 1e-14);
      double k = p.channel == Channel::P ? m.kp() : m.ks();
      Vec2 xh(std::cos(1.3), std::sin(1.3));
      cplx expect = std::exp(kI * (n * 1.3)) * std::exp(-kI * k * z.dot(xh));
      EXPECT_LT(std::abs(eigenfunction(t, 1.3, m) - expect), 1e-13);
    }
  }
}

TEST(Spectra, QuadratureOrthogonality) {
  ElasticMedium m = medium3();
  DiskSolver disk(1.0, m, 12);
  const int M = 64;
  auto inner = [&](const DiskSpectralPair& a, const DiskSpectralPair& b) {
    cplx s = 0;
    for (int k = 0; k < M; ++k) {
      double th = 2 * kPi * k / M;
      s += eigenfunction(a, th, m).dot(eigenfunction(b, th, m));
    }
    return std::conj(s) * (2 * kPi / M);
  };
  for (int n = -6; n <= 6; ++n) {
    auto pn = disk_eigensystem(n, disk);
    for (int l = -6; l <= 6; ++l) {
      auto pl = disk_eigensystem(l, disk);
      for (const auto& a : pn)
        for (const auto& b : pl) {
          cplx v = inner(a, b);
          if (n != l) {
            EXPECT_LT(std::abs(v), 1e-12) << n << " " << l;
          } else {
            cplx g = 2 * kPi * (m.kp() * a.X(0) * std::conj(b.X(0)) + m.ks() * a.X(1) * std::conj(b.X(1)));
            EXPECT_LT(std::abs(v - g), 1e-12 * std::abs(2 * kPi * m.ks())) << n;
          }
        }
    }
  }
}

TEST(Spectra, CachedSpectrumMatchesFreeFunctions) {
  ElasticMedium m = medium3();
  DiskSpectrum spec(0.8, m, 25);
  for (int n = -25; n <= 25; ++n) {
    auto a = disk_eigensystem(n, 0.8, m);
    for (int j = 0; j < 2; ++j) {
      EXPECT_LT(rel(spec.pairs(n)[j].lambda_F, a[j].lambda_F), 1e-12);
      EXPECT_EQ(spec.pairs(n)[j].j, j + 1);
      EXPECT_EQ(spec.ps(n)[j].n, n);
    }
  }
  EXPECT_THROW(spec.pairs(26), DomainError);
}
