#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "onewave/errors.hpp"
#include "onewave/medium.hpp"

using namespace onewave;

namespace {

const ElasticMedium kMedium = ElasticMedium::make(2.0, 1.0, 3.0);

template <class F>
CVec2 navier_residual(F u, const Vec2& x, double h, const ElasticMedium& m) {
  auto at = [&](double dx, double dy) { return u(Vec2(x.x() + dx, x.y() + dy)); };
  CVec2 c = at(0, 0);
  CVec2 uxx = (at(h, 0) - 2.0 * c + at(-h, 0)) / (h * h);
  CVec2 uyy = (at(0, h) - 2.0 * c + at(0, -h)) / (h * h);
  CVec2 uxy = (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4 * h * h);
  CVec2 lap = uxx + uyy;
  CVec2 graddiv(uxx(0) + uxy(1), uxy(0) + uyy(1));
  return m.mu * lap + (m.lambda + m.mu) * graddiv + m.omega * m.omega * c;
}

template <class F>
std::pair<cplx, cplx> div_curl(F u, const Vec2& x, double h) {
  CVec2 xp = u(Vec2(x.x() + h, x.y())), xm = u(Vec2(x.x() - h, x.y()));
  CVec2 yp = u(Vec2(x.x(), x.y() + h)), ym = u(Vec2(x.x(), x.y() - h));
  cplx div = (xp(0) - xm(0) + yp(1) - ym(1)) / (2 * h);
  cplx curl = (xp(1) - xm(1) - yp(0) + ym(0)) / (2 * h);
  return {div, curl};
}

}  // namespace

TEST(Medium, WaveNumbers) {
  EXPECT_DOUBLE_EQ(kMedium.kp(), 3.0 / 2.0);
  EXPECT_DOUBLE_EQ(kMedium.ks(), 3.0);
  EXPECT_THROW(ElasticMedium::make(1.0, 0.0, 1.0), DomainError);
  EXPECT_THROW(ElasticMedium::make(-3.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(ElasticMedium::make(1.0, 1.0, 0.0), DomainError);
  ElasticMedium weird = ElasticMedium::make(-1.5, 1.0, 1.0);
  EXPECT_GT(weird.kp(), weird.ks());
}

TEST(Medium, DirectionIsOrthonormal) {
  for (double th : {0.0, 0.3, 2.0, 5.9}) {
    Direction d{th};
    EXPECT_NEAR(d.d().norm(), 1.0, 1e-15);
    EXPECT_NEAR(d.d().dot(d.perp()), 0.0, 1e-15);
    EXPECT_NEAR(d.perp().x(), -std::sin(th), 1e-15);
  }
}

TEST(Medium, PlaneWaveAtOrigin) {
  PlaneWaveSpec w{Direction{0.7}, cplx(1.0, 2.0), cplx(-0.5, 0.3)};
  CVec2 u = plane_wave(Vec2::Zero(), w, kMedium);
  CVec2 expect = w.c_p * w.direction.d().cast<cplx>() + w.c_s * w.direction.perp().cast<cplx>();
  EXPECT_LT((u - expect).norm(), 1e-15);
  PlaneWaveSpec none{Direction{0.0}, 0.0, 0.0};
  EXPECT_THROW(none.validate(), DomainError);
}

TEST(Medium, PlaneWaveHodgeParts) {
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 5; ++k) {
    Vec2 x(u(gen), u(gen));
    PlaneWaveSpec wp{Direction{0.4 + k}, 1.0, 0.0};
    PlaneWaveSpec ws{Direction{0.4 + k}, 0.0, 1.0};
    auto fp = [&](const Vec2& y) { return plane_wave(y, wp, kMedium); };
    auto fs = [&](const Vec2& y) { return plane_wave(y, ws, kMedium); };
    EXPECT_LT(std::abs(div_curl(fp, x, 1e-5).second), 1e-8);
    EXPECT_GT(std::abs(div_curl(fp, x, 1e-5).first), 0.1);
    EXPECT_LT(std::abs(div_curl(fs, x, 1e-5).first), 1e-8);
    PlaneWaveSpec wf{Direction{1.1 * k}, cplx(0.3, 1.0), cplx(1.0, -0.2)};
    auto ff = [&](const Vec2& y) { return plane_wave(y, wf, kMedium); };
    EXPECT_LT(navier_residual(ff, x, 1e-4, kMedium).norm(), 1e-6);
  }
}

TEST(Medium, KupradzeSymmetry) {
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 10; ++k) {
    Vec2 x(u(gen), u(gen)), y(u(gen), u(gen));
    CMat2 g = kupradze_tensor(x, y, kMedium);
    EXPECT_LT((g - g.transpose()).norm(), 1e-12 * g.norm());
    EXPECT_LT((g - kupradze_tensor(y, x, kMedium)).norm(), 1e-12 * g.norm());
  }
  EXPECT_THROW(kupradze_tensor(Vec2(1, 1), Vec2(1, 1), kMedium), DomainError);
}

TEST(Medium, KupradzeSolvesNavier) {
  Vec2 y(0.2, -0.1);
  for (double th : {0.1, 1.3, 2.9, 4.4}) {
    Vec2 x = y + Vec2(std::cos(th), std::sin(th));
    for (int col = 0; col < 2; ++col) {
      auto f = [&](const Vec2& p) { return CVec2(kupradze_tensor(p, y, kMedium).col(col)); };
      EXPECT_LT(navier_residual(f, x, 1e-3, kMedium).norm(), 1e-4);
    }
  }
}

TEST(Medium, KupradzeStaticLimit) {
  // Gamma(r) - Gamma(2r) tends to the Kelvin difference (lambda + 3 mu) ln 2 / (4 pi mu (lambda + 2 mu)) I
  const double l = kMedium.lambda, mu = kMedium.mu;
  const CMat2 expect = CMat2::Identity() * ((l + 3 * mu) * std::log(2.0) / (4 * std::numbers::pi * mu * (l + 2 * mu)));
  Vec2 y(0.4, 0.1), e(std::cos(0.7), std::sin(0.7));
  for (double r : {1e-4, 1e-7, 1e-10}) {
    CMat2 d = kupradze_tensor(y + r * e, y, kMedium) - kupradze_tensor(y + 2 * r * e, y, kMedium);
    EXPECT_LT((d - expect).norm(), 1e-6) << r;
  }
}

TEST(Medium, KupradzeContinuousInRadius) {
  Vec2 y(0.0, 0.0), e(std::cos(0.3), std::sin(0.3));
  const double k = std::max(kMedium.kp(), kMedium.ks());
  for (double t : {0.5, 1.0, 2.0}) {
    const double r = t / k, h = 1e-9 * r;
    CMat2 a = kupradze_tensor((r - h) * e, y, kMedium), b = kupradze_tensor((r + h) * e, y, kMedium);
    EXPECT_LT((a - b).norm(), 1e-8 * a.norm()) << t;
  }
}

TEST(Medium, KupradzeGradientMatchesDifferences) {
  Vec2 y(0.1, -0.2);
  for (double r : {2.0, 0.3, 1e-3, 1e-6}) {
    for (double th : {0.2, 2.4}) {
      Vec2 x = y + r * Vec2(std::cos(th), std::sin(th));
      auto g = kupradze_gradient(x, y, kMedium);
      const double h = 1e-5 * r;
      for (int c = 0; c < 2; ++c) {
        Vec2 dx = Vec2::Zero();
        dx(c) = h;
        CMat2 fd = (kupradze_tensor(x + dx, y, kMedium) - kupradze_tensor(x - dx, y, kMedium)) / (2 * h);
        EXPECT_LT((g[c] - fd).norm(), 1e-6 * g[c].norm()) << r;
      }
    }
  }
}

TEST(Medium, KupradzeFarFieldLimit) {
  Vec2 y(0.3, -0.4);
  Vec2 a(std::cos(0.9), std::sin(0.9));
  const double r = 500.0;
  for (double th : {0.0, 1.0, 2.5}) {
    Vec2 xh(std::cos(th), std::sin(th));
    CVec2 v = kupradze_tensor(r * xh, y, kMedium) * a.cast<cplx>();
    PointSourceFarField ff = point_source_farfield(th, y, a, kMedium);
    cplx p = std::sqrt(r) * std::exp(cplx(0, -kMedium.kp() * r)) * xh.cast<cplx>().dot(v);
    Vec2 xp(-xh.y(), xh.x());
    cplx s = std::sqrt(r) * std::exp(cplx(0, -kMedium.ks() * r)) * xp.cast<cplx>().dot(v);
    EXPECT_LT(std::abs(p - ff.p_part), 1e-3);
    EXPECT_LT(std::abs(s - ff.s_part), 1e-3);
  }
}

TEST(Medium, PointSourceFarFieldStructure) {
  Vec2 a(1.0, 0.0);
  const double amp = kMedium.kp() * kMedium.kp() / (kMedium.omega * kMedium.omega) /
                     std::sqrt(8 * std::numbers::pi * kMedium.kp());
  for (double th : {0.0, 0.8, 2.0, 4.0}) {
    PointSourceFarField ff = point_source_farfield(th, Vec2::Zero(), a, kMedium);
    EXPECT_NEAR(std::abs(ff.p_part), amp * std::abs(std::cos(th)), 1e-15);
    EXPECT_LT(std::abs(ff.p_part - amp * std::exp(cplx(0, std::numbers::pi / 4)) * std::cos(th)), 1e-15);
  }
  PointSourceFarField perp = point_source_farfield(0.0, Vec2(0.3, 0.2), Vec2(0.0, 1.0), kMedium);
  EXPECT_EQ(perp.p_part, cplx(0.0, 0.0));
  double th = 1.234;
  PointSourceFarField g = point_source_farfield(th, Vec2(-0.7, 0.5), Vec2(0.6, 0.8), kMedium);
  Vec2 xh(std::cos(th), std::sin(th)), xp(-std::sin(th), std::cos(th));
  CVec2 re = g.p_part * xh.cast<cplx>() + g.s_part * xp.cast<cplx>();
  EXPECT_LT((re - g.full).norm(), 1e-14);
  CVec2 ps = point_source_farfield_map(th, Vec2(-0.7, 0.5), kMedium) * Vec2(0.6, 0.8).cast<cplx>();
  EXPECT_LT(std::abs(ps(0) - g.p_part) + std::abs(ps(1) - g.s_part), 1e-15);
}
