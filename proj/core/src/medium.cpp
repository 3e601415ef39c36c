#include "onewave/medium.hpp"

#include <cmath>
#include <numbers>

#include "onewave/errors.hpp"

namespace onewave {

namespace {

constexpr cplx kI{0.0, 1.0};

struct RadialHankel {
  cplx h0, h1;
};

RadialHankel radial_hankel(double kr) {
  CylinderTable tab(kr, 1);
  return {tab.h(0).value(), tab.h(1).value()};
}

// t H_1^(1)(t) + 2i/pi by its power series, for t below about 1.
cplx regular_t_h1(double t) {
  constexpr double kEuler = 0.57721566490153286061;
  const double q = t / 2, q2 = q * q;
  double term = q;  // (t/2)^{2k+1} / (k! (k+1)!)
  double psi_sum = 1.0 - 2 * kEuler;  // psi(k+1) + psi(k+2)
  double j1 = 0.0, tail = 0.0;
  for (int k = 0; k < 40; ++k) {
    const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
    j1 += sgn * term;
    tail += sgn * psi_sum * term;
    if (std::abs(term) < 1e-18 * std::abs(j1)) break;
    term *= q2 / ((k + 1.0) * (k + 2.0));
    psi_sum += 1.0 / (k + 1) + 1.0 / (k + 2);
  }
  const double pi = std::numbers::pi;
  const double y_part = (2 / pi) * t * j1 * std::log(q) - (t / pi) * tail;
  return {t * j1, y_part};
}

// t H_1^(1)(t) + 2i/pi, finite at t = 0.
cplx regular_part(double t, cplx h1) {
  if (t < 1.0) return regular_t_h1(t);
  return t * h1 + cplx(0.0, 2 / std::numbers::pi);
}

// Radial pieces of the Kupradze tensor with the r^{-2} and r^{-3} singularities cancelled analytically.
struct KupradzeRadial {
  cplx h0s, h1s;
  cplx P;  // D_s - D_p
  cplx Q;  // k_s^2 H_0(k_s r) - k_p^2 H_0(k_p r)
  cplx S;  // k_s^2 D_s - k_p^2 D_p - (2i/pi)(k_s^2 - k_p^2)
};

KupradzeRadial kupradze_radial(double r, const ElasticMedium& m) {
  const double kp = m.kp(), ks = m.ks();
  RadialHankel hp = radial_hankel(kp * r), hs = radial_hankel(ks * r);
  const cplx dp = regular_part(kp * r, hp.h1), ds = regular_part(ks * r, hs.h1);
  KupradzeRadial k;
  k.h0s = hs.h0;
  k.h1s = hs.h1;
  k.P = ds - dp;
  k.Q = ks * ks * hs.h0 - kp * kp * hp.h0;
  k.S = ks * ks * ds - kp * kp * dp - cplx(0.0, 2 / std::numbers::pi) * (ks * ks - kp * kp);
  return k;
}

}  // namespace

ElasticMedium ElasticMedium::make(double lambda, double mu, double omega) {
  ElasticMedium m{lambda, mu, omega};
  m.validate();
  return m;
}

void ElasticMedium::validate() const {
  if (!(std::isfinite(lambda) && std::isfinite(mu) && std::isfinite(omega)))
    throw DomainError("medium parameters must be finite");
  if (!(mu > 0)) throw DomainError("medium requires mu > 0");
  if (!(lambda + 2 * mu > 0)) throw DomainError("medium requires lambda + 2 mu > 0");
  if (!(omega > 0)) throw DomainError("medium requires omega > 0");
}

double ElasticMedium::kp() const { return omega / std::sqrt(lambda + 2 * mu); }
double ElasticMedium::ks() const { return omega / std::sqrt(mu); }

Vec2 Direction::d() const { return {std::cos(theta), std::sin(theta)}; }
Vec2 Direction::perp() const { return {-std::sin(theta), std::cos(theta)}; }

void PlaneWaveSpec::validate() const {
  if (std::abs(c_p) + std::abs(c_s) == 0.0) throw DomainError("plane wave needs c_p or c_s nonzero");
  if (!std::isfinite(direction.theta)) throw DomainError("plane wave direction must be finite");
}

CVec2 plane_wave(const Vec2& x, const PlaneWaveSpec& w, const ElasticMedium& m) {
  Vec2 d = w.direction.d();
  double xd = x.dot(d);
  return w.c_p * std::exp(kI * m.kp() * xd) * d.cast<cplx>() +
         w.c_s * std::exp(kI * m.ks() * xd) * w.direction.perp().cast<cplx>();
}

CMat2 kupradze_tensor(const Vec2& x, const Vec2& y, const ElasticMedium& m) {
  Vec2 rv = x - y;
  double r = rv.norm();
  if (r == 0.0) throw DomainError("Kupradze tensor undefined at coincident points");
  const KupradzeRadial k = kupradze_radial(r, m);
  // Hess H_0(k r) = -k^2 H_0 ee + (k H_1 / r)(2 ee - I)
  const Vec2 e = rv / r;
  const CMat2 ee = (e * e.transpose()).cast<cplx>();
  CMat2 g = (kI / (4.0 * m.mu)) * k.h0s * CMat2::Identity();
  g += (kI / (4.0 * m.omega * m.omega)) * (-k.Q * ee + (k.P / (r * r)) * (2.0 * ee - CMat2::Identity()));
  return g;
}

std::array<CMat2, 2> kupradze_gradient(const Vec2& x, const Vec2& y, const ElasticMedium& m) {
  Vec2 rv = x - y;
  double r = rv.norm();
  if (r == 0.0) throw DomainError("Kupradze tensor undefined at coincident points");
  const KupradzeRadial k = kupradze_radial(r, m);
  const Vec2 e = rv / r;
  const double r2 = r * r, r3 = r2 * r;
  const cplx A = -k.Q + 2.0 * k.P / r2;
  const cplx Bp = -k.Q / r + 2.0 * k.P / r3;
  const cplx C = k.S / r + 4.0 * k.Q / r - 8.0 * k.P / r3;
  const cplx alpha = kI / (4.0 * m.mu), beta = kI / (4.0 * m.omega * m.omega);
  const cplx id = alpha * (-m.ks() * k.h1s) + beta * Bp;
  std::array<CMat2, 2> g;
  for (int c = 0; c < 2; ++c)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        cplx v = beta * (C * e(a) * e(b) * e(c) + (A / r) * ((a == c) * e(b) + (b == c) * e(a)));
        if (a == b) v += id * e(c);
        g[c](a, b) = v;
      }
  return g;
}

CMat2 point_source_farfield_map(double theta_x, const Vec2& y, const ElasticMedium& m) {
  Vec2 xh(std::cos(theta_x), std::sin(theta_x));
  Vec2 xp(-xh.y(), xh.x());
  const double w2 = m.omega * m.omega;
  const cplx e4 = std::exp(kI * (std::numbers::pi / 4));
  cplx cp = (m.kp() * m.kp() / w2) * e4 / std::sqrt(8 * std::numbers::pi * m.kp()) *
            std::exp(-kI * m.kp() * xh.dot(y));
  cplx cs = (m.ks() * m.ks() / w2) * e4 / std::sqrt(8 * std::numbers::pi * m.ks()) *
            std::exp(-kI * m.ks() * xh.dot(y));
  CMat2 out;
  out.row(0) = cp * xh.transpose().cast<cplx>();
  out.row(1) = cs * xp.transpose().cast<cplx>();
  return out;
}

PointSourceFarField point_source_farfield(double theta_x, const Vec2& y, const Vec2& a,
                                          const ElasticMedium& m) {
  CVec2 ps = point_source_farfield_map(theta_x, y, m) * a.cast<cplx>();
  Vec2 xh(std::cos(theta_x), std::sin(theta_x));
  Vec2 xp(-xh.y(), xh.x());
  return {ps(0) * xh.cast<cplx>() + ps(1) * xp.cast<cplx>(), ps(0), ps(1)};
}

}  // namespace onewave
