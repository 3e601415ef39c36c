#include "onewave/disk.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "onewave/errors.hpp"
#include "onewave/util.hpp"

namespace onewave {

namespace {

constexpr cplx kI{0.0, 1.0};
using LS = LogScaledComplex;
using LSVec = std::array<LS, 2>;

double log_sum_abs(const LS& a, const LS& b) {
  if (a.is_zero()) return b.log_magnitude;
  if (b.is_zero()) return a.log_magnitude;
  double hi = std::max(a.log_magnitude, b.log_magnitude);
  double lo = std::min(a.log_magnitude, b.log_magnitude);
  return hi + std::log1p(std::exp(lo - hi));
}

cplx scaled_value(const LS& v, double log_scale) {
  if (v.is_zero()) return {0.0, 0.0};
  return std::exp(v.log_magnitude - log_scale) * v.phase_factor;
}

// Columns (t_p C'_n(t_p), i n C_n(t_p)) and (-i n C_n(t_s), t_s C'_n(t_s)).
std::array<LSVec, 2> mode_columns(const CylinderTable& tp, const CylinderTable& ts, CylKind kind, int n) {
  const cplx in(0.0, static_cast<double>(n));
  LSVec c0{tp.d(kind, n) * cplx(tp.t(), 0.0), tp.f(kind, n) * in};
  LSVec c1{ts.f(kind, n) * (-in), ts.d(kind, n) * cplx(ts.t(), 0.0)};
  return {c0, c1};
}

void scale_columns(const std::array<LSVec, 2>& cols, CMat2& hat, std::array<double, 2>& logs) {
  for (int c = 0; c < 2; ++c) {
    logs[c] = log_sum_abs(cols[c][0], cols[c][1]);
    for (int r = 0; r < 2; ++r) hat(r, c) = scaled_value(cols[c][r], logs[c]);
  }
}

CMat2 inverse2(const CMat2& a, int n) {
  cplx det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  double size = a.cwiseAbs2().sum();
  if (std::abs(det) <= 1e-14 * size) {
    std::ostringstream os;
    os << "mode matrix H_" << n << " is numerically singular";
    throw NumericFailure(os.str());
  }
  CMat2 inv;
  inv << a(1, 1), -a(0, 1), -a(1, 0), a(0, 0);
  return inv / det;
}

}  // namespace

int default_truncation(double ts) { return std::min(static_cast<int>(std::ceil(ts)) + 30, 120); }

DiskSolver::DiskSolver(double R, const ElasticMedium& m, int nmax)
    : R_(R), m_(m), nmax_(nmax), tp_(m.kp() * R), ts_(m.ks() * R),
      tab_p_((m.validate(), R > 0 ? tp_ : 1.0), nmax + 1), tab_s_(R > 0 ? ts_ : 1.0, nmax + 1) {
  if (!(R > 0) || !std::isfinite(R)) throw DomainError("disk radius must be positive");
  if (nmax < 0) throw DomainError("truncation must be nonnegative");
  farfield_modes_.resize(2 * nmax + 1);
  const double kp = m.kp(), ks = m.ks();
  const std::array<double, 2> k{kp, ks};
  for (int n = -nmax; n <= nmax; ++n) {
    LogMat2 s = sigma(n);
    CMat2 f;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) f(a, b) = (s[a][b] * cplx(std::sqrt(k[a]) / k[b], 0.0)).value();
    farfield_modes_[n + nmax] = f;
  }
}

ModeMatrices DiskSolver::mode_matrices(int n) const {
  ModeMatrices out;
  out.n = n;
  out.tp = tp_;
  out.ts = ts_;
  auto fill = [&](CylKind kind) {
    auto cols = mode_columns(tab_p_, tab_s_, kind, n);
    CMat2 mat;
    for (int c = 0; c < 2; ++c)
      for (int r = 0; r < 2; ++r) mat(r, c) = cols[c][r].value();
    return mat;
  };
  out.Jn = fill(CylKind::J);
  out.Yn = fill(CylKind::Y);
  out.Hn = out.Jn + kI * out.Yn;
  out.Q << 1.0 / std::sqrt(m_.kp()), 0.0, 0.0, 1.0 / std::sqrt(m_.ks());
  return out;
}

ScaledModeMatrices DiskSolver::scaled_mode_matrices(int n) const {
  ScaledModeMatrices out;
  out.n = n;
  scale_columns(mode_columns(tab_p_, tab_s_, CylKind::H1, n), out.Hhat, out.h_log);
  scale_columns(mode_columns(tab_p_, tab_s_, CylKind::J, n), out.Jhat, out.j_log);
  return out;
}

LS DiskSolver::mode_determinant(CylKind kind, int n) const {
  const CylinderTable& p = tab_p_;
  const CylinderTable& s = tab_s_;
  const int a = std::abs(n);
  const cplx na(a, 0.0);
  const cplx tt(tp_ * ts_, 0.0);
  LS cp = p.f(kind, a), cs = s.f(kind, a);
  if (kind == CylKind::J) {
    // t J'_n = n J_n - t J_{n+1}
    LS cp1 = p.f(kind, a + 1), cs1 = s.f(kind, a + 1);
    return cp1 * cs1 * tt - cp * cs1 * (na * ts_) - cp1 * cs * (na * tp_);
  }
  // t C'_n = t C_{n-1} - n C_n
  LS cpm = p.f(kind, a - 1), csm = s.f(kind, a - 1);
  return cpm * csm * tt - cpm * cs * (na * tp_) - cp * csm * (na * ts_);
}

LogMat2 DiskSolver::sigma(int n) const {
  LS det = mode_determinant(CylKind::H1, n);
  if (det.is_zero()) {
    std::ostringstream os;
    os << "mode matrix H_" << n << " is singular";
    throw NumericFailure(os.str());
  }
  const CylinderTable& p = tab_p_;
  const CylinderTable& s = tab_s_;
  const cplx nn(double(n) * n, 0.0);
  const cplx tt(tp_ * ts_, 0.0);
  // Adjugate of H_n times J_n; off-diagonals reduce through the Wronskian J Y' - J' Y = 2 / (pi t).
  LS off = LS::from(cplx(2.0 * n / std::numbers::pi, 0.0));
  LogMat2 out;
  out[0][0] = (s.hd(n) * p.jd(n) * tt - s.h(n) * p.j(n) * nn) / det;
  out[1][1] = (p.hd(n) * s.jd(n) * tt - p.h(n) * s.j(n) * nn) / det;
  out[0][1] = n == 0 ? LS::zero() : off / det;
  out[1][0] = n == 0 ? LS::zero() : -off / det;
  return out;
}

namespace {

// Q^{-1} H_n^{-1} rhs * R i^n e^{-i n theta_d}, log-scaled.
LSVec solve_coefficients(const DiskSolver& disk, int n, const LSVec& rhs, double theta_d) {
  ScaledModeMatrices s = disk.scaled_mode_matrices(n);
  double rl = log_sum_abs(rhs[0], rhs[1]);
  CVec2 rh(scaled_value(rhs[0], rl), scaled_value(rhs[1], rl));
  CVec2 v = inverse2(s.Hhat, n) * rh;
  const std::array<double, 2> k{disk.medium().kp(), disk.medium().ks()};
  cplx phase = std::pow(kI, n) * std::exp(-kI * (n * theta_d)) * disk.radius();
  LSVec out;
  for (int a = 0; a < 2; ++a) {
    LS c = LS::from(v(a) * phase * std::sqrt(k[a]));
    if (!c.is_zero()) c.log_magnitude += rl - s.h_log[a];
    out[a] = c;
  }
  return out;
}

LSVec rhs_p(const DiskSolver& disk, int n) {
  const CylinderTable& tp = disk.table_p();
  return {tp.jd(n) * kI, tp.j(n) * cplx(-n / tp.t(), 0.0)};
}

LSVec rhs_s(const DiskSolver& disk, int n) {
  const CylinderTable& ts = disk.table_s();
  return {ts.j(n) * cplx(n / ts.t(), 0.0), ts.jd(n) * kI};
}

}  // namespace

ModeCoefficients DiskSolver::coefficients_p(int n, double theta_d) const {
  LSVec c = solve_coefficients(*this, n, rhs_p(*this, n), theta_d);
  return {n, c[0].value(), c[1].value()};
}

ModeCoefficients DiskSolver::coefficients_s(int n, double theta_d) const {
  LSVec c = solve_coefficients(*this, n, rhs_s(*this, n), theta_d);
  return {n, c[0].value(), c[1].value()};
}

CMat2 DiskSolver::farfield_matrix(double theta) const {
  CMat2 sum = CMat2::Zero();
  for (int n = -nmax_; n <= nmax_; ++n) sum += farfield_modes_[n + nmax_] * std::exp(kI * (n * theta));
  return std::sqrt(2.0 / std::numbers::pi) * std::exp(kI * (std::numbers::pi / 4)) * kI * sum;
}

double DiskSolver::tail_magnitude() const {
  double pref = std::sqrt(2.0 / std::numbers::pi);
  return pref * std::max(farfield_modes_.front().cwiseAbs().maxCoeff(),
                         farfield_modes_.back().cwiseAbs().maxCoeff());
}

CVec2 DiskSolver::scattered_field(const Vec2& x, const PlaneWaveSpec& w) const {
  w.validate();
  const double r = x.norm();
  if (r < R_ * (1 - 1e-12)) throw DomainError("scattered field requested inside the disk");
  const double theta = std::atan2(x.y(), x.x());
  CylinderTable tp(m_.kp() * r, nmax_ + 1), ts(m_.ks() * r, nmax_ + 1);
  const std::array<double, 2> q{1.0 / std::sqrt(m_.kp()), 1.0 / std::sqrt(m_.ks())};
  cplx nu = 0, tau = 0;
  for (int n = -nmax_; n <= nmax_; ++n) {
    LSVec cp = solve_coefficients(*this, n, rhs_p(*this, n), w.direction.theta);
    LSVec cs = solve_coefficients(*this, n, rhs_s(*this, n), w.direction.theta);
    LSVec c{cp[0] * w.c_p + cs[0] * w.c_s, cp[1] * w.c_p + cs[1] * w.c_s};
    auto cols = mode_columns(tp, ts, CylKind::H1, n);
    cplx e = std::exp(kI * (n * theta)) / r;
    nu += ((cols[0][0] * c[0] * q[0]) + (cols[1][0] * c[1] * q[1])).value() * e;
    tau += ((cols[0][1] * c[0] * q[0]) + (cols[1][1] * c[1] * q[1])).value() * e;
  }
  Vec2 xh(std::cos(theta), std::sin(theta)), xp(-std::sin(theta), std::cos(theta));
  return nu * xh.cast<cplx>() + tau * xp.cast<cplx>();
}

ModeMatrices mode_matrices(int n, double R, const ElasticMedium& m) {
  return DiskSolver(R, m, std::abs(n)).mode_matrices(n);
}

ModeCoefficients coefficients_p(int n, double R, const ElasticMedium& m, double theta_d) {
  return DiskSolver(R, m, std::abs(n)).coefficients_p(n, theta_d);
}

ModeCoefficients coefficients_s(int n, double R, const ElasticMedium& m, double theta_d) {
  return DiskSolver(R, m, std::abs(n)).coefficients_s(n, theta_d);
}

CMat2 farfield_matrix(double theta, double R, const ElasticMedium& m, int N) {
  DiskSolver disk(R, m, N);
  if (disk.tail_magnitude() > 1e-12) {
    std::ostringstream os;
    os << "far-field truncation N = " << N << " leaves tail term " << disk.tail_magnitude();
    warn(os.str());
  }
  return disk.farfield_matrix(theta);
}

CVec2 scattered_field(const Vec2& x, const PlaneWaveSpec& w, double R, const ElasticMedium& m, int N) {
  return DiskSolver(R, m, N).scattered_field(x, w);
}

CVec2 disk_farfield(double theta_x, const PlaneWaveSpec& w, const Vec2& center, const DiskSolver& disk) {
  const ElasticMedium& m = disk.medium();
  CMat2 U = disk.farfield_matrix(theta_x - w.direction.theta);
  Vec2 xh(std::cos(theta_x), std::sin(theta_x));
  Vec2 d = w.direction.d();
  const std::array<double, 2> k{m.kp(), m.ks()};
  const std::array<cplx, 2> c{w.c_p, w.c_s};
  CVec2 out;
  for (int a = 0; a < 2; ++a) {
    cplx acc = 0;
    for (int b = 0; b < 2; ++b) acc += std::exp(kI * (k[b] * center.dot(d))) * U(a, b) * c[b];
    out(a) = std::exp(-kI * (k[a] * center.dot(xh))) * acc;
  }
  return out;
}

}  // namespace onewave
