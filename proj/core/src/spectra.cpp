#include "onewave/spectra.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "onewave/errors.hpp"

namespace onewave {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;
const double kLog2 = std::log(2.0);
using LS = LogScaledComplex;

double log_add(double a, double b) {
  double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

// log(|b| + sqrt(b^2 + 4)).
double log_root_sum(double lb) {
  if (lb > 0) return lb + std::log1p(std::sqrt(1.0 + 4.0 * std::exp(-2.0 * lb)));
  double b = std::exp(lb);
  return std::log(b + std::hypot(b, 2.0));
}

std::pair<LS, LS> sigma_from_b(const LS& b) {
  if (b.is_zero()) return {LS::from(kI), LS::from(-kI)};
  const double L = log_root_sum(b.log_magnitude);
  if (b.phase_factor.real() > 0) return {LS::from_log(kLog2 - L, kI), LS::from_log(L - kLog2, -kI)};
  return {LS::from_log(L - kLog2, kI), LS::from_log(kLog2 - L, -kI)};
}

// Real part b of beta_n = i b from the cylinder tables.
LS beta_real(int n, const CylinderTable& p, const CylinderTable& s) {
  if (n == 0) throw DomainError("beta_n is undefined for n = 0");
  const double nn = double(n) * n;
  LS bracket = (s.j(n) * p.y(n) - p.j(n) * s.y(n)) * cplx(nn, 0.0) +
               (p.jd(n) * s.yd(n) - s.jd(n) * p.yd(n)) * cplx(p.t() * s.t(), 0.0);
  return bracket * cplx(-kPi / (2.0 * n), 0.0);
}

std::pair<LS, LS> sigma_ls(int n, const CylinderTable& p, const CylinderTable& s) {
  auto sg = sigma_from_b(beta_real(std::abs(n), p, s));
  if (n < 0) return {-sg.first, -sg.second};
  return sg;
}

struct ModeEntries {
  // M = [[a00, a01], [a10, a11]] for kind C.
  LS a00, a01, a10, a11;
};

ModeEntries mode_entries(const CylinderTable& p, const CylinderTable& s, CylKind kind, int n) {
  const cplx in(0.0, double(n));
  return {p.d(kind, n) * cplx(p.t(), 0.0), s.f(kind, n) * (-in), p.f(kind, n) * in,
          s.d(kind, n) * cplx(s.t(), 0.0)};
}

double ls_rel(const LS& a, const LS& b) { return std::abs((a / b).value() - 1.0); }

LS ls_sqrt(const LS& a) {
  if (a.is_zero()) return a;
  return LS::from_log(0.5 * a.log_magnitude, std::sqrt(a.phase_factor));
}

double ls_abs_log(const LS& a, const LS& b) {
  if (a.is_zero()) return b.log_magnitude;
  if (b.is_zero()) return a.log_magnitude;
  return log_add(a.log_magnitude, b.log_magnitude);
}

CVec2 normalized_x(const LS& sigma) {
  // (1, -sigma) / sqrt(1 + |sigma|^2) without overflow.
  if (sigma.is_zero()) return {1.0, 0.0};
  const double ls = sigma.log_magnitude;
  if (ls <= 0) {
    double s = std::exp(ls);
    double nrm = std::hypot(1.0, s);
    return {1.0 / nrm, -sigma.phase_factor * (s / nrm)};
  }
  double inv = std::exp(-ls);
  double nrm = std::hypot(1.0, inv);
  return {inv / nrm, -sigma.phase_factor / nrm};
}

cplx f_prefactor(double omega) { return std::sqrt(8 * kPi / omega) * kI; }

void check_denominator(const LS& d, int n) {
  if (d.is_zero() || !std::isfinite(d.log_magnitude)) {
    std::ostringstream os;
    os << "eigenvalue denominator vanishes at n = " << n << " (Dirichlet eigenfrequency)";
    throw NumericFailure(os.str());
  }
}

}  // namespace

LS beta_n(int n, const CylinderTable& tp, const CylinderTable& ts) {
  return beta_real(n, tp, ts) * kI;
}

cplx beta_n(int n, double tp, double ts) {
  if (n == 0) throw DomainError("beta_n is undefined for n = 0");
  const int a = std::abs(n);
  return beta_n(n, CylinderTable(tp, a + 1), CylinderTable(ts, a + 1)).value();
}

std::pair<cplx, cplx> sigma_pair(int n, double tp, double ts) {
  if (n == 0) throw DomainError("sigma pair is undefined for n = 0");
  const int a = std::abs(n);
  auto s = sigma_ls(n, CylinderTable(tp, a + 1), CylinderTable(ts, a + 1));
  return {s.first.value(), s.second.value()};
}

std::array<DiskSpectralPair, 2> disk_eigensystem(int n, const DiskSolver& disk) {
  if (std::abs(n) > disk.nmax()) throw DomainError("mode order exceeds disk truncation");
  const CylinderTable& p = disk.table_p();
  const CylinderTable& s = disk.table_s();
  const cplx pref = f_prefactor(disk.medium().omega);
  std::array<DiskSpectralPair, 2> out;
  out[0].n = out[1].n = n;
  out[0].j = 1;
  out[1].j = 2;

  if (n == 0) {
    LS d1 = p.hd(0), d2 = s.hd(0);
    check_denominator(d1, 0);
    check_denominator(d2, 0);
    out[0].lambda_sigma = p.jd(0) / d1;
    out[1].lambda_sigma = s.jd(0) / d2;
    out[0].sigma = 0.0;
    out[1].sigma = cplx(std::numeric_limits<double>::infinity(), 0.0);
    out[0].X = CVec2(1.0, 0.0);
    out[1].X = CVec2(0.0, 1.0);
  } else {
    auto [s1, s2] = sigma_ls(n, p, s);
    const std::array<LS, 2> sig{s1, s2};
    LogMat2 S = disk.sigma(n);
    LS hdet = disk.mode_determinant(CylKind::H1, n);
    check_denominator(hdet, n);
    // Eigenvalues from trace and determinant; the smaller one comes from det(Sigma_n) / larger.
    LS det = disk.mode_determinant(CylKind::J, n) / hdet;
    LS half = (S[0][0] + S[1][1]) * cplx(0.5, 0.0);
    LS root = ls_sqrt(half * half - det);
    LS a = half + root, b = half - root;
    LS big = a.log_magnitude >= b.log_magnitude ? a : b;
    LS small = det / big;
    // Label by the row estimate lambda = Sigma_00 - Sigma_01 sigma_j.
    LS e0 = S[0][0] - S[0][1] * sig[0], e1 = S[0][0] - S[0][1] * sig[1];
    bool first_small = ls_rel(e0, small) + ls_rel(e1, big) <= ls_rel(e0, big) + ls_rel(e1, small);
    std::array<LS, 2> lam{first_small ? small : big, first_small ? big : small};
    for (int k = 0; k < 2; ++k) {
      out[k].lambda_sigma = lam[k];
      out[k].sigma = sig[k].value();
      out[k].X = normalized_x(sig[k]);
    }
  }
  for (auto& pr : out) pr.lambda_F = pr.lambda_sigma * pref;
  return out;
}

std::array<DiskSpectralPair, 2> disk_eigensystem(int n, double R, const ElasticMedium& m) {
  return disk_eigensystem(n, DiskSolver(R, m, std::abs(n)));
}

std::array<PSSpectralPair, 2> ps_spectra(int n, const DiskSolver& disk) {
  if (std::abs(n) > disk.nmax()) throw DomainError("mode order exceeds disk truncation");
  const ElasticMedium& m = disk.medium();
  LogMat2 sig = disk.sigma(n);
  const cplx pref = f_prefactor(m.omega);
  const std::array<double, 2> k{m.kp(), m.ks()};
  std::array<PSSpectralPair, 2> out;
  for (int a = 0; a < 2; ++a) {
    PSSpectralPair& p = out[a];
    p.n = n;
    p.channel = a == 0 ? Channel::P : Channel::S;
    p.eta = sig[a][a] * pref;
    p.farfield_coefficient =
        sig[a][a] * (std::sqrt(2.0 / (kPi * k[a])) * std::exp(kI * (kPi / 4)) * kI);
    if (!p.eta.is_zero()) {
      const cplx ph = p.eta.phase_factor;
      p.log_lambda_sharp = p.eta.log_magnitude + std::log(std::abs(ph.real()) + std::abs(ph.imag()));
    }
  }
  return out;
}

std::array<PSSpectralPair, 2> ps_spectra(int n, double R, const ElasticMedium& m) {
  return ps_spectra(n, DiskSolver(R, m, std::abs(n)));
}

DiskSpectralPair translated_spectra(const DiskSpectralPair& base, const Vec2& z) {
  DiskSpectralPair out = base;
  out.center = base.center + z;
  return out;
}

PSSpectralPair translated_spectra(const PSSpectralPair& base, const Vec2& z) {
  PSSpectralPair out = base;
  out.center = base.center + z;
  return out;
}

CVec2 eigenfunction(const DiskSpectralPair& pair, double theta, const ElasticMedium& m) {
  const Vec2 xh(std::cos(theta), std::sin(theta));
  const double zx = pair.center.dot(xh);
  const cplx e = std::exp(kI * (pair.n * theta));
  return {e * std::sqrt(m.kp()) * pair.X(0) * std::exp(-kI * (m.kp() * zx)),
          e * std::sqrt(m.ks()) * pair.X(1) * std::exp(-kI * (m.ks() * zx))};
}

cplx eigenfunction(const PSSpectralPair& pair, double theta, const ElasticMedium& m) {
  const Vec2 xh(std::cos(theta), std::sin(theta));
  const double k = pair.channel == Channel::P ? m.kp() : m.ks();
  return std::exp(kI * (pair.n * theta - k * pair.center.dot(xh)));
}

double eigen_residual(const DiskSpectralPair& pair, const DiskSolver& disk) {
  const CylinderTable& p = disk.table_p();
  const CylinderTable& s = disk.table_s();
  ModeEntries J = mode_entries(p, s, CylKind::J, pair.n), H = mode_entries(p, s, CylKind::H1, pair.n);
  const LS x0 = LS::from(pair.X(0)), x1 = LS::from(pair.X(1));
  const LS& l = pair.lambda_sigma;
  LS r0 = (J.a00 * x0 + J.a01 * x1) - l * (H.a00 * x0 + H.a01 * x1);
  LS r1 = (J.a10 * x0 + J.a11 * x1) - l * (H.a10 * x0 + H.a11 * x1);
  // Backward-error scale |J| + |lambda| |H| with |X| = 1.
  auto norm_log = [](const ModeEntries& e) {
    return ls_abs_log(LS::from_log(ls_abs_log(e.a00, e.a01), 1.0), LS::from_log(ls_abs_log(e.a10, e.a11), 1.0));
  };
  double scale = l.is_zero() ? norm_log(J) : log_add(norm_log(J), l.log_magnitude + norm_log(H));
  double num = ls_abs_log(r0, r1);
  if (num == -std::numeric_limits<double>::infinity()) return 0.0;
  return std::exp(num - scale);
}

DiskSpectrum::DiskSpectrum(double R, const ElasticMedium& m, int nmax) : disk_(R, m, nmax) {
  pairs_.reserve(2 * nmax + 1);
  ps_.reserve(2 * nmax + 1);
  for (int n = -nmax; n <= nmax; ++n) {
    pairs_.push_back(disk_eigensystem(n, disk_));
    ps_.push_back(ps_spectra(n, disk_));
  }
}

const std::array<DiskSpectralPair, 2>& DiskSpectrum::pairs(int n) const {
  if (std::abs(n) > nmax()) throw DomainError("mode order outside cached spectrum");
  return pairs_[n + nmax()];
}

const std::array<PSSpectralPair, 2>& DiskSpectrum::ps(int n) const {
  if (std::abs(n) > nmax()) throw DomainError("mode order outside cached spectrum");
  return ps_[n + nmax()];
}

namespace asymptotic {

LS beta(int n, double tp, double ts) {
  const double a = n * std::log(ts / tp);
  if (a == 0.0) return LS::zero();
  return LS::from_log(std::abs(a) + std::log1p(-std::exp(-2 * std::abs(a))), a > 0 ? kI : -kI);
}

LS sigma1(int n, double tp, double ts) { return LS::from_log(n * std::log(tp / ts), kI); }

LS sigma2(int n, double tp, double ts) { return LS::from_log(n * std::log(ts / tp), -kI); }

LS lambda_F1(int n, double tp, double ts, double omega) {
  const double lp = std::log(tp), lt = std::log(ts);
  double lg = 0.5 * std::log(2 * kPi / omega) + std::log(kPi) + (2 * n + 2) * lp + 2 * n * lt - 2 * n * kLog2 -
              std::lgamma(n + 2.0) - std::lgamma(n + 1.0) - log_add(2 * n * lp, 2 * n * lt);
  return LS::from_log(lg, -1.0);
}

LS lambda_F2(int n, double tp, double ts, double omega) {
  const double lp = std::log(tp), lt = std::log(ts);
  double lg = 0.5 * std::log(2 * kPi / omega) + std::log(kPi) + log_add(2 * n * lp, 2 * n * lt) -
              (2 * n - 2) * kLog2 - std::lgamma(double(n)) - std::lgamma(n - 1.0) - 2 * lp;
  return LS::from_log(lg, -1.0);
}

double log_lambda_sharp_p(int n, double tp, double ts, double kp) {
  return 0.5 * std::log(kPi / kp) + 2 * n * std::log(tp) - (2 * n - 1) * kLog2 - std::lgamma(double(n)) -
         std::lgamma(n - 1.0) - std::log(tp * tp + ts * ts);
}

}  // namespace asymptotic

}  // namespace onewave
