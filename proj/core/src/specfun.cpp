#include "onewave/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "onewave/errors.hpp"

namespace onewave {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kEuler = 0.57721566490153286060651209;
constexpr double kSmallArg = 1e-8;
constexpr double kRescale = 1e250;
const double kLogRescale = std::log(kRescale);

cplx unit(cplx z) {
  double a = std::abs(z);
  return a > 0 ? z / a : cplx(1.0, 0.0);
}

void check_finite(double t) {
  if (!std::isfinite(t)) throw DomainError("cylinder function argument must be finite");
}

signed char sgn(double x) { return x < 0 ? -1 : 1; }

}  // namespace

LogScaledComplex LogScaledComplex::from(cplx z) {
  double a = std::abs(z);
  if (a == 0.0) return zero();
  return {std::log(a), z / a};
}

LogScaledComplex LogScaledComplex::from_log(double log_mag, cplx phase) {
  return {log_mag, unit(phase)};
}

cplx LogScaledComplex::value() const {
  if (is_zero()) return {0.0, 0.0};
  return std::exp(log_magnitude) * phase_factor;
}

LogScaledComplex operator*(const LogScaledComplex& a, const LogScaledComplex& b) {
  if (a.is_zero() || b.is_zero()) return LogScaledComplex::zero();
  return {a.log_magnitude + b.log_magnitude, unit(a.phase_factor * b.phase_factor)};
}

LogScaledComplex operator/(const LogScaledComplex& a, const LogScaledComplex& b) {
  if (b.is_zero()) throw NumericFailure("division by log-scaled zero");
  if (a.is_zero()) return LogScaledComplex::zero();
  return {a.log_magnitude - b.log_magnitude, unit(a.phase_factor / b.phase_factor)};
}

LogScaledComplex operator+(const LogScaledComplex& a, const LogScaledComplex& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const LogScaledComplex& hi = a.log_magnitude >= b.log_magnitude ? a : b;
  const LogScaledComplex& lo = a.log_magnitude >= b.log_magnitude ? b : a;
  cplx s = hi.phase_factor + lo.phase_factor * std::exp(lo.log_magnitude - hi.log_magnitude);
  double m = std::abs(s);
  if (m == 0.0) return LogScaledComplex::zero();
  return {hi.log_magnitude + std::log(m), s / m};
}

LogScaledComplex operator-(const LogScaledComplex& a, const LogScaledComplex& b) { return a + (-b); }

LogScaledComplex operator*(const LogScaledComplex& a, cplx s) { return a * LogScaledComplex::from(s); }

CylinderTable::CylinderTable(double t, int nmax, bool with_y) : t_(t), nmax_(nmax), with_y_(with_y) {
  check_finite(t);
  if (t < 0) throw DomainError("cylinder function argument must be nonnegative");
  if (nmax < 0) throw DomainError("table order must be nonnegative");
  if (with_y && t == 0.0) throw DomainError("Y_n is singular at t = 0");
  const int top = nmax + 1;
  jlog_.assign(top + 1, kNegInf);
  jsign_.assign(top + 1, 1);

  if (t == 0.0) {
    jlog_[0] = 0.0;
    return;
  }

  if (t < kSmallArg) {
    const double q = t * t / 4.0;
    for (int n = 0; n <= top; ++n) {
      jlog_[n] = n * std::log(t / 2.0) - std::lgamma(n + 1.0) + std::log1p(-q / (n + 1.0));
    }
    if (with_y) {
      ylog_.assign(top + 1, 0.0);
      ysign_.assign(top + 1, -1);
      double y0 = 2.0 / std::numbers::pi * (std::log(t / 2.0) + kEuler);
      ylog_[0] = std::log(std::abs(y0));
      ysign_[0] = sgn(y0);
      for (int n = 1; n <= top; ++n) {
        ylog_[n] = std::lgamma(static_cast<double>(n)) + n * std::log(2.0 / t) - std::log(std::numbers::pi);
      }
    }
    return;
  }

  // Miller downward recurrence, normalized by J_0 + 2 sum J_2k = 1.
  const int base = std::max(top, static_cast<int>(std::ceil(t)));
  const int start = base + 60 + static_cast<int>(std::ceil(std::sqrt(40.0 * base)));
  const int keep = std::max(top, static_cast<int>(std::ceil(t)) + 40);
  std::vector<double> mant(keep + 1, 0.0), lsc(keep + 1, 0.0);
  double next = 0.0, cur = 1e-30, scale = 0.0, norm = 0.0;
  for (int k = start; k >= 1; --k) {
    double prev = (2.0 * k / t) * cur - next;
    next = cur;
    cur = prev;
    const int order = k - 1;
    if (std::abs(cur) > kRescale) {
      cur /= kRescale;
      next /= kRescale;
      norm /= kRescale;
      scale += kLogRescale;
    }
    if (order <= keep) {
      mant[order] = cur;
      lsc[order] = scale;
    }
    if (order == 0) norm += cur;
    else if (order % 2 == 0) norm += 2.0 * cur;
  }
  std::vector<double> jl(keep + 1), jv(keep + 1);
  for (int n = 0; n <= keep; ++n) {
    double lg = mant[n] == 0.0 ? kNegInf : std::log(std::abs(mant[n])) + lsc[n] - scale - std::log(std::abs(norm));
    signed char s = static_cast<signed char>(sgn(mant[n]) * sgn(norm));
    jl[n] = lg;
    jv[n] = lg > -700.0 ? s * std::exp(lg) : 0.0;
    if (n <= top) {
      jlog_[n] = lg;
      jsign_[n] = s;
    }
  }
  if (!with_y) return;

  // Neumann series for Y_0 and Y_1, then upward recurrence.
  double s0 = 0.0, s1 = 0.0;
  for (int k = 1; 2 * k + 1 <= keep; ++k) {
    double sign = (k % 2 == 0) ? 1.0 : -1.0;
    s0 += sign * jv[2 * k] / k;
    s1 += sign * (2.0 * k + 1.0) / (k * (k + 1.0)) * jv[2 * k + 1];
  }
  const double lt = std::log(t / 2.0) + kEuler;
  double y0 = 2.0 / std::numbers::pi * (lt * jv[0] - 2.0 * s0);
  double y1 = 2.0 / std::numbers::pi * (-jv[0] / t + (lt - 1.0) * jv[1] - s1);
  ylog_.assign(top + 1, kNegInf);
  ysign_.assign(top + 1, 1);
  ylog_[0] = std::log(std::abs(y0));
  ysign_[0] = sgn(y0);
  ylog_[1] = std::log(std::abs(y1));
  ysign_[1] = sgn(y1);
  double a = y0, b = y1, ys = 0.0;
  for (int n = 1; n < top; ++n) {
    double c = (2.0 * n / t) * b - a;
    a = b;
    b = c;
    if (std::abs(b) > kRescale) {
      a /= kRescale;
      b /= kRescale;
      ys += kLogRescale;
    }
    ylog_[n + 1] = std::log(std::abs(b)) + ys;
    ysign_[n + 1] = sgn(b);
  }
}

LogScaledComplex CylinderTable::stored(const std::vector<double>& lg, const std::vector<signed char>& sg,
                                       int n) const {
  int m = std::abs(n);
  if (m > nmax_ + 1) throw DomainError("order outside cylinder table");
  double sign = sg[m];
  if (n < 0 && (m % 2 == 1)) sign = -sign;
  return {lg[m], cplx(sign, 0.0)};
}

LogScaledComplex CylinderTable::j(int n) const { return stored(jlog_, jsign_, n); }

LogScaledComplex CylinderTable::y(int n) const {
  if (!with_y_) throw DomainError("table built without Y_n");
  return stored(ylog_, ysign_, n);
}

LogScaledComplex CylinderTable::h(int n) const { return j(n) + y(n) * cplx(0.0, 1.0); }

LogScaledComplex CylinderTable::f(CylKind kind, int n) const {
  switch (kind) {
    case CylKind::J: return j(n);
    case CylKind::Y: return y(n);
    default: return h(n);
  }
}

LogScaledComplex CylinderTable::d(CylKind kind, int n) const {
  if (std::abs(n) > nmax_) throw DomainError("derivative order outside cylinder table");
  if (n == 0) return -f(kind, 1);
  return (f(kind, n - 1) - f(kind, n + 1)) * cplx(0.5, 0.0);
}

LogScaledComplex CylinderTable::jd(int n) const { return d(CylKind::J, n); }
LogScaledComplex CylinderTable::yd(int n) const { return d(CylKind::Y, n); }
LogScaledComplex CylinderTable::hd(int n) const { return d(CylKind::H1, n); }

double bessel_j(int n, double t) {
  check_finite(t);
  if (t < 0) throw DomainError("bessel_j requires t >= 0");
  return CylinderTable(t, std::abs(n), false).j(n).value().real();
}

double bessel_y(int n, double t) {
  check_finite(t);
  if (t <= 0) throw DomainError("bessel_y requires t > 0");
  return CylinderTable(t, std::abs(n)).y(n).value().real();
}

cplx cyl_derivative(CylKind kind, int n, double t) {
  check_finite(t);
  if (t <= 0) throw DomainError("cyl_derivative requires t > 0");
  return CylinderTable(t, std::abs(n) + 1, kind != CylKind::J).d(kind, n).value();
}

cplx cyl_derivative_nt(CylKind kind, int n, double t) {
  check_finite(t);
  if (t <= 0) throw DomainError("cyl_derivative_nt requires t > 0");
  CylinderTable tab(t, std::abs(n) + 1, kind != CylKind::J);
  return (tab.f(kind, n) * cplx(n / t, 0.0) - tab.f(kind, n + 1)).value();
}

LogScaledComplex hankel1_scaled(int n, double t) {
  check_finite(t);
  if (t <= 0) throw DomainError("hankel1_scaled requires t > 0");
  return CylinderTable(t, std::abs(n)).h(n);
}

}  // namespace onewave
