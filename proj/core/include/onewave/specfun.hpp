#pragma once

#include <complex>
#include <limits>
#include <vector>

namespace onewave {

using cplx = std::complex<double>;

// value = exp(log_magnitude) * phase_factor, |phase_factor| = 1.
struct LogScaledComplex {
  double log_magnitude = -std::numeric_limits<double>::infinity();
  cplx phase_factor{1.0, 0.0};

  static LogScaledComplex zero() { return {}; }
  static LogScaledComplex from(cplx z);
  static LogScaledComplex from_log(double log_mag, cplx phase);

  bool is_zero() const { return log_magnitude == -std::numeric_limits<double>::infinity(); }
  // Plain value; overflows to inf or underflows to 0 outside the double range.
  cplx value() const;
  LogScaledComplex conj() const { return {log_magnitude, std::conj(phase_factor)}; }
  LogScaledComplex operator-() const { return {log_magnitude, -phase_factor}; }

  friend LogScaledComplex operator*(const LogScaledComplex& a, const LogScaledComplex& b);
  friend LogScaledComplex operator/(const LogScaledComplex& a, const LogScaledComplex& b);
  friend LogScaledComplex operator+(const LogScaledComplex& a, const LogScaledComplex& b);
  friend LogScaledComplex operator-(const LogScaledComplex& a, const LogScaledComplex& b);
  friend LogScaledComplex operator*(const LogScaledComplex& a, cplx s);
  friend LogScaledComplex operator*(cplx s, const LogScaledComplex& a) { return a * s; }
};

enum class CylKind { J, Y, H1 };

// Integer-order cylinder functions of real argument. Negative orders reduce
// through J_{-n} = (-1)^n J_n and Y_{-n} = (-1)^n Y_n.
double bessel_j(int n, double t);
double bessel_y(int n, double t);

// Derivative from 2 C'_n = C_{n-1} - C_{n+1}. Imaginary part is zero for J, Y.
cplx cyl_derivative(CylKind kind, int n, double t);

// Derivative from t C'_n = n C_n - t C_{n+1}, exposed for cross-checks.
cplx cyl_derivative_nt(CylKind kind, int n, double t);

LogScaledComplex hankel1_scaled(int n, double t);

// All orders |n| <= nmax at a fixed argument, held in log-scaled form.
// Holds J_n, Y_n for n in [0, nmax + 1] so first derivatives exist up to nmax.
class CylinderTable {
 public:
  CylinderTable(double t, int nmax, bool with_y = true);

  double t() const { return t_; }
  int nmax() const { return nmax_; }

  LogScaledComplex j(int n) const;
  LogScaledComplex y(int n) const;
  LogScaledComplex h(int n) const;
  LogScaledComplex jd(int n) const;
  LogScaledComplex yd(int n) const;
  LogScaledComplex hd(int n) const;
  LogScaledComplex d(CylKind kind, int n) const;
  LogScaledComplex f(CylKind kind, int n) const;

 private:
  LogScaledComplex stored(const std::vector<double>& lg, const std::vector<signed char>& sg,
                          int n) const;

  double t_;
  int nmax_;
  bool with_y_;
  std::vector<double> jlog_, ylog_;
  std::vector<signed char> jsign_, ysign_;
};

}  // namespace onewave
