#include "onewave/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "onewave/errors.hpp"

namespace onewave {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();
const cplx kI(0.0, 1.0);

double log_add(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

double log_sum(const std::vector<double>& v) {
  double acc = -kInf;
  for (double x : v) acc = log_add(acc, x);
  return acc;
}

// Per-sample noise variance from the DFT band [3M/8, 5M/8].
double noise_variance(const CVec& u) {
  const int M = static_cast<int>(u.size());
  const int lo = 3 * M / 8, hi = 5 * M / 8;
  double acc = 0.0;
  for (int m = lo; m <= hi; ++m) {
    cplx c(0.0, 0.0);
    for (int j = 0; j < M; ++j) c += u(j) * std::exp(-kI * (2.0 * std::numbers::pi * double(m) * j / M));
    acc += std::norm(c / double(M));
  }
  return M * acc / (hi - lo + 1);
}

// S(n) = sum_j u_j e^{i k z.x_j} e^{-i n theta_j}, n in [-N, N].
std::vector<cplx> translated_coefficients(const CVec& u, double k, const Vec2& z, int N) {
  const int M = static_cast<int>(u.size());
  std::vector<cplx> g(M), roots(M);
  for (int j = 0; j < M; ++j) {
    const double t = grid_angle(j, M);
    g[j] = u(j) * std::exp(kI * (k * (z.x() * std::cos(t) + z.y() * std::sin(t))));
    roots[j] = std::exp(-kI * t);
  }
  std::vector<cplx> out(2 * N + 1);
  for (int n = -N; n <= N; ++n) {
    cplx acc(0.0, 0.0);
    for (int j = 0; j < M; ++j) {
      const long long idx = ((static_cast<long long>(n) * j) % M + M) % M;
      acc += g[j] * roots[idx];
    }
    out[n + N] = acc;
  }
  return out;
}

void check_request(int M, const DiskSpectrum& spec, const Vec2& z, int N, const IndicatorOptions& opt) {
  if (!z.allFinite()) throw DomainError("test disk center must be finite");
  if (N < 0 || N > M / 4) {
    std::ostringstream os;
    os << "truncation N = " << N << " outside [0, M/4] for M = " << M;
    throw DomainError(os.str());
  }
  if (N > spec.nmax()) throw DomainError("truncation exceeds the precomputed spectrum");
  if (!(opt.tau > 0.0)) throw DomainError("tau must be positive");
  const double margin = admissibility_margin(spec.solver(), N);
  if (margin < opt.admissibility) {
    std::ostringstream os;
    os << "test radius " << spec.solver().radius() << " is a Dirichlet eigenvalue radius (margin " << margin << ")";
    throw DomainError(os.str());
  }
}

IndicatorTerm make_term(int n, int j, cplx ip, double log_lambda, double floor, double tau) {
  IndicatorTerm t;
  t.n = n;
  t.j = j;
  const double a = std::norm(ip);
  t.log_numerator = a > 0.0 ? std::log(a) : -kInf;
  t.log_lambda = log_lambda;
  t.log_floor = floor > 0.0 ? std::log(floor) : -kInf;
  t.retained = a > tau * floor;
  return t;
}

// Contiguous-prefix least-squares slope of log sum_{+-n} over the top third; NaN when undetermined.
double fit_slope(const std::map<int, std::vector<double>>& series) {
  int c = 0;
  while (series.count(c + 1)) ++c;
  std::vector<double> xs, ys;
  int count = 0;
  for (const auto& [n, v] : series) {
    if (n > c) continue;
    ++count;
    if (n >= 2 * c / 3) {
      xs.push_back(n);
      ys.push_back(log_sum(v));
    }
  }
  if (count < 2 || xs.size() < 2) return std::nan("");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= xs.size();
  my /= ys.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace

void TestDisk::validate() const {
  if (!center.allFinite()) throw DomainError("test disk center must be finite");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("test disk radius must be positive");
}

bool IndicatorValue::contained() const { return tail_slope < 0.0 || log_W == -kInf; }

int default_indicator_truncation(int M, double ks_R) {
  if (M < 4) throw DomainError("grid size M must be at least 4");
  if (!(ks_R > 0.0)) throw DomainError("k_s R must be positive");
  return std::min(M / 4, static_cast<int>(std::ceil(ks_R)) + 15);
}

double admissibility_margin(const DiskSolver& disk, int N) {
  if (N < 0 || N > disk.nmax()) throw DomainError("admissibility check beyond the disk truncation");
  const CylinderTable& p = disk.table_p();
  const CylinderTable& s = disk.table_s();
  double worst = kInf;
  for (int n = 0; n <= N; ++n) {
    // t J_n' = n J_n - t J_{n+1}
    const LogScaledComplex dp = p.j(n) * cplx(n, 0.0) - p.j(n + 1) * cplx(disk.tp(), 0.0);
    const LogScaledComplex ds = s.j(n) * cplx(n, 0.0) - s.j(n + 1) * cplx(disk.ts(), 0.0);
    const double scale = log_add(dp.log_magnitude + ds.log_magnitude,
                                 2.0 * std::log(std::max(n, 1)) + p.j(n).log_magnitude + s.j(n).log_magnitude);
    const double det = disk.mode_determinant(CylKind::J, n).log_magnitude;
    worst = std::min(worst, std::exp(det - scale));
  }
  return worst;
}

std::vector<IndicatorTerm> one_wave_terms(const FarFieldData& u, const DiskSpectrum& spec, const Vec2& z, int N,
                                          const IndicatorOptions& opt) {
  u.validate();
  check_request(u.M, spec, z, N, opt);
  const ElasticMedium& m = spec.solver().medium();
  const double kp = m.kp(), ks = m.ks();
  const int M = u.M;
  const double w = 2.0 * std::numbers::pi / M;
  const double nvp = noise_variance(u.p), nvs = noise_variance(u.s);
  const double sum_p = u.p.cwiseAbs().sum(), sum_s = u.s.cwiseAbs().sum();
  const auto Sp = translated_coefficients(u.p, kp, z, N);
  const auto Ss = translated_coefficients(u.s, ks, z, N);
  std::vector<IndicatorTerm> terms;
  terms.reserve(2 * (2 * N + 1));
  for (int n = -N; n <= N; ++n) {
    for (const DiskSpectralPair& pair : spec.pairs(n)) {
      const cplx X0 = pair.X(0), X1 = pair.X(1);
      const cplx ip = w * (std::sqrt(kp) * std::conj(X0) * Sp[n + N] + std::sqrt(ks) * std::conj(X1) * Ss[n + N]);
      const double round = 8.0 * kEps * w * (std::sqrt(kp) * std::abs(X0) * sum_p + std::sqrt(ks) * std::abs(X1) * sum_s);
      const double floor = w * w * M * (nvp * kp * std::norm(X0) + nvs * ks * std::norm(X1)) + round * round;
      terms.push_back(make_term(n, pair.j, ip, pair.lambda_F.log_magnitude, floor, opt.tau));
    }
  }
  return terms;
}

std::vector<IndicatorTerm> one_wave_terms_alpha(const CVec& u, const DiskSpectrum& spec, const Vec2& z, int N,
                                                Channel channel, const IndicatorOptions& opt) {
  const int M = static_cast<int>(u.size());
  if (M < 4) throw DomainError("far-field data needs at least 4 samples");
  if (!u.allFinite()) throw DomainError("far-field data must be finite");
  check_request(M, spec, z, N, opt);
  const ElasticMedium& m = spec.solver().medium();
  const double k = channel == Channel::P ? m.kp() : m.ks();
  const double w = 2.0 * std::numbers::pi / M;
  const double nv = noise_variance(u);
  const double round = 8.0 * kEps * w * u.cwiseAbs().sum();
  const double floor = w * w * M * nv + round * round;
  const auto S = translated_coefficients(u, k, z, N);
  std::vector<IndicatorTerm> terms;
  terms.reserve(2 * N + 1);
  for (int n = -N; n <= N; ++n) {
    const auto& ps = spec.ps(n);
    const PSSpectralPair& pair = ps[0].channel == channel ? ps[0] : ps[1];
    terms.push_back(make_term(n, 1, w * S[n + N], pair.log_lambda_sharp, floor, opt.tau));
  }
  return terms;
}

IndicatorValue summarize_terms(const std::vector<IndicatorTerm>& terms) {
  IndicatorValue out;
  std::map<int, std::map<int, std::vector<double>>> series;
  std::vector<double> kept;
  for (const IndicatorTerm& t : terms) {
    if (!t.retained) continue;
    kept.push_back(t.log_term());
    series[t.j][std::abs(t.n)].push_back(t.log_term());
    out.N_used = std::max(out.N_used, std::abs(t.n));
  }
  out.log_W = log_sum(kept);
  double acc = 0.0;
  int fits = 0;
  for (const auto& [j, s] : series) {
    const double slope = fit_slope(s);
    if (std::isnan(slope)) continue;
    acc += slope;
    ++fits;
  }
  out.tail_slope = fits > 0 ? acc / fits : 0.0;
  return out;
}

IndicatorValue one_wave_W(const FarFieldData& u, const DiskSpectrum& spec, const Vec2& z, int N,
                          const IndicatorOptions& opt) {
  return summarize_terms(one_wave_terms(u, spec, z, N, opt));
}

IndicatorValue one_wave_W(const FarFieldData& u, const TestDisk& disk, const ElasticMedium& m, int N,
                          const IndicatorOptions& opt) {
  disk.validate();
  m.validate();
  if (N < 0 || N > u.M / 4) return one_wave_W(u, DiskSpectrum(disk.radius, m, 1), disk.center, N, opt);
  return one_wave_W(u, DiskSpectrum(disk.radius, m, N), disk.center, N, opt);
}

IndicatorValue one_wave_W_alpha(const CVec& u, const DiskSpectrum& spec, const Vec2& z, int N, Channel channel,
                                const IndicatorOptions& opt) {
  return summarize_terms(one_wave_terms_alpha(u, spec, z, N, channel, opt));
}

IndicatorValue one_wave_W_alpha(const CVec& u, const TestDisk& disk, const ElasticMedium& m, int N, Channel channel,
                                const IndicatorOptions& opt) {
  disk.validate();
  m.validate();
  const int M = static_cast<int>(u.size());
  const int nmax = (N < 0 || N > M / 4) ? 1 : N;
  return one_wave_W_alpha(u, DiskSpectrum(disk.radius, m, nmax), disk.center, N, channel, opt);
}

IndicatorValue range_test(const FarFieldData& v, const TestDisk& disk, const ElasticMedium& m, int N,
                          const IndicatorOptions& opt) {
  return one_wave_W(v, disk, m, N, opt);
}

}  // namespace onewave
