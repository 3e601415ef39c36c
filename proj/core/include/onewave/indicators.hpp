#pragma once

#include <limits>
#include <vector>

#include "onewave/farfield.hpp"
#include "onewave/spectra.hpp"

namespace onewave {

struct TestDisk {
  Vec2 center = Vec2::Zero();
  double radius = 1.0;

  void validate() const;
};

struct IndicatorValue {
  double log_W = -std::numeric_limits<double>::infinity();
  int N_used = 0;
  double tail_slope = 0.0;

  // Finite-N surrogate of W < infinity: decaying tail, or no term above the noise floor.
  bool contained() const;
};

struct IndicatorOptions {
  double tau = 25.0;  // a term is kept when |<u, X>|^2 > tau * floor
  double admissibility = 1e-10;  // minimum normalized |det J_n| over |n| <= N
};

struct IndicatorTerm {
  int n = 0;
  int j = 1;  // 1, 2 for the full problem; 1 for a single channel
  double log_numerator = -std::numeric_limits<double>::infinity();  // log |<u, X>|^2
  double log_lambda = 0.0;
  double log_floor = -std::numeric_limits<double>::infinity();
  bool retained = false;

  double log_term() const { return log_numerator - log_lambda; }
};

// min(M / 4, ceil(k_s R) + 15)
int default_indicator_truncation(int M, double ks_R);

// min over |n| <= N of |det J_n| / (|t_p J_n'(t_p) t_s J_n'(t_s)| + n^2 |J_n(t_p) J_n(t_s)|)
double admissibility_margin(const DiskSolver& disk, int N);

std::vector<IndicatorTerm> one_wave_terms(const FarFieldData& u, const DiskSpectrum& spec, const Vec2& z, int N,
                                          const IndicatorOptions& opt = {});
std::vector<IndicatorTerm> one_wave_terms_alpha(const CVec& u, const DiskSpectrum& spec, const Vec2& z, int N,
                                                Channel channel, const IndicatorOptions& opt = {});
IndicatorValue summarize_terms(const std::vector<IndicatorTerm>& terms);

IndicatorValue one_wave_W(const FarFieldData& u, const TestDisk& disk, const ElasticMedium& m, int N,
                          const IndicatorOptions& opt = {});
IndicatorValue one_wave_W(const FarFieldData& u, const DiskSpectrum& spec, const Vec2& z, int N,
                          const IndicatorOptions& opt = {});
IndicatorValue one_wave_W_alpha(const CVec& u, const TestDisk& disk, const ElasticMedium& m, int N, Channel channel,
                                const IndicatorOptions& opt = {});
IndicatorValue one_wave_W_alpha(const CVec& u, const DiskSpectrum& spec, const Vec2& z, int N, Channel channel,
                                const IndicatorOptions& opt = {});

// Same series as one_wave_W, read as an extensibility test for v outside B_R(z).
IndicatorValue range_test(const FarFieldData& v, const TestDisk& disk, const ElasticMedium& m, int N,
                          const IndicatorOptions& opt = {});

}  // namespace onewave
