#pragma once

#include <vector>

#include "onewave/farfield.hpp"
#include "onewave/spectra.hpp"

namespace onewave {

enum class SpectrumKind { Full, PSharp, SSharp };

// Eigenvectors are orthonormal in the inner product <g, h> = sum scale_i^2 conj(h_i) g_i, i.e. the
// columns of diag(scale) * eigenvectors are orthonormal in C^dim.
struct OperatorSpectrum {
  CVec eigenvalues;
  CMat eigenvectors;
  Eigen::VectorXd scale;
  SpectrumKind kind = SpectrumKind::Full;
};

// Nystrom matrix of F on the grid; unknowns ordered (g_p, g_s), outputs (p part, s part).
CMat assemble_F(const FarFieldMatrixData& data, const ElasticMedium& m);
CMat assemble_F_alpha(const FarFieldMatrixData& data, const ElasticMedium& m, Channel channel);

// g has size 2M ordered (g_p, g_s).
CVec2 herglotz_wave(const CVec& g, const Vec2& x, const ElasticMedium& m);

// |Re A| + |Im A| with Re A = (A + A*)/2 and Im A = (A - A*)/(2i).
CMat sharp_matrix(const CMat& A);

// ||A A* - A* A|| / ||A||^2 in the Frobenius norm.
double normality_defect(const CMat& A);

// Full: Schur decomposition of a near-normal A. Sharp kinds: Hermitian decomposition of sharp_matrix(A).
// Unit scale.
OperatorSpectrum spectral_decomposition(const CMat& A, SpectrumKind kind);

// Component scaling D = diag(k_p^{-1/2} I_M, k_s^{-1/2} I_M) under which D F D^{-1} is normal.
Eigen::VectorXd far_field_scale(int M, const ElasticMedium& m);

// Decomposes an assembled operator: F from assemble_F (kind Full, symmetrized through far_field_scale)
// or F^(alpha) from assemble_F_alpha (sharp kinds).
OperatorSpectrum decompose_far_field_operator(const CMat& F, const ElasticMedium& m, SpectrumKind kind);

struct ClassicalOptions {
  double eps_cut = 1e-12;  // relative to max |lambda|
};

// Truncated Picard sum of the point-source far field Gamma(., z; a) against the spectrum.
double classical_indicator(const OperatorSpectrum& spec, const Vec2& z, const Vec2& a, const ElasticMedium& m,
                           const ClassicalOptions& opt = {});
std::vector<double> classical_indicator(const OperatorSpectrum& spec, const std::vector<Vec2>& points,
                                        const Vec2& a, const ElasticMedium& m, const ClassicalOptions& opt = {});

}  // namespace onewave
