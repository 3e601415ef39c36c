#include "onewave/operator.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "onewave/errors.hpp"
#include "onewave/util.hpp"

namespace onewave {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

cplx channel_weight(const ElasticMedium& m, int beta, int M) {
  const double k = beta == 0 ? m.kp() : m.ks();
  return std::exp(-kI * (kPi / 4)) * std::sqrt(k / m.omega) * (2 * kPi / M);
}

CMat hermitian_abs(const CMat& H) {
  Eigen::SelfAdjointEigenSolver<CMat> es(H);
  if (es.info() != Eigen::Success) throw NumericFailure("Hermitian eigensolver did not converge");
  return es.eigenvectors() * es.eigenvalues().cwiseAbs().cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

CMat assemble_F(const FarFieldMatrixData& data, const ElasticMedium& m) {
  data.validate();
  const int M = data.M;
  CMat F(2 * M, 2 * M);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) F.block(a * M, b * M, M, M) = channel_weight(m, b, M) * data.channel(a, b);
  return F;
}

CMat assemble_F_alpha(const FarFieldMatrixData& data, const ElasticMedium& m, Channel channel) {
  data.validate();
  const int a = channel == Channel::P ? 0 : 1;
  return channel_weight(m, a, data.M) * data.channel(a, a);
}

CVec2 herglotz_wave(const CVec& g, const Vec2& x, const ElasticMedium& m) {
  if (g.size() % 2 != 0 || g.size() == 0) throw DomainError("Herglotz density must have size 2M");
  const int M = static_cast<int>(g.size() / 2);
  const cplx wp = channel_weight(m, 0, M), ws = channel_weight(m, 1, M);
  CVec2 v = CVec2::Zero();
  for (int l = 0; l < M; ++l) {
    Direction d{grid_angle(l, M)};
    const double xd = x.dot(d.d());
    v += wp * g(l) * std::exp(kI * (m.kp() * xd)) * d.d().cast<cplx>();
    v += ws * g(M + l) * std::exp(kI * (m.ks() * xd)) * d.perp().cast<cplx>();
  }
  return v;
}

CMat sharp_matrix(const CMat& A) {
  if (A.rows() != A.cols()) throw DomainError("sharp operator needs a square matrix");
  CMat re = 0.5 * (A + A.adjoint());
  CMat im = (A - A.adjoint()) / (2.0 * kI);
  CMat S = hermitian_abs(re) + hermitian_abs(im);
  return 0.5 * (S + S.adjoint());
}

double normality_defect(const CMat& A) {
  const double n2 = A.squaredNorm();
  if (n2 == 0.0) return 0.0;
  return (A * A.adjoint() - A.adjoint() * A).norm() / n2;
}

OperatorSpectrum spectral_decomposition(const CMat& A, SpectrumKind kind) {
  if (A.rows() != A.cols() || A.rows() == 0) throw DomainError("spectral decomposition needs a nonempty square matrix");
  OperatorSpectrum out;
  out.kind = kind;
  out.scale = Eigen::VectorXd::Ones(A.rows());
  if (kind == SpectrumKind::Full) {
    Eigen::ComplexSchur<CMat> schur(A);
    if (schur.info() != Eigen::Success) throw NumericFailure("Schur decomposition did not converge");
    out.eigenvalues = schur.matrixT().diagonal();
    out.eigenvectors = schur.matrixU();
    const CMat& T = schur.matrixT();
    double off = T.triangularView<Eigen::StrictlyUpper>().toDenseMatrix().norm();
    if (off > 1e-6 * A.norm()) {
      std::ostringstream os;
      os << "operator departs from normality: Schur off-diagonal norm " << off << " vs " << A.norm();
      warn(os.str());
    }
    return out;
  }
  Eigen::SelfAdjointEigenSolver<CMat> es(sharp_matrix(A));
  if (es.info() != Eigen::Success) throw NumericFailure("Hermitian eigensolver did not converge");
  out.eigenvalues = es.eigenvalues().cast<cplx>();
  out.eigenvectors = es.eigenvectors();
  return out;
}

Eigen::VectorXd far_field_scale(int M, const ElasticMedium& m) {
  Eigen::VectorXd d(2 * M);
  d.head(M).setConstant(1.0 / std::sqrt(m.kp()));
  d.tail(M).setConstant(1.0 / std::sqrt(m.ks()));
  return d;
}

OperatorSpectrum decompose_far_field_operator(const CMat& F, const ElasticMedium& m, SpectrumKind kind) {
  if (kind != SpectrumKind::Full) return spectral_decomposition(F, kind);
  if (F.rows() % 2 != 0) throw DomainError("full far-field operator must have even dimension");
  const Eigen::VectorXd d = far_field_scale(static_cast<int>(F.rows() / 2), m);
  CMat sym = d.cast<cplx>().asDiagonal() * F * d.cwiseInverse().cast<cplx>().asDiagonal();
  OperatorSpectrum out = spectral_decomposition(sym, kind);
  out.eigenvectors = d.cwiseInverse().cast<cplx>().asDiagonal() * out.eigenvectors;
  out.scale = d;
  return out;
}

namespace {

// Point-source far field Gamma(., z; a) sampled to match the spectrum's unknown ordering.
CVec gamma_samples(const OperatorSpectrum& spec, const Vec2& z, const Vec2& a, const ElasticMedium& m) {
  const int dim = static_cast<int>(spec.eigenvectors.rows());
  const bool full = spec.kind == SpectrumKind::Full;
  const int M = full ? dim / 2 : dim;
  CVec g(dim);
  for (int j = 0; j < M; ++j) {
    CVec2 ps = point_source_farfield_map(grid_angle(j, M), z, m) * a.cast<cplx>();
    if (full) {
      g(j) = ps(0);
      g(M + j) = ps(1);
    } else {
      g(j) = spec.kind == SpectrumKind::PSharp ? ps(0) : ps(1);
    }
  }
  return g;
}

}  // namespace

double classical_indicator(const OperatorSpectrum& spec, const Vec2& z, const Vec2& a, const ElasticMedium& m,
                           const ClassicalOptions& opt) {
  if (spec.eigenvalues.size() == 0) throw DomainError("classical indicator needs a nonempty spectrum");
  const int dim = static_cast<int>(spec.eigenvectors.rows());
  const int M = spec.kind == SpectrumKind::Full ? dim / 2 : dim;
  const double cut = opt.eps_cut * spec.eigenvalues.cwiseAbs().maxCoeff();
  // Weighted-orthonormal columns v correspond to circle functions v / sqrt(2 pi / M).
  Eigen::VectorXd w2 = Eigen::VectorXd::Ones(dim);
  if (spec.scale.size() == dim) w2 = spec.scale.cwiseAbs2();
  CVec coeff = spec.eigenvectors.adjoint() * (w2.cast<cplx>().asDiagonal() * gamma_samples(spec, z, a, m));
  const double w = 2 * kPi / M;
  double sum = 0.0;
  for (int k = 0; k < coeff.size(); ++k) {
    const double lam = std::abs(spec.eigenvalues(k));
    if (lam > cut && lam > 0.0) sum += w * std::norm(coeff(k)) / lam;
  }
  return sum;
}

std::vector<double> classical_indicator(const OperatorSpectrum& spec, const std::vector<Vec2>& points,
                                        const Vec2& a, const ElasticMedium& m, const ClassicalOptions& opt) {
  std::vector<double> out(points.size());
  parallel_for(points.size(), [&](std::size_t i) { out[i] = classical_indicator(spec, points[i], a, m, opt); });
  return out;
}

}  // namespace onewave
