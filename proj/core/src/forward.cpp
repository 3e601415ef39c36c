#include "onewave/forward.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <limits>
#include <sstream>
#include <string>

#include "onewave/errors.hpp"
#include "onewave/util.hpp"

namespace onewave {

namespace {

constexpr double kPi = std::numbers::pi;

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// Piecewise boundary made of straight pieces and circular arcs, sampled by arc length.
class Curve {
 public:
  void segment(const Vec2& a, const Vec2& b) {
    const double len = (b - a).norm();
    if (len > 0.0) add({a, b, Vec2::Zero(), 0.0, 0.0, 0.0, len, false});
  }
  void arc(const Vec2& center, double radius, double t0, double t1) {
    const double len = radius * (t1 - t0);
    if (len > 0.0) add({Vec2::Zero(), Vec2::Zero(), center, radius, t0, t1, len, true});
  }
  double length() const { return total_; }
  Vec2 at(double s) const {
    s = std::fmod(s, total_);
    if (s < 0.0) s += total_;
    auto it = std::upper_bound(start_.begin(), start_.end(), s);
    std::size_t k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - start_.begin() - 1, 0));
    const Piece& p = pieces_[k];
    const double f = std::clamp((s - start_[k]) / p.len, 0.0, 1.0);
    if (!p.is_arc) return p.a + f * (p.b - p.a);
    const double t = p.t0 + f * (p.t1 - p.t0);
    return p.c + p.r * Vec2(std::cos(t), std::sin(t));
  }

 private:
  struct Piece {
    Vec2 a, b, c;
    double r, t0, t1, len;
    bool is_arc;
  };
  void add(const Piece& p) {
    start_.push_back(total_);
    pieces_.push_back(p);
    total_ += p.len;
  }
  std::vector<Piece> pieces_;
  std::vector<double> start_;
  double total_ = 0.0;
};

double turning_angle(const std::vector<Vec2>& v, std::size_t i) {
  const std::size_t n = v.size();
  Vec2 in = v[i] - v[(i + n - 1) % n], out = v[(i + 1) % n] - v[i];
  return std::atan2(cross(in, out), in.dot(out));
}

std::vector<std::size_t> sharp_corners(const std::vector<Vec2>& v, double angle_deg) {
  std::vector<std::size_t> out;
  const double thr = angle_deg * kPi / 180.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (turning_angle(v, i) > thr) out.push_back(i);
  return out;
}

// Shrunk polygon with sharp corners replaced by arcs of the given radius.
Curve source_curve(const PolygonScatterer& p, const MFSConfig& cfg) {
  const Vec2 c = p.centroid();
  std::vector<Vec2> v;
  for (const auto& x : p.vertices) v.push_back(c + cfg.retreat * (x - c));
  const std::size_t n = v.size();
  const double thr = cfg.corner_angle * kPi / 180.0;
  const double rho = cfg.corner_rounding * p.inradius();
  std::vector<Vec2> enter(n), leave(n);
  std::vector<double> cut(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double turn = turning_angle(v, i);
    if (turn > thr && rho > 0.0) cut[i] = rho * std::tan(turn / 2);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 prev = v[(i + n - 1) % n], next = v[(i + 1) % n];
    const double lin = (v[i] - prev).norm(), lout = (next - v[i]).norm();
    const double ci = std::min(cut[i], 0.45 * std::min(lin, lout));
    enter[i] = v[i] + ci * (prev - v[i]) / lin;
    leave[i] = v[i] + ci * (next - v[i]) / lout;
    cut[i] = ci;
  }
  Curve curve;
  for (std::size_t i = 0; i < n; ++i) {
    if (cut[i] > 0.0) {
      const Vec2 din = (v[i] - enter[i]).normalized();
      const Vec2 normal(-din.y(), din.x());
      const double turn = turning_angle(v, i);
      const double r = cut[i] / std::tan(turn / 2);
      const Vec2 center = enter[i] + r * normal;
      const Vec2 e = enter[i] - center;
      const double t0 = std::atan2(e.y(), e.x());
      curve.arc(center, r, t0, t0 + turn);
    }
    curve.segment(leave[i], enter[(i + 1) % n]);
  }
  return curve;
}

double graded(double t, double p) {
  return t <= 0.5 ? 0.5 * std::pow(2 * t, p) : 1.0 - 0.5 * std::pow(2 * (1 - t), p);
}

// Boundary points graded toward sharp corners; with offset 0.5 the points lie between the offset-0 set.
std::vector<Vec2> boundary_points(const PolygonScatterer& p, const MFSConfig& cfg, int count, double offset) {
  const auto& v = p.vertices;
  const std::size_t n = v.size();
  auto corners = sharp_corners(v, cfg.corner_angle);
  const bool smooth = corners.empty();
  if (smooth) corners.push_back(0);
  // Chains of edges between consecutive corners.
  struct Chain {
    Curve curve;
  };
  std::vector<Chain> chains(corners.size());
  std::vector<double> lengths(corners.size());
  for (std::size_t c = 0; c < corners.size(); ++c) {
    std::size_t i = corners[c], stop = corners[(c + 1) % corners.size()];
    do {
      chains[c].curve.segment(v[i], v[(i + 1) % n]);
      i = (i + 1) % n;
    } while (i != stop);
    lengths[c] = chains[c].curve.length();
  }
  const double total = p.perimeter();
  std::vector<int> alloc(chains.size());
  int used = 0;
  std::vector<std::pair<double, std::size_t>> rema;
  for (std::size_t c = 0; c < chains.size(); ++c) {
    const double share = count * lengths[c] / total;
    alloc[c] = std::max(1, static_cast<int>(std::floor(share)));
    used += alloc[c];
    rema.push_back({share - std::floor(share), c});
  }
  std::sort(rema.begin(), rema.end(), std::greater<>());
  for (std::size_t k = 0; used < count; k = (k + 1) % rema.size(), ++used) ++alloc[rema[k].second];
  std::vector<Vec2> pts;
  pts.reserve(count);
  const double expo = smooth ? 1.0 : cfg.grading_exponent;
  for (std::size_t c = 0; c < chains.size(); ++c) {
    const int m = alloc[c];
    for (int k = 0; k < m; ++k) {
      const double t = (k + offset) / m;
      pts.push_back(chains[c].curve.at(graded(t, expo) * lengths[c]));
    }
  }
  return pts;
}

// l exp(-c (sqrt(n) - sqrt(k))) for k = k0, k0 + step, ... <= n, dropping those below 1e-10 l
std::vector<double> cluster_distances(int n, double ell, double c, double k0, double step) {
  std::vector<double> d;
  for (double k = k0; k <= n + 1e-12; k += step) {
    const double x = ell * std::exp(-c * (std::sqrt(double(n)) - std::sqrt(k)));
    if (x > 1e-10 * ell) d.push_back(x);
  }
  return d;
}

struct Layout {
  std::vector<Vec2> sources, dipoles, colloc, check;
};

// Smooth-curve sources plus clusters on the bisector of every sharp corner, with matching boundary samples.
Layout make_layout(const PolygonScatterer& p, const MFSConfig& cfg) {
  const auto& v = p.vertices;
  const std::size_t n = v.size();
  const auto corners = sharp_corners(v, cfg.corner_angle);
  const int nc = static_cast<int>(corners.size());
  // Each dipole brings four unknowns and is matched by four boundary points; the rest of the
  // collocation budget keeps at least two points per curve source.
  const int n_coll = cfg.collocation_count();
  int per_corner = 0;
  if (nc > 0) {
    per_corner = static_cast<int>(std::lround(cfg.corner_fraction * cfg.n_sources / nc));
    per_corner = std::clamp(per_corner, 0, (cfg.n_sources - 4) / nc);
    while (per_corner > 0 && n_coll - 4 * per_corner * nc < 2 * (cfg.n_sources - per_corner * nc)) --per_corner;
  }
  Layout out;
  const int n_curve = cfg.n_sources - per_corner * nc;
  Curve curve = source_curve(p, cfg);
  for (int q = 0; q < n_curve; ++q) out.sources.push_back(curve.at(curve.length() * q / n_curve));
  const int n_graded = n_coll - 4 * per_corner * nc;
  out.colloc = boundary_points(p, cfg, n_graded, 0.0);
  out.check = boundary_points(p, cfg, n_graded, 0.5);
  if (per_corner == 0) return out;
  const double ell = 0.5 * p.inradius(), c = cfg.corner_clustering;
  const auto at = cluster_distances(per_corner, ell, c, 1.0, 1.0);
  const auto col = cluster_distances(per_corner, ell, c, 0.5, 0.5);
  const auto chk = cluster_distances(per_corner, ell, c, 0.25, 0.5);
  for (std::size_t i : corners) {
    const Vec2 ein = (v[(i + n - 1) % n] - v[i]).normalized();
    const Vec2 eout = (v[(i + 1) % n] - v[i]).normalized();
    const Vec2 bis = (ein + eout).normalized();
    for (double d : at) out.dipoles.push_back(v[i] + d * bis);
    for (double d : col) {
      out.colloc.push_back(v[i] + d * ein);
      out.colloc.push_back(v[i] + d * eout);
    }
    for (double d : chk) {
      out.check.push_back(v[i] + d * ein);
      out.check.push_back(v[i] + d * eout);
    }
  }
  return out;
}

// Row pair i holds the field at x_i; columns are point forces then the two dipole directions per dipole.
CMat kupradze_matrix(const std::vector<Vec2>& xs, const std::vector<Vec2>& ys, const std::vector<Vec2>& ds,
                     const ElasticMedium& m) {
  const Eigen::Index off = 2 * static_cast<Eigen::Index>(ys.size());
  CMat A(2 * xs.size(), off + 4 * ds.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    for (std::size_t q = 0; q < ys.size(); ++q) A.block<2, 2>(2 * i, 2 * q) = kupradze_tensor(xs[i], ys[q], m);
    for (std::size_t q = 0; q < ds.size(); ++q) {
      const auto g = kupradze_gradient(xs[i], ds[q], m);
      for (int c = 0; c < 2; ++c) A.block<2, 2>(2 * i, off + 4 * q + 2 * c) = -g[c];
    }
  });
  return A;
}

CVec incident_samples(const std::vector<Vec2>& xs, const PlaneWaveSpec& w, const ElasticMedium& m) {
  CVec b(2 * xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) b.segment<2>(2 * i) = plane_wave(xs[i], w, m);
  return b;
}

double max_point_norm(const CVec& v) {
  double out = 0.0;
  for (Eigen::Index i = 0; i < v.size() / 2; ++i) out = std::max(out, v.segment<2>(2 * i).norm());
  return out;
}

// Rows (p at theta_j, s at theta_j) of the far-field map, columns ordered as in kupradze_matrix.
CMat farfield_map(const std::vector<Vec2>& ys, const std::vector<Vec2>& ds, int M, const ElasticMedium& m) {
  const Eigen::Index off = 2 * static_cast<Eigen::Index>(ys.size());
  CMat G(2 * M, off + 4 * ds.size());
  const cplx ikp(0.0, m.kp()), iks(0.0, m.ks());
  for (int j = 0; j < M; ++j) {
    const double t = grid_angle(j, M);
    const Vec2 xh(std::cos(t), std::sin(t));
    for (std::size_t q = 0; q < ys.size(); ++q) {
      const CMat2 g = point_source_farfield_map(t, ys[q], m);
      G.block<1, 2>(j, 2 * q) = g.row(0);
      G.block<1, 2>(M + j, 2 * q) = g.row(1);
    }
    for (std::size_t q = 0; q < ds.size(); ++q) {
      const CMat2 g = point_source_farfield_map(t, ds[q], m);
      for (int c = 0; c < 2; ++c) {
        G.block<1, 2>(j, off + 4 * q + 2 * c) = -ikp * xh(c) * g.row(0);
        G.block<1, 2>(M + j, off + 4 * q + 2 * c) = -iks * xh(c) * g.row(1);
      }
    }
  }
  return G;
}

CVec stack(const MFSSolution& sol) {
  const std::size_t nq = sol.strengths.size();
  CVec out(2 * nq + 4 * sol.dipole_strengths.size());
  for (std::size_t q = 0; q < nq; ++q) out.segment<2>(2 * q) = sol.strengths[q];
  for (std::size_t q = 0; q < sol.dipole_strengths.size(); ++q)
    for (int c = 0; c < 2; ++c) out.segment<2>(2 * nq + 4 * q + 2 * c) = sol.dipole_strengths[q].col(c);
  return out;
}

void check_sizes(const MFSSolution& sol) {
  if (sol.sources.size() != sol.strengths.size() || sol.dipoles.size() != sol.dipole_strengths.size())
    throw DomainError("mfs solution has mismatched sizes");
}

void validate_noise(const NoiseSpec& noise) {
  if (!(noise.level >= 0.0) || !std::isfinite(noise.level)) throw DomainError("noise level must be finite and >= 0");
}

template <class Visit>
void perturb(const NoiseSpec& noise, Visit&& visit) {
  validate_noise(noise);
  if (noise.level == 0.0) return;
  std::mt19937_64 rng(noise.seed);
  std::normal_distribution<double> g;
  const double a = noise.level / std::sqrt(2.0);
  visit([&](cplx& u) {
    const double g1 = g(rng);
    const double g2 = g(rng);
    u *= cplx(1.0 + a * g1, a * g2);
  });
}

}  // namespace

void PolygonScatterer::validate() const {
  const std::size_t n = vertices.size();
  if (n < 3) throw DomainError("polygon needs at least 3 vertices");
  for (const auto& v : vertices)
    if (!v.allFinite()) throw DomainError("polygon vertices must be finite");
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e1 = vertices[(i + 1) % n] - vertices[i];
    const Vec2 e2 = vertices[(i + 2) % n] - vertices[(i + 1) % n];
    if (e1.norm() == 0.0) throw DomainError("polygon has repeated vertices");
    if (cross(e1, e2) <= 0.0) throw DomainError("polygon must be strictly convex and counterclockwise");
  }
  double turn = 0.0;
  for (std::size_t i = 0; i < n; ++i) turn += turning_angle(vertices, i);
  if (std::abs(turn - 2 * kPi) > 1e-8) throw DomainError("polygon boundary must not self-intersect");
}

Vec2 PolygonScatterer::centroid() const {
  double area = 0.0;
  Vec2 c = Vec2::Zero();
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = vertices[i];
    const Vec2& b = vertices[(i + 1) % n];
    const double w = cross(a, b);
    area += w;
    c += w * (a + b);
  }
  if (area == 0.0) throw DomainError("degenerate polygon");
  return c / (3.0 * area);
}

double PolygonScatterer::perimeter() const {
  double s = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) s += (vertices[(i + 1) % vertices.size()] - vertices[i]).norm();
  return s;
}

double PolygonScatterer::inradius() const {
  const Vec2 c = centroid();
  double r = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const Vec2& a = vertices[i];
    const Vec2 e = vertices[(i + 1) % vertices.size()] - a;
    r = std::min(r, cross(e, c - a) / e.norm());
  }
  return r;
}

bool PolygonScatterer::contains(const Vec2& x) const {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const Vec2& a = vertices[i];
    if (cross(vertices[(i + 1) % vertices.size()] - a, x - a) <= 0.0) return false;
  }
  return true;
}

PolygonScatterer PolygonScatterer::regular(int n, const Vec2& center, double circumradius, double phase) {
  if (n < 3) throw DomainError("regular polygon needs at least 3 vertices");
  if (!(circumradius > 0.0)) throw DomainError("circumradius must be positive");
  PolygonScatterer p;
  for (int i = 0; i < n; ++i) {
    const double t = phase + 2 * kPi * i / n;
    p.vertices.push_back(center + circumradius * Vec2(std::cos(t), std::sin(t)));
  }
  return p;
}

PolygonScatterer PolygonScatterer::square(const Vec2& center, double side) {
  if (!(side > 0.0)) throw DomainError("square side must be positive");
  const double h = side / 2;
  return {{center + Vec2(-h, -h), center + Vec2(h, -h), center + Vec2(h, h), center + Vec2(-h, h)}};
}

void MFSConfig::validate() const {
  if (n_sources < 4) throw DomainError("mfs n_sources must be >= 4");
  if (collocation_count() < 2 * n_sources) throw DomainError("mfs n_collocation must be >= 2 * n_sources");
  if (!(retreat > 0.0 && retreat < 1.0)) throw DomainError("mfs retreat must lie in (0, 1)");
  if (!(regularization >= 0.0)) throw DomainError("mfs regularization must be >= 0");
  if (!(corner_rounding >= 0.0 && corner_rounding < 1.0)) throw DomainError("mfs corner_rounding must lie in [0, 1)");
  if (!(grading_exponent >= 1.0)) throw DomainError("mfs grading_exponent must be >= 1");
  if (!(corner_angle > 0.0 && corner_angle < 180.0)) throw DomainError("mfs corner_angle must lie in (0, 180)");
  if (!(corner_fraction >= 0.0 && corner_fraction < 1.0)) throw DomainError("mfs corner_fraction must lie in [0, 1)");
  if (!(corner_clustering > 0.0)) throw DomainError("mfs corner_clustering must be positive");
  if (!(residual_tolerance > 0.0)) throw DomainError("mfs residual_tolerance must be positive");
}

struct MFSSolver::Impl {
  ElasticMedium m;
  MFSConfig cfg;
  std::vector<Vec2> sources, dipoles, colloc, check;
  Eigen::HouseholderQR<CMat> qr;
  Eigen::VectorXd column_scale;
  CMat check_matrix;
};

MFSSolver::MFSSolver(const PolygonScatterer& scat, const MFSConfig& cfg, const ElasticMedium& m)
    : impl_(std::make_unique<Impl>()) {
  scat.validate();
  cfg.validate();
  m.validate();
  Impl& s = *impl_;
  s.m = m;
  s.cfg = cfg;
  Layout lay = make_layout(scat, cfg);
  s.sources = std::move(lay.sources);
  s.dipoles = std::move(lay.dipoles);
  s.colloc = std::move(lay.colloc);
  s.check = std::move(lay.check);

  CMat A = kupradze_matrix(s.colloc, s.sources, s.dipoles, m);
  s.column_scale = A.colwise().norm().cwiseInverse().transpose();
  if (!s.column_scale.allFinite()) throw NumericFailure("mfs collocation matrix has a zero column");
  A = A * s.column_scale.cast<cplx>().asDiagonal();
  const Eigen::Index nu = A.cols();
  CMat aug(A.rows() + nu, nu);
  aug.topRows(A.rows()) = A;
  aug.bottomRows(nu) = std::sqrt(cfg.regularization) * A.norm() * CMat::Identity(nu, nu);
  s.qr.compute(aug);
  s.check_matrix = kupradze_matrix(s.check, s.sources, s.dipoles, m);
}

MFSSolver::~MFSSolver() = default;
MFSSolver::MFSSolver(MFSSolver&&) noexcept = default;

const std::vector<Vec2>& MFSSolver::sources() const { return impl_->sources; }
const std::vector<Vec2>& MFSSolver::dipoles() const { return impl_->dipoles; }
const std::vector<Vec2>& MFSSolver::collocation_points() const { return impl_->colloc; }
const std::vector<Vec2>& MFSSolver::check_points() const { return impl_->check; }

MFSSolution MFSSolver::solve(const PlaneWaveSpec& w, bool check) const {
  w.validate();
  const Impl& s = *impl_;
  const Eigen::Index nu = s.qr.matrixQR().cols();
  CVec rhs = CVec::Zero(2 * static_cast<Eigen::Index>(s.colloc.size()) + nu);
  rhs.head(2 * s.colloc.size()) = -incident_samples(s.colloc, w, s.m);
  CVec c = s.column_scale.cast<cplx>().asDiagonal() * s.qr.solve(rhs);
  if (!c.allFinite()) throw NumericFailure("mfs least-squares solve produced non-finite strengths");

  MFSSolution out;
  out.sources = s.sources;
  out.dipoles = s.dipoles;
  const std::size_t nq = s.sources.size();
  for (std::size_t q = 0; q < nq; ++q) out.strengths.push_back(c.segment<2>(2 * q));
  for (std::size_t q = 0; q < s.dipoles.size(); ++q) {
    CMat2 d;
    d.col(0) = c.segment<2>(2 * nq + 4 * q);
    d.col(1) = c.segment<2>(2 * nq + 4 * q + 2);
    out.dipole_strengths.push_back(d);
  }
  const CVec inc = incident_samples(s.check, w, s.m);
  const double scale = max_point_norm(inc);
  out.residual = scale > 0.0 ? max_point_norm(inc + s.check_matrix * c) / scale : 0.0;
  if (check && !(out.residual <= s.cfg.residual_tolerance)) {
    std::ostringstream os;
    os << "mfs boundary residual " << out.residual << " exceeds tolerance " << s.cfg.residual_tolerance
       << " with " << s.sources.size() << " point sources and " << s.dipoles.size() << " dipoles";
    throw NumericFailure(os.str());
  }
  return out;
}

MFSSolution mfs_solve(const PolygonScatterer& scat, const PlaneWaveSpec& w, const MFSConfig& cfg,
                      const ElasticMedium& m) {
  return MFSSolver(scat, cfg, m).solve(w);
}

FarFieldData mfs_farfield(const MFSSolution& sol, int M, const ElasticMedium& m, const PlaneWaveSpec& incident) {
  if (M < 1) throw DomainError("far-field sample count must be positive");
  check_sizes(sol);
  const CVec u = farfield_map(sol.sources, sol.dipoles, M, m) * stack(sol);
  FarFieldData d;
  d.M = M;
  d.incident = incident;
  d.p = u.head(M);
  d.s = u.tail(M);
  return d;
}

CVec2 mfs_field(const MFSSolution& sol, const Vec2& x, const ElasticMedium& m) {
  check_sizes(sol);
  CVec2 u = CVec2::Zero();
  for (std::size_t q = 0; q < sol.sources.size(); ++q) u += kupradze_tensor(x, sol.sources[q], m) * sol.strengths[q];
  for (std::size_t q = 0; q < sol.dipoles.size(); ++q) {
    const auto g = kupradze_gradient(x, sol.dipoles[q], m);
    u -= g[0] * sol.dipole_strengths[q].col(0) + g[1] * sol.dipole_strengths[q].col(1);
  }
  return u;
}

Target Target::disk(const Vec2& center, double radius) {
  Target t;
  t.kind = Kind::Disk;
  t.center = center;
  t.radius = radius;
  return t;
}

Target Target::polygon_target(const PolygonScatterer& p) {
  Target t;
  t.kind = Kind::Polygon;
  t.polygon = p;
  return t;
}

void Target::validate() const {
  if (kind == Kind::Disk) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("disk radius must be positive");
    if (!center.allFinite()) throw DomainError("disk center must be finite");
  } else {
    polygon.validate();
  }
}

bool Target::contains(const Vec2& x) const {
  return kind == Kind::Disk ? (x - center).norm() < radius : polygon.contains(x);
}

void add_noise(FarFieldData& d, const NoiseSpec& noise) {
  perturb(noise, [&](auto&& apply) {
    for (Eigen::Index j = 0; j < d.p.size(); ++j) apply(d.p(j));
    for (Eigen::Index j = 0; j < d.s.size(); ++j) apply(d.s(j));
  });
}

void add_noise(FarFieldMatrixData& d, const NoiseSpec& noise) {
  perturb(noise, [&](auto&& apply) {
    for (CMat* c : {&d.pp, &d.ps, &d.sp, &d.ss})
      for (Eigen::Index k = 0; k < c->size(); ++k) apply(c->data()[k]);
  });
}

FarFieldData generate_dataset(const Target& t, const PlaneWaveSpec& w, int M, const NoiseSpec& noise,
                              const ElasticMedium& m, const MFSConfig& cfg) {
  t.validate();
  w.validate();
  m.validate();
  validate_noise(noise);
  if (M < 1) throw DomainError("far-field sample count must be positive");
  FarFieldData d;
  if (t.kind == Target::Kind::Disk) {
    DiskSolver disk(t.radius, m, default_truncation(m.ks() * t.radius));
    d.M = M;
    d.incident = w;
    d.p.resize(M);
    d.s.resize(M);
    for (int j = 0; j < M; ++j) {
      const CVec2 u = disk_farfield(grid_angle(j, M), w, t.center, disk);
      d.p(j) = u(0);
      d.s(j) = u(1);
    }
  } else {
    d = mfs_farfield(mfs_solve(t.polygon, w, cfg, m), M, m, w);
  }
  add_noise(d, noise);
  return d;
}

FarFieldMatrixData generate_matrix_dataset(const Target& t, int M, const NoiseSpec& noise, const ElasticMedium& m,
                                           const MFSConfig& cfg) {
  t.validate();
  m.validate();
  validate_noise(noise);
  if (M < 1) throw DomainError("far-field sample count must be positive");
  FarFieldMatrixData d;
  d.M = M;
  for (CMat* c : {&d.pp, &d.ps, &d.sp, &d.ss}) c->resize(M, M);
  auto wave = [](int l, int M, int beta) {
    PlaneWaveSpec w;
    w.direction.theta = grid_angle(l, M);
    w.c_p = beta == 0 ? 1.0 : 0.0;
    w.c_s = beta == 0 ? 0.0 : 1.0;
    return w;
  };
  if (t.kind == Target::Kind::Disk) {
    DiskSolver disk(t.radius, m, default_truncation(m.ks() * t.radius));
    parallel_for(static_cast<std::size_t>(M), [&](std::size_t l) {
      for (int beta = 0; beta < 2; ++beta) {
        const PlaneWaveSpec w = wave(static_cast<int>(l), M, beta);
        for (int j = 0; j < M; ++j) {
          const CVec2 u = disk_farfield(grid_angle(j, M), w, t.center, disk);
          d.channel(0, beta)(j, l) = u(0);
          d.channel(1, beta)(j, l) = u(1);
        }
      }
    });
  } else {
    MFSSolver solver(t.polygon, cfg, m);
    const CMat G = farfield_map(solver.sources(), solver.dipoles(), M, m);
    std::vector<std::string> failures(static_cast<std::size_t>(M));
    parallel_for(static_cast<std::size_t>(M), [&](std::size_t l) {
      for (int beta = 0; beta < 2; ++beta) {
        try {
          const CVec u = G * stack(solver.solve(wave(static_cast<int>(l), M, beta)));
          d.channel(0, beta).col(l) = u.head(M);
          d.channel(1, beta).col(l) = u.tail(M);
        } catch (const NumericFailure& e) {
          failures[l] = e.what();
        }
      }
    });
    for (const auto& f : failures)
      if (!f.empty()) throw NumericFailure(f);
  }
  add_noise(d, noise);
  return d;
}

}  // namespace onewave
