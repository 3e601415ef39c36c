#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "onewave/disk.hpp"
#include "onewave/farfield.hpp"

namespace onewave {

// Convex polygon, vertices counterclockwise.
struct PolygonScatterer {
  std::vector<Vec2> vertices;

  void validate() const;
  Vec2 centroid() const;
  double perimeter() const;
  double inradius() const;  // distance from the centroid to the nearest edge line
  bool contains(const Vec2& x) const;

  static PolygonScatterer regular(int n, const Vec2& center, double circumradius, double phase = 0.0);
  static PolygonScatterer square(const Vec2& center, double side);
};

struct MFSConfig {
  int n_sources = 192;
  int n_collocation = 0;  // 0 selects 4 * n_sources
  double retreat = 0.7;
  double regularization = 1e-12;  // ridge rho = regularization * ||A||_F^2
  double corner_rounding = 0.05;  // rounding radius of the source curve over the inradius
  double grading_exponent = 2.0;
  double corner_angle = 15.0;  // turning angle in degrees above which a vertex is treated as a corner
  double corner_fraction = 0.7;  // share of sources placed as dipole clusters on corner bisectors
  double corner_clustering = 4.0;  // distances l exp(-c (sqrt(n) - sqrt(k))), k = 1..n
  double residual_tolerance = 1e-4;

  void validate() const;
  int collocation_count() const { return n_collocation > 0 ? n_collocation : 4 * n_sources; }
};

// Point forces plus force dipoles; column c of a dipole strength multiplies d/dy_c of the Kupradze tensor.
struct MFSSolution {
  std::vector<Vec2> sources;
  std::vector<CVec2> strengths;
  std::vector<Vec2> dipoles;
  std::vector<CMat2> dipole_strengths;
  double residual = 0.0;  // max |u^i + u^s| / max |u^i| over check points
};

// Factorizes the collocation system once; solve() handles any incident plane wave.
class MFSSolver {
 public:
  MFSSolver(const PolygonScatterer& scat, const MFSConfig& cfg, const ElasticMedium& m);
  ~MFSSolver();
  MFSSolver(MFSSolver&&) noexcept;

  // Throws NumericFailure when the residual exceeds cfg.residual_tolerance and check is true.
  MFSSolution solve(const PlaneWaveSpec& w, bool check = true) const;

  const std::vector<Vec2>& sources() const;
  const std::vector<Vec2>& dipoles() const;
  const std::vector<Vec2>& collocation_points() const;
  const std::vector<Vec2>& check_points() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

MFSSolution mfs_solve(const PolygonScatterer& scat, const PlaneWaveSpec& w, const MFSConfig& cfg,
                      const ElasticMedium& m);

// Far field of the source superposition on the uniform grid.
FarFieldData mfs_farfield(const MFSSolution& sol, int M, const ElasticMedium& m, const PlaneWaveSpec& incident = {});

// Scattered displacement of the source superposition.
CVec2 mfs_field(const MFSSolution& sol, const Vec2& x, const ElasticMedium& m);

struct Target {
  enum class Kind { Disk, Polygon };
  Kind kind = Kind::Disk;
  Vec2 center = Vec2::Zero();  // disk only
  double radius = 0.0;         // disk only
  PolygonScatterer polygon;    // polygon only

  static Target disk(const Vec2& center, double radius);
  static Target polygon_target(const PolygonScatterer& p);
  void validate() const;
  bool contains(const Vec2& x) const;
};

struct NoiseSpec {
  double level = 0.0;
  std::uint64_t seed = 0;
};

// Multiplies every sample by 1 + level (g1 + i g2) / sqrt(2), g standard normal, in storage order.
void add_noise(FarFieldData& d, const NoiseSpec& noise);
void add_noise(FarFieldMatrixData& d, const NoiseSpec& noise);

FarFieldData generate_dataset(const Target& t, const PlaneWaveSpec& w, int M, const NoiseSpec& noise,
                              const ElasticMedium& m, const MFSConfig& cfg = {});
FarFieldMatrixData generate_matrix_dataset(const Target& t, int M, const NoiseSpec& noise, const ElasticMedium& m,
                                           const MFSConfig& cfg = {});

}  // namespace onewave
