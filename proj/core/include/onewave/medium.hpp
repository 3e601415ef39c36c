#pragma once

#include <array>

#include <Eigen/Dense>

#include "onewave/specfun.hpp"

namespace onewave {

using Vec2 = Eigen::Vector2d;
using CVec2 = Eigen::Vector2cd;
using CMat2 = Eigen::Matrix2cd;

struct ElasticMedium {
  double lambda = 2.0;
  double mu = 1.0;
  double omega = 1.0;

  static ElasticMedium make(double lambda, double mu, double omega);
  void validate() const;
  double kp() const;
  double ks() const;
};

struct Direction {
  double theta = 0.0;

  Vec2 d() const;
  Vec2 perp() const;  // (-sin theta, cos theta)
};

struct PlaneWaveSpec {
  Direction direction;
  cplx c_p{1.0, 0.0};
  cplx c_s{0.0, 0.0};

  void validate() const;
};

// c_p d e^{i k_p x.d} + c_s d_perp e^{i k_s x.d}
CVec2 plane_wave(const Vec2& x, const PlaneWaveSpec& w, const ElasticMedium& m);

CMat2 kupradze_tensor(const Vec2& x, const Vec2& y, const ElasticMedium& m);

// Partial derivatives of the Kupradze tensor with respect to x_0 and x_1.
std::array<CMat2, 2> kupradze_gradient(const Vec2& x, const Vec2& y, const ElasticMedium& m);

struct PointSourceFarField {
  CVec2 full;
  cplx p_part;
  cplx s_part;
};

PointSourceFarField point_source_farfield(double theta_x, const Vec2& y, const Vec2& a,
                                          const ElasticMedium& m);

// Linear map a -> (p_part, s_part) of the point-source far field.
CMat2 point_source_farfield_map(double theta_x, const Vec2& y, const ElasticMedium& m);

}  // namespace onewave
