#pragma once

#include <filesystem>
#include <functional>
#include <vector>

#include "onewave/indicators.hpp"

namespace onewave {

enum class Problem { Full, P, S };

const char* problem_name(Problem p);  // "IP-F", "IP-P", "IP-S"

// Uniform nx x ny sample lattice over [x_min, x_max] x [y_min, y_max], both ends included.
struct GridSpec {
  double x_min = -1.5, x_max = 1.5;
  double y_min = -1.5, y_max = 1.5;
  int nx = 101, ny = 101;

  void validate() const;
  Vec2 point(int ix, int iy) const;
};

struct ImagingScenario {
  double R_meas = 2.0;
  int n_centers = 16;
  std::vector<double> radii = default_radii(2.0);
  GridSpec grid;
  Problem problem = Problem::Full;
  int truncation = 0;  // 0 selects default_indicator_truncation per radius
  std::vector<int> center_subset;  // indices into centers(); empty uses all
  IndicatorOptions indicator;

  // count radii uniform in [0.5 R_meas, 1.9 R_meas]
  static std::vector<double> default_radii(double R_meas, int count = 24);
  void validate() const;
  std::vector<Vec2> centers() const;  // z_n = R_meas (cos, sin)(2 pi n / n_centers)
};

struct CenterSweep {
  Vec2 center = Vec2::Zero();
  std::vector<IndicatorValue> values;  // one per radius
  std::vector<double> weights;         // I_n on each bin
};

struct IndicatorGrid {
  GridSpec grid;
  Eigen::MatrixXd index;  // sum over centers, ny x nx layout (row iy, column ix)
  Eigen::MatrixXd image;  // exp(-index)
  std::vector<CenterSweep> sweeps;
  int monotonicity_violations = 0;
};

// Bin weight 1 for contained disks, else exp(-(log_W - min log_W over the sweep)).
std::vector<double> sweep_weights(const std::vector<IndicatorValue>& values);

// Index of the bin [h_m, h_{m+1}) holding r, -1 below h_1, clipped to the last bin.
int radius_bin(const std::vector<double>& radii, double r);

IndicatorGrid run_imaging(const ImagingScenario& sc, const FarFieldData& data, const ElasticMedium& m);

// Mean of values over grid points where inside(x) holds, over the mean elsewhere.
double interior_contrast(const GridSpec& grid, const Eigen::MatrixXd& values,
                         const std::function<bool(const Vec2&)>& inside);

// Centroid of the grid points with value >= fraction * max.
Vec2 superlevel_centroid(const GridSpec& grid, const Eigen::MatrixXd& values, double fraction = 0.5);

enum class GridFormat { Csv, Pgm };

// CSV rows "x,y,value" or a 16-bit binary PGM scaled to [0, 65535] (a flat grid maps to 0).
void export_grid(const GridSpec& grid, const Eigen::MatrixXd& values, const std::filesystem::path& path,
                 GridFormat format);
void export_grid(const IndicatorGrid& g, const std::filesystem::path& path, GridFormat format);

}  // namespace onewave
