#include "onewave/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>

#include "onewave/errors.hpp"
#include "onewave/util.hpp"

namespace onewave {

const char* problem_name(Problem p) {
  switch (p) {
    case Problem::Full: return "IP-F";
    case Problem::P: return "IP-P";
    case Problem::S: return "IP-S";
  }
  return "?";
}

void GridSpec::validate() const {
  if (nx < 2 || ny < 2) throw DomainError("grid needs at least 2 samples per axis");
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(y_min) || !std::isfinite(y_max))
    throw DomainError("grid bounds must be finite");
  if (!(x_max > x_min) || !(y_max > y_min)) throw DomainError("grid bounds must be increasing");
}

Vec2 GridSpec::point(int ix, int iy) const {
  return {x_min + (x_max - x_min) * ix / (nx - 1), y_min + (y_max - y_min) * iy / (ny - 1)};
}

std::vector<double> ImagingScenario::default_radii(double R_meas, int count) {
  if (count < 1) throw DomainError("radius count must be positive");
  std::vector<double> r(count);
  for (int i = 0; i < count; ++i)
    r[i] = count == 1 ? 0.5 * R_meas : R_meas * (0.5 + 1.4 * i / (count - 1));
  return r;
}

void ImagingScenario::validate() const {
  if (!(R_meas > 0.0) || !std::isfinite(R_meas)) throw DomainError("R_meas must be positive");
  if (n_centers < 1) throw DomainError("n_centers must be positive");
  if (radii.empty()) throw DomainError("radii list is empty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || !(radii[i] < 2.0 * R_meas))
      throw DomainError("radii must lie in (0, 2 R_meas)");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw DomainError("radii must be strictly increasing");
  }
  grid.validate();
  if (truncation < 0) throw DomainError("truncation must be non-negative");
  for (int c : center_subset)
    if (c < 0 || c >= n_centers) throw DomainError("center subset index out of range");
  if (!(indicator.tau > 0.0)) throw DomainError("tau must be positive");
}

std::vector<Vec2> ImagingScenario::centers() const {
  std::vector<Vec2> z(n_centers);
  for (int n = 0; n < n_centers; ++n) {
    const double a = 2.0 * std::numbers::pi * n / n_centers;
    z[n] = R_meas * Vec2(std::cos(a), std::sin(a));
  }
  return z;
}

std::vector<double> sweep_weights(const std::vector<IndicatorValue>& values) {
  double ref = std::numeric_limits<double>::infinity();
  for (const auto& v : values)
    if (std::isfinite(v.log_W)) ref = std::min(ref, v.log_W);
  std::vector<double> w(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    w[i] = values[i].contained() ? 1.0 : std::exp(-(values[i].log_W - ref));
  return w;
}

int radius_bin(const std::vector<double>& radii, double r) {
  const auto it = std::upper_bound(radii.begin(), radii.end(), r);
  return static_cast<int>(it - radii.begin()) - 1;
}

namespace {

void check_channels(const ImagingScenario& sc, const FarFieldData& d) {
  if (d.M < 4) throw DomainError("far-field grid size must be at least 4");
  const bool need_p = sc.problem != Problem::S, need_s = sc.problem != Problem::P;
  if ((need_p && d.p.size() != d.M) || (need_s && d.s.size() != d.M)) {
    std::ostringstream os;
    os << "data channels do not match problem " << problem_name(sc.problem);
    throw DomainError(os.str());
  }
  if ((need_p && !d.p.allFinite()) || (need_s && !d.s.allFinite()))
    throw DomainError("far-field data contain non-finite values");
}

}  // namespace

IndicatorGrid run_imaging(const ImagingScenario& sc, const FarFieldData& data, const ElasticMedium& m) {
  sc.validate();
  m.validate();
  check_channels(sc, data);
  const GridSpec& g = sc.grid;
  const double lim = 2.0 * sc.R_meas;
  if (std::hypot(std::max(-g.x_min, g.x_max), std::max(-g.y_min, g.y_max)) > lim)
    warn("imaging grid extends outside the disk of radius 2 R_meas");

  std::vector<int> ids = sc.center_subset;
  if (ids.empty())
    for (int n = 0; n < sc.n_centers; ++n) ids.push_back(n);
  const auto all = sc.centers();
  const std::size_t nr = sc.radii.size();

  std::vector<int> trunc(nr);
  for (std::size_t k = 0; k < nr; ++k) {
    trunc[k] = sc.truncation > 0 ? sc.truncation : default_indicator_truncation(data.M, m.ks() * sc.radii[k]);
    if (trunc[k] > data.M / 4) throw DomainError("truncation exceeds M/4");
  }
  std::vector<std::unique_ptr<DiskSpectrum>> spectra(nr);
  parallel_for(nr, [&](std::size_t k) { spectra[k] = std::make_unique<DiskSpectrum>(sc.radii[k], m, trunc[k]); });

  // One indicator per (center, radius) pair.
  IndicatorGrid out;
  out.grid = g;
  out.sweeps.resize(ids.size());
  for (std::size_t c = 0; c < ids.size(); ++c) {
    out.sweeps[c].center = all[ids[c]];
    out.sweeps[c].values.resize(nr);
  }
  parallel_for(ids.size() * nr, [&](std::size_t i) {
    const std::size_t c = i / nr, k = i % nr;
    const Vec2& z = out.sweeps[c].center;
    IndicatorValue& v = out.sweeps[c].values[k];
    switch (sc.problem) {
      case Problem::Full: v = one_wave_W(data, *spectra[k], z, trunc[k], sc.indicator); break;
      case Problem::P: v = one_wave_W_alpha(data.p, *spectra[k], z, trunc[k], Channel::P, sc.indicator); break;
      case Problem::S: v = one_wave_W_alpha(data.s, *spectra[k], z, trunc[k], Channel::S, sc.indicator); break;
    }
  });
  for (auto& s : out.sweeps) {
    s.weights = sweep_weights(s.values);
    bool seen = false;
    for (const auto& v : s.values) {
      if (v.contained())
        seen = true;
      else if (seen)
        ++out.monotonicity_violations;
    }
  }

  out.index = Eigen::MatrixXd::Zero(g.ny, g.nx);
  parallel_for(static_cast<std::size_t>(g.ny), [&](std::size_t iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      const Vec2 x = g.point(ix, static_cast<int>(iy));
      double acc = 0.0;
      for (const auto& s : out.sweeps) {
        const int b = radius_bin(sc.radii, (x - s.center).norm());
        if (b >= 0) acc += s.weights[b];
      }
      out.index(iy, ix) = acc;
    }
  });
  out.image = (-out.index.array()).exp().matrix();
  return out;
}

double interior_contrast(const GridSpec& grid, const Eigen::MatrixXd& values,
                         const std::function<bool(const Vec2&)>& inside) {
  double in = 0.0, out = 0.0;
  int ni = 0, no = 0;
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix) {
      if (inside(grid.point(ix, iy))) {
        in += values(iy, ix);
        ++ni;
      } else {
        out += values(iy, ix);
        ++no;
      }
    }
  if (ni == 0 || no == 0) throw DomainError("contrast needs grid points on both sides");
  return (in / ni) / (out / no);
}

Vec2 superlevel_centroid(const GridSpec& grid, const Eigen::MatrixXd& values, double fraction) {
  const double level = fraction * values.maxCoeff();
  Vec2 acc = Vec2::Zero();
  int n = 0;
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix)
      if (values(iy, ix) >= level) {
        acc += grid.point(ix, iy);
        ++n;
      }
  return acc / n;
}

void export_grid(const GridSpec& grid, const Eigen::MatrixXd& values, const std::filesystem::path& path,
                 GridFormat format) {
  grid.validate();
  if (values.rows() != grid.ny || values.cols() != grid.nx) throw DomainError("grid values do not match geometry");
  if (!values.allFinite()) throw DomainError("grid values must be finite");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  if (format == GridFormat::Csv) {
    out.precision(6);
    for (int iy = 0; iy < grid.ny; ++iy)
      for (int ix = 0; ix < grid.nx; ++ix) {
        const Vec2 x = grid.point(ix, iy);
        out << x.x() << ',' << x.y() << ',' << values(iy, ix) << '\n';
      }
  } else {
    const double lo = values.minCoeff(), hi = values.maxCoeff();
    out << "P5\n" << grid.nx << ' ' << grid.ny << "\n65535\n";
    // Top row of the image is the largest y.
    for (int iy = grid.ny - 1; iy >= 0; --iy)
      for (int ix = 0; ix < grid.nx; ++ix) {
        const double t = hi > lo ? (values(iy, ix) - lo) / (hi - lo) : 0.0;
        const auto v = static_cast<std::uint16_t>(std::lround(65535.0 * t));
        out.put(static_cast<char>(v >> 8));
        out.put(static_cast<char>(v & 0xff));
      }
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void export_grid(const IndicatorGrid& g, const std::filesystem::path& path, GridFormat format) {
  export_grid(g.grid, g.image, path, format);
}

}  // namespace onewave
