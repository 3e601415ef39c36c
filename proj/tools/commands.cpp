#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "data_io.hpp"
#include "onewave/errors.hpp"
#include "onewave/indicators.hpp"
#include "onewave/spectra.hpp"
#include "onewave/util.hpp"

namespace onewave::app {

namespace {

std::string g6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& p) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + p.string() + " for writing");
  return out;
}

void check_medium(const DataFile& f, const ScenarioConfig& cfg, const std::filesystem::path& path) {
  if (f.M != cfg.M)
    throw ConfigError(path.string(), 0,
                      "data grid M = " + std::to_string(f.M) + " differs from config M = " + std::to_string(cfg.M));
  const auto& a = f.medium;
  const auto& b = cfg.medium;
  if (a.lambda != b.lambda || a.mu != b.mu || a.omega != b.omega)
    throw ConfigError(path.string(), 0, "data medium differs from config medium");
}

GridSummary finish_grid(const ScenarioConfig& cfg, const GridSpec& grid, const Eigen::MatrixXd& values,
                        const std::filesystem::path& out_dir, const std::string& stem) {
  std::filesystem::create_directories(out_dir);
  GridSummary s;
  s.csv = out_dir / (stem + ".csv");
  s.pgm = out_dir / (stem + ".pgm");
  export_grid(grid, values, s.csv, GridFormat::Csv);
  export_grid(grid, values, s.pgm, GridFormat::Pgm);
  try {
    s.contrast = interior_contrast(grid, values, [&](const Vec2& x) { return cfg.target.contains(x); });
  } catch (const DomainError&) {
    s.contrast = std::nan("");
  }
  s.centroid = superlevel_centroid(grid, values, 0.5);
  return s;
}

void report(std::ostream& log, const std::string& what, const GridSummary& s) {
  log << what << ": interior/exterior contrast " << g6(s.contrast) << ", half-max centroid (" << g6(s.centroid.x())
      << ", " << g6(s.centroid.y()) << ")\n  wrote " << s.csv.string() << "\n  wrote " << s.pgm.string() << "\n";
}

}  // namespace

void cmd_gen_data(const ScenarioConfig& cfg, const std::filesystem::path& out) {
  cfg.validate();
  if (cfg.data == DataKind::Single) {
    const auto d = generate_dataset(cfg.target, cfg.incident, cfg.M, cfg.noise, cfg.medium, cfg.mfs);
    auto f = open_out(out);
    write_data(f, d, cfg.medium, cfg.noise);
    if (!f) throw std::runtime_error("failed writing " + out.string());
  } else {
    const auto d = generate_matrix_dataset(cfg.target, cfg.M, cfg.noise, cfg.medium, cfg.mfs);
    auto f = open_out(out);
    write_data(f, d, cfg.medium, cfg.noise);
    if (!f) throw std::runtime_error("failed writing " + out.string());
  }
}

void cmd_spectra(const ScenarioConfig& cfg, const std::filesystem::path& out) {
  cfg.validate();
  const ElasticMedium& m = cfg.medium;
  const double R = cfg.spectra.radius > 0.0 ? cfg.spectra.radius : cfg.target.radius;
  const int N = cfg.spectra.truncation > 0 ? cfg.spectra.truncation : default_truncation(m.ks() * R);
  const DiskSpectrum spec(R, m, N);
  const double margin = admissibility_margin(spec.solver(), N);
  if (margin < cfg.imaging.indicator.admissibility)
    throw NumericFailure("radius " + g6(R) + " is near a Dirichlet eigenvalue (normalized det J_n = " + g6(margin) +
                         ")");

  auto f = open_out(out);
  f << "# radius = " << g6(R) << "\n# truncation = " << N
    << "\n# columns = n,j,Re_lambda,Im_lambda,log_abs_lambda,Re_sigma,Im_sigma\n";
  for (int n = -N; n <= N; ++n)
    for (const auto& p : spec.pairs(n)) {
      const cplx lam = p.lambda_F.value();
      f << n << ',' << p.j << ',' << g6(lam.real()) << ',' << g6(lam.imag()) << ',' << g6(p.lambda_F.log_magnitude)
        << ',' << g6(p.sigma.real()) << ',' << g6(p.sigma.imag()) << '\n';
    }
  if (!f) throw std::runtime_error("failed writing " + out.string());

  const auto ps_path = out.parent_path() / (out.stem().string() + "_ps" + out.extension().string());
  auto g = open_out(ps_path);
  g << "# radius = " << g6(R) << "\n# truncation = " << N
    << "\n# columns = n,channel,Re_eta,Im_eta,log_abs_eta,log_lambda_sharp\n";
  for (int n = -N; n <= N; ++n)
    for (const auto& p : spec.ps(n)) {
      const cplx eta = p.eta.value();
      g << n << ',' << (p.channel == Channel::P ? "p" : "s") << ',' << g6(eta.real()) << ',' << g6(eta.imag()) << ','
        << g6(p.eta.log_magnitude) << ',' << g6(p.log_lambda_sharp) << '\n';
    }
  if (!g) throw std::runtime_error("failed writing " + ps_path.string());
}

GridSummary cmd_image(const ScenarioConfig& cfg, const std::filesystem::path& data,
                      const std::filesystem::path& out_dir, std::ostream& log) {
  cfg.validate();
  const DataFile f = read_data(data);
  if (f.kind != DataKind::Single) throw ConfigError(data.string(), 0, "imaging needs single-wave data");
  check_medium(f, cfg, data);
  const bool need_p = cfg.problem != Problem::S, need_s = cfg.problem != Problem::P;
  if ((need_p && f.single.p.size() == 0) || (need_s && f.single.s.size() == 0))
    throw ConfigError(data.string(), 0, std::string("data channels do not match problem ") + problem_name(cfg.problem));

  ImagingScenario sc = cfg.imaging;
  sc.problem = cfg.problem;
  const IndicatorGrid g = run_imaging(sc, f.single, cfg.medium);
  GridSummary s = finish_grid(cfg, g.grid, g.image, out_dir, cfg.name + "_" + problem_name(cfg.problem));
  s.monotonicity_violations = g.monotonicity_violations;
  report(log, problem_name(cfg.problem), s);
  log << "  monotonicity violations " << s.monotonicity_violations << "\n";
  return s;
}

GridSummary cmd_classical(const ScenarioConfig& cfg, const std::filesystem::path& data,
                          const std::filesystem::path& out_dir, std::ostream& log) {
  cfg.validate();
  const DataFile f = read_data(data);
  if (f.kind != DataKind::Multistatic)
    throw ConfigError(data.string(), 0, "classical method needs multistatic data");
  check_medium(f, cfg, data);

  const SpectrumKind kind = cfg.classical.kind;
  const CMat F = kind == SpectrumKind::Full ? assemble_F(f.matrix, cfg.medium)
                 : assemble_F_alpha(f.matrix, cfg.medium, kind == SpectrumKind::PSharp ? Channel::P : Channel::S);
  const OperatorSpectrum spec = decompose_far_field_operator(F, cfg.medium, kind);

  const GridSpec& grid = cfg.imaging.grid;
  std::vector<Vec2> pts;
  pts.reserve(static_cast<std::size_t>(grid.nx) * grid.ny);
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix) pts.push_back(grid.point(ix, iy));
  const auto I = classical_indicator(spec, pts, cfg.classical.polarization, cfg.medium, {cfg.classical.eps_cut});
  Eigen::MatrixXd values(grid.ny, grid.nx);
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix) {
      const double v = I[static_cast<std::size_t>(iy) * grid.nx + ix];
      if (!(v > 0.0) || !std::isfinite(v)) throw NumericFailure("classical indicator vanished on the grid");
      values(iy, ix) = 1.0 / v;
    }
  const char* tag = kind == SpectrumKind::Full ? "F" : kind == SpectrumKind::PSharp ? "P" : "S";
  const GridSummary s = finish_grid(cfg, grid, values, out_dir, cfg.name + "_classical-" + tag);
  report(log, std::string("classical ") + tag, s);
  return s;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Elastic one-wave imaging workbench"};
  app.require_subcommand(1);
  std::string config, data, outp;
  unsigned threads = 0;
  std::optional<std::uint64_t> seed;

  auto add_common = [&](CLI::App* sub, bool needs_data) {
    sub->add_option("--config", config, "Scenario config file")->required();
    if (needs_data) sub->add_option("--data", data, "Far-field data file")->required();
    sub->add_option("--out", outp, "Output file or directory")->required();
    sub->add_option("--threads", threads, "Worker threads (0 = hardware)");
    sub->add_option("--seed-override", seed, "Replace the noise seed");
  };
  auto* gen = app.add_subcommand("gen-data", "Generate far-field data");
  auto* spectra = app.add_subcommand("spectra", "Export the disk eigensystem tables");
  auto* image = app.add_subcommand("image", "One-wave imaging from single-wave data");
  auto* classical = app.add_subcommand("classical", "Classical factorization indicator from multistatic data");
  add_common(gen, false);
  add_common(spectra, false);
  add_common(image, true);
  add_common(classical, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (threads > 0) set_thread_count(threads);
    ScenarioConfig cfg = load_config(config);
    if (seed) cfg.noise.seed = *seed;
    if (gen->parsed()) {
      cmd_gen_data(cfg, outp);
      out << "wrote " << outp << "\n";
    } else if (spectra->parsed()) {
      cmd_spectra(cfg, outp);
      out << "wrote " << outp << "\n";
    } else if (image->parsed()) {
      cmd_image(cfg, data, outp, out);
    } else {
      cmd_classical(cfg, data, outp, out);
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericFailure& e) {
    err << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace onewave::app
