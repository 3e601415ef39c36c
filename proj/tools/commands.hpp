#pragma once

#include <filesystem>
#include <iosfwd>

#include "config.hpp"

namespace onewave::app {

struct GridSummary {
  std::filesystem::path csv, pgm;
  double contrast = 0.0;  // interior over exterior mean of the exported grid
  Vec2 centroid = Vec2::Zero();  // of the half-maximum superlevel set
  int monotonicity_violations = 0;
};

// Writes the dataset for cfg (single wave or multistatic) to out.
void cmd_gen_data(const ScenarioConfig& cfg, const std::filesystem::path& out);

// Writes the disk eigensystem table to out and the P/S table to <stem>_ps<ext>.
// Throws NumericFailure when the test radius is inadmissible.
void cmd_spectra(const ScenarioConfig& cfg, const std::filesystem::path& out);

// Runs the one-wave imaging scheme; writes <name>_<problem>.csv/.pgm into out_dir.
GridSummary cmd_image(const ScenarioConfig& cfg, const std::filesystem::path& data,
                      const std::filesystem::path& out_dir, std::ostream& log);

// Evaluates 1/I of the classical Picard indicator on the grid; writes <name>_classical-<kind>.csv/.pgm.
GridSummary cmd_classical(const ScenarioConfig& cfg, const std::filesystem::path& data,
                          const std::filesystem::path& out_dir, std::ostream& log);

// Exit codes: 0 success, 1 unexpected or I/O failure, 2 configuration or input error, 3 numeric failure.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace onewave::app
