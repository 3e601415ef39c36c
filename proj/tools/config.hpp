#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "onewave/forward.hpp"
#include "onewave/imaging.hpp"
#include "onewave/operator.hpp"

namespace onewave::app {

// Malformed or invalid configuration; line is 0 when no single line is at fault.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

enum class DataKind { Single, Multistatic };

struct ClassicalSettings {
  SpectrumKind kind = SpectrumKind::Full;
  Vec2 polarization{1.0, 0.0};
  double eps_cut = 1e-10;
};

struct SpectraSettings {
  double radius = 0.0;  // 0 uses the target disk radius
  int truncation = 0;   // 0 uses default_truncation(k_s R)
};

struct ScenarioConfig {
  std::string name = "scenario";
  ElasticMedium medium{2.0, 1.0, 10.0};
  Target target = Target::disk(Vec2(0.1, 0.0), 0.3);
  PlaneWaveSpec incident;
  Problem problem = Problem::Full;
  DataKind data = DataKind::Single;
  int M = 128;
  NoiseSpec noise;
  ImagingScenario imaging;
  MFSConfig mfs;
  ClassicalSettings classical;
  SpectraSettings spectra;

  void validate() const;  // throws ConfigError
};

// INI-like text: [section] headers, "key = value" lines, '#' or ';' comments.
ScenarioConfig parse_config(const std::string& text, const std::string& source = "config");
ScenarioConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const ScenarioConfig& cfg);

}  // namespace onewave::app
