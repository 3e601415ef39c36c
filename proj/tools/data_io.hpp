#pragma once

#include <filesystem>
#include <iosfwd>

#include "config.hpp"

namespace onewave::app {

struct DataFile {
  DataKind kind = DataKind::Single;
  ElasticMedium medium;
  int M = 0;
  FarFieldData single;        // a missing channel is left empty
  FarFieldMatrixData matrix;
};

// Header lines "# key = value", then rows "channel,j,l,Re,Im" at 17 significant digits.
void write_data(std::ostream& out, const FarFieldData& d, const ElasticMedium& m, const NoiseSpec& noise);
void write_data(std::ostream& out, const FarFieldMatrixData& d, const ElasticMedium& m, const NoiseSpec& noise);

// Throws ConfigError anchored at the offending line.
DataFile read_data(std::istream& in, const std::string& source = "data");
DataFile read_data(const std::filesystem::path& path);

}  // namespace onewave::app
