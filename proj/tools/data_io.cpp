#include "data_io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "onewave/errors.hpp"

namespace onewave::app {

namespace {

const char* kFormat = "onewave-farfield 1";

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void header(std::ostream& out, const char* kind, int M, const ElasticMedium& m, const NoiseSpec& noise) {
  out << "# format = " << kFormat << "\n# kind = " << kind << "\n# M = " << M << "\n# lambda = " << fmt(m.lambda)
      << "\n# mu = " << fmt(m.mu) << "\n# omega = " << fmt(m.omega) << "\n# noise_level = " << fmt(noise.level)
      << "\n# noise_seed = " << noise.seed << "\n";
}

void row(std::ostream& out, const char* ch, int j, int l, cplx v) {
  out << ch << ',' << j << ',' << l << ',' << fmt(v.real()) << ',' << fmt(v.imag()) << '\n';
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void write_data(std::ostream& out, const FarFieldData& d, const ElasticMedium& m, const NoiseSpec& noise) {
  d.validate();
  header(out, "single", d.M, m, noise);
  out << "# theta = " << fmt(d.incident.direction.theta) << "\n# c_p = " << fmt(d.incident.c_p.real()) << ", "
      << fmt(d.incident.c_p.imag()) << "\n# c_s = " << fmt(d.incident.c_s.real()) << ", "
      << fmt(d.incident.c_s.imag()) << "\n# columns = channel,j,l,Re,Im\n";
  for (int j = 0; j < d.M; ++j) row(out, "p", j, 0, d.p(j));
  for (int j = 0; j < d.M; ++j) row(out, "s", j, 0, d.s(j));
}

void write_data(std::ostream& out, const FarFieldMatrixData& d, const ElasticMedium& m, const NoiseSpec& noise) {
  d.validate();
  header(out, "multistatic", d.M, m, noise);
  out << "# columns = channel,j,l,Re,Im\n";
  const char* names[2][2] = {{"pp", "ps"}, {"sp", "ss"}};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int j = 0; j < d.M; ++j)
        for (int l = 0; l < d.M; ++l) row(out, names[a][b], j, l, d.channel(a, b)(j, l));
}

DataFile read_data(std::istream& in, const std::string& source) {
  std::map<std::string, std::string> hdr;
  DataFile f;
  std::string line;
  int n = 0;
  bool rows = false;
  std::map<std::string, std::vector<bool>> filled;
  auto fail = [&](const std::string& msg) { throw ConfigError(source, n, msg); };
  auto number = [&](const std::string& key, const std::string& v) {
    try {
      std::size_t pos = 0;
      const double x = std::stod(v, &pos);
      if (trim(v.substr(pos)) != "") throw std::invalid_argument(v);
      return x;
    } catch (const std::exception&) {
      fail("bad value for '" + key + "': '" + v + "'");
    }
    return 0.0;
  };
  auto complex_value = [&](const std::string& key) {
    const std::string v = hdr.count(key) ? hdr[key] : "0, 0";
    const auto comma = v.find(',');
    if (comma == std::string::npos) return cplx(number(key, v), 0.0);
    return cplx(number(key, v.substr(0, comma)), number(key, v.substr(comma + 1)));
  };
  auto setup = [&]() {
    for (const char* k : {"format", "kind", "M", "lambda", "mu", "omega"})
      if (!hdr.count(k)) fail(std::string("missing header key '") + k + "'");
    if (hdr["format"] != kFormat) fail("unsupported format '" + hdr["format"] + "'");
    if (hdr["kind"] == "single") f.kind = DataKind::Single;
    else if (hdr["kind"] == "multistatic") f.kind = DataKind::Multistatic;
    else fail("unknown data kind '" + hdr["kind"] + "'");
    const double M = number("M", hdr["M"]);
    if (M < 1 || M != static_cast<int>(M)) fail("M must be a positive integer");
    f.M = static_cast<int>(M);
    f.medium = {number("lambda", hdr["lambda"]), number("mu", hdr["mu"]), number("omega", hdr["omega"])};
    if (f.kind == DataKind::Single) {
      f.single.M = f.M;
      if (hdr.count("theta")) f.single.incident.direction.theta = number("theta", hdr["theta"]);
      f.single.incident.c_p = complex_value("c_p");
      f.single.incident.c_s = complex_value("c_s");
    } else {
      f.matrix.M = f.M;
    }
  };
  while (std::getline(in, line)) {
    ++n;
    const std::string s = trim(line);
    if (s.empty()) continue;
    if (s[0] == '#') {
      if (rows) fail("header line after data rows");
      const auto eq = s.find('=');
      if (eq == std::string::npos) fail("malformed header line");
      hdr[trim(s.substr(1, eq - 1))] = trim(s.substr(eq + 1));
      continue;
    }
    if (!rows) {
      setup();
      rows = true;
    }
    std::vector<std::string> cols;
    std::istringstream ss(s);
    std::string c;
    while (std::getline(ss, c, ',')) cols.push_back(trim(c));
    if (cols.size() != 5) fail("expected 5 columns 'channel,j,l,Re,Im'");
    const std::string& ch = cols[0];
    const double jd = number("j", cols[1]), ld = number("l", cols[2]);
    const int j = static_cast<int>(jd), l = static_cast<int>(ld);
    if (j != jd || l != ld || j < 0 || j >= f.M || l < 0 || l >= f.M) fail("index out of range");
    const cplx v(number("Re", cols[3]), number("Im", cols[4]));
    CVec* vec = nullptr;
    CMat* mat = nullptr;
    if (f.kind == DataKind::Single) {
      if (l != 0) fail("single-wave rows need l = 0");
      if (ch == "p") vec = &f.single.p;
      else if (ch == "s") vec = &f.single.s;
      else fail("unknown channel '" + ch + "'");
    } else {
      if (ch == "pp") mat = &f.matrix.pp;
      else if (ch == "ps") mat = &f.matrix.ps;
      else if (ch == "sp") mat = &f.matrix.sp;
      else if (ch == "ss") mat = &f.matrix.ss;
      else fail("unknown channel '" + ch + "'");
    }
    auto& mask = filled[ch];
    if (mask.empty()) {
      mask.assign(static_cast<std::size_t>(f.M) * (mat ? f.M : 1), false);
      if (vec) vec->setZero(f.M);
      if (mat) mat->setZero(f.M, f.M);
    }
    const std::size_t idx = static_cast<std::size_t>(j) * (mat ? f.M : 1) + l;
    if (mask[idx]) fail("duplicate row for channel " + ch);
    mask[idx] = true;
    if (vec) (*vec)(j) = v;
    if (mat) (*mat)(j, l) = v;
  }
  if (!rows) fail("no data rows");
  n = 0;
  for (const auto& [ch, mask] : filled)
    for (bool b : mask)
      if (!b) fail("channel " + ch + " is incomplete");
  return f;
}

DataFile read_data(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), 0, "cannot open data file");
  return read_data(in, path.string());
}

}  // namespace onewave::app
