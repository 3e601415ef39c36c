#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "onewave/errors.hpp"

namespace onewave::app {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double to_double(const std::string& s) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("expected a number, got '" + s + "'");
  }
  if (trim(s.substr(pos)) != "") throw std::invalid_argument("expected a number, got '" + s + "'");
  if (!std::isfinite(v)) throw std::invalid_argument("value must be finite");
  return v;
}

long long to_integer(const std::string& s) {
  std::size_t pos = 0;
  long long v;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("expected an integer, got '" + s + "'");
  }
  if (trim(s.substr(pos)) != "") throw std::invalid_argument("expected an integer, got '" + s + "'");
  return v;
}

int to_int(const std::string& s) {
  const long long v = to_integer(s);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    throw std::invalid_argument("integer out of range");
  return static_cast<int>(v);
}

double positive(const std::string& s) {
  const double v = to_double(s);
  if (!(v > 0.0)) throw std::invalid_argument("value must be positive");
  return v;
}

double non_negative(const std::string& s) {
  const double v = to_double(s);
  if (v < 0.0) throw std::invalid_argument("value must be non-negative");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

std::vector<double> to_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& t : split(s, ','))
    if (!t.empty()) out.push_back(to_double(t));
  return out;
}

Vec2 to_vec2(const std::string& s) {
  const auto v = to_list(s);
  if (v.size() != 2) throw std::invalid_argument("expected 'x, y'");
  return {v[0], v[1]};
}

cplx to_complex(const std::string& s) {
  const auto v = to_list(s);
  if (v.size() == 1) return {v[0], 0.0};
  if (v.size() == 2) return {v[0], v[1]};
  throw std::invalid_argument("expected 're' or 're, im'");
}

// "x, y; x, y; ..."
std::vector<Vec2> to_vertices(const std::string& s) {
  std::vector<Vec2> out;
  for (const auto& t : split(s, ';'))
    if (!t.empty()) out.push_back(to_vec2(t));
  return out;
}

Problem to_problem(const std::string& s) {
  const std::string v = lower(s);
  if (v == "ip-f" || v == "full") return Problem::Full;
  if (v == "ip-p" || v == "p") return Problem::P;
  if (v == "ip-s" || v == "s") return Problem::S;
  throw std::invalid_argument("problem must be IP-F, IP-P or IP-S");
}

struct Builder {
  ScenarioConfig cfg;
  std::string shape = "disk";
  Vec2 center = Vec2(0.1, 0.0);
  double radius = 0.3, side = 0.6, circumradius = 0.3, phase = 0.0;
  int sides = 6;
  std::vector<Vec2> vertices;
  bool have_radii = false, cp_set = false, cs_set = false;
  int radii_count = 24;
  double radii_min = 0.0, radii_max = 0.0;  // 0 selects 0.5 R_meas, 1.9 R_meas

  using Setter = std::function<void(const std::string&)>;
  std::map<std::string, std::map<std::string, Setter>> keys;

  Builder() {
    auto& c = cfg;
    keys["scenario"] = {{"name", [&](auto& v) {
                           if (v.empty() || v.find_first_of("/\\ \t") != std::string::npos)
                             throw std::invalid_argument("name must be non-empty without spaces or slashes");
                           c.name = v;
                         }}};
    keys["medium"] = {{"lambda", [&](auto& v) { c.medium.lambda = to_double(v); }},
                      {"mu", [&](auto& v) { c.medium.mu = positive(v); }},
                      {"omega", [&](auto& v) { c.medium.omega = positive(v); }}};
    keys["target"] = {{"shape", [&](auto& v) {
                         shape = lower(v);
                         if (shape != "disk" && shape != "polygon" && shape != "square" && shape != "regular")
                           throw std::invalid_argument("shape must be disk, polygon, square or regular");
                       }},
                      {"center", [&](auto& v) { center = to_vec2(v); }},
                      {"radius", [&](auto& v) { radius = positive(v); }},
                      {"side", [&](auto& v) { side = positive(v); }},
                      {"sides", [&](auto& v) { sides = to_int(v); }},
                      {"circumradius", [&](auto& v) { circumradius = positive(v); }},
                      {"phase", [&](auto& v) { phase = to_double(v); }},
                      {"vertices", [&](auto& v) { vertices = to_vertices(v); }}};
    keys["incident"] = {{"theta", [&](auto& v) { c.incident.direction.theta = to_double(v); }},
                        {"c_p", [&](auto& v) { c.incident.c_p = to_complex(v); cp_set = true; }},
                        {"c_s", [&](auto& v) { c.incident.c_s = to_complex(v); cs_set = true; }},
                        {"problem", [&](auto& v) { c.problem = to_problem(v); }},
                        {"data", [&](auto& v) {
                           const std::string k = lower(v);
                           if (k == "single") c.data = DataKind::Single;
                           else if (k == "multistatic") c.data = DataKind::Multistatic;
                           else throw std::invalid_argument("data must be single or multistatic");
                         }}};
    keys["grid"] = {{"M", [&](auto& v) { c.M = to_int(v); }}};
    keys["noise"] = {{"level", [&](auto& v) { c.noise.level = non_negative(v); }},
                     {"seed", [&](auto& v) {
                        const long long s = to_integer(v);
                        if (s < 0) throw std::invalid_argument("seed must be non-negative");
                        c.noise.seed = static_cast<std::uint64_t>(s);
                      }}};
    auto& im = c.imaging;
    keys["imaging"] = {{"R_meas", [&](auto& v) { im.R_meas = positive(v); }},
                       {"n_centers", [&](auto& v) { im.n_centers = to_int(v); }},
                       {"radii", [&](auto& v) { im.radii = to_list(v); have_radii = true; }},
                       {"radii_count", [&](auto& v) { radii_count = to_int(v); }},
                       {"radii_min", [&](auto& v) { radii_min = positive(v); }},
                       {"radii_max", [&](auto& v) { radii_max = positive(v); }},
                       {"truncation", [&](auto& v) { im.truncation = to_int(v); }},
                       {"x_min", [&](auto& v) { im.grid.x_min = to_double(v); }},
                       {"x_max", [&](auto& v) { im.grid.x_max = to_double(v); }},
                       {"y_min", [&](auto& v) { im.grid.y_min = to_double(v); }},
                       {"y_max", [&](auto& v) { im.grid.y_max = to_double(v); }},
                       {"nx", [&](auto& v) { im.grid.nx = to_int(v); }},
                       {"ny", [&](auto& v) { im.grid.ny = to_int(v); }}};
    keys["indicator"] = {{"tau", [&](auto& v) { im.indicator.tau = positive(v); }},
                         {"admissibility", [&](auto& v) { im.indicator.admissibility = non_negative(v); }}};
    auto& mf = c.mfs;
    keys["mfs"] = {{"n_sources", [&](auto& v) { mf.n_sources = to_int(v); }},
                   {"n_collocation", [&](auto& v) { mf.n_collocation = to_int(v); }},
                   {"retreat", [&](auto& v) { mf.retreat = to_double(v); }},
                   {"regularization", [&](auto& v) { mf.regularization = to_double(v); }},
                   {"corner_rounding", [&](auto& v) { mf.corner_rounding = to_double(v); }},
                   {"grading_exponent", [&](auto& v) { mf.grading_exponent = to_double(v); }},
                   {"corner_angle", [&](auto& v) { mf.corner_angle = to_double(v); }},
                   {"corner_fraction", [&](auto& v) { mf.corner_fraction = to_double(v); }},
                   {"corner_clustering", [&](auto& v) { mf.corner_clustering = to_double(v); }},
                   {"residual_tolerance", [&](auto& v) { mf.residual_tolerance = to_double(v); }}};
    keys["classical"] = {{"kind", [&](auto& v) {
                            const std::string k = lower(v);
                            if (k == "full") c.classical.kind = SpectrumKind::Full;
                            else if (k == "p") c.classical.kind = SpectrumKind::PSharp;
                            else if (k == "s") c.classical.kind = SpectrumKind::SSharp;
                            else throw std::invalid_argument("kind must be full, p or s");
                          }},
                         {"polarization", [&](auto& v) { c.classical.polarization = to_vec2(v); }},
                         {"eps_cut", [&](auto& v) { c.classical.eps_cut = positive(v); }}};
    keys["spectra"] = {{"radius", [&](auto& v) { c.spectra.radius = positive(v); }},
                       {"truncation", [&](auto& v) { c.spectra.truncation = to_int(v); }}};
  }

  void finish() {
    if (shape == "disk") {
      cfg.target = Target::disk(center, radius);
    } else if (shape == "square") {
      cfg.target = Target::polygon_target(PolygonScatterer::square(center, side));
    } else if (shape == "regular") {
      if (sides < 3) throw std::invalid_argument("regular polygon needs at least 3 sides");
      cfg.target = Target::polygon_target(PolygonScatterer::regular(sides, center, circumradius, phase));
    } else {
      cfg.target = Target::polygon_target(PolygonScatterer{vertices});
    }
    if (cfg.problem == Problem::S) {
      if (!cp_set) cfg.incident.c_p = 0.0;
      if (!cs_set) cfg.incident.c_s = 1.0;
    }
    if (!have_radii) {
      if (radii_count < 1) throw std::invalid_argument("radii_count must be positive");
      const double R = cfg.imaging.R_meas;
      const double lo = radii_min > 0.0 ? radii_min : 0.5 * R, hi = radii_max > 0.0 ? radii_max : 1.9 * R;
      cfg.imaging.radii.resize(radii_count);
      for (int i = 0; i < radii_count; ++i)
        cfg.imaging.radii[i] = radii_count == 1 ? lo : lo + (hi - lo) * i / (radii_count - 1);
    }
  }
};

}  // namespace

ConfigError::ConfigError(const std::string& source, int line, const std::string& message)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + message),
      line_(line) {}

namespace {

void check(const ScenarioConfig& c) {
  c.medium.validate();
  c.target.validate();
  c.incident.validate();
  if (c.M < 8) throw DomainError("grid M must be at least 8");
  if (c.problem == Problem::P && (c.incident.c_s != 0.0 || c.incident.c_p == 0.0))
    throw DomainError("IP-P needs a pure p incident wave (c_s = 0, c_p != 0)");
  if (c.problem == Problem::S && (c.incident.c_p != 0.0 || c.incident.c_s == 0.0))
    throw DomainError("IP-S needs a pure s incident wave (c_p = 0, c_s != 0)");
  c.imaging.validate();
  if (c.imaging.truncation > c.M / 4) throw DomainError("imaging truncation exceeds M/4");
  c.mfs.validate();
  if (!c.classical.polarization.allFinite() || c.classical.polarization.norm() == 0.0)
    throw DomainError("classical polarization must be a nonzero vector");
  if (c.spectra.truncation < 0) throw DomainError("spectra truncation must be non-negative");
  if (c.spectra.radius == 0.0 && c.target.kind != Target::Kind::Disk)
    throw DomainError("spectra radius is required for polygon targets");
}

}  // namespace

void ScenarioConfig::validate() const {
  try {
    check(*this);
  } catch (const DomainError& e) {
    throw ConfigError("config", 0, e.what());
  }
}

ScenarioConfig parse_config(const std::string& text, const std::string& source) {
  Builder b;
  std::istringstream in(text);
  std::string raw, section;
  std::set<std::pair<std::string, std::string>> seen;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError(source, line, "malformed section header '" + s + "'");
      section = trim(s.substr(1, s.size() - 2));
      if (!b.keys.count(section)) throw ConfigError(source, line, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(source, line, "expected 'key = value', got '" + s + "'");
    const std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    const auto hash = value.find('#');
    if (hash != std::string::npos) value = trim(value.substr(0, hash));
    if (section.empty()) throw ConfigError(source, line, "key '" + key + "' outside any section");
    const auto& sec = b.keys.at(section);
    const auto it = sec.find(key);
    if (it == sec.end()) throw ConfigError(source, line, "unknown key '" + key + "' in section [" + section + "]");
    if (!seen.insert({section, key}).second)
      throw ConfigError(source, line, "duplicate key '" + key + "' in section [" + section + "]");
    try {
      it->second(value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(source, line, "key '" + key + "': " + e.what());
    }
  }
  try {
    b.finish();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(source, 0, e.what());
  }
  try {
    check(b.cfg);
  } catch (const DomainError& e) {
    throw ConfigError(source, 0, e.what());
  }
  return b.cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), 0, "cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

std::string serialize_config(const ScenarioConfig& c) {
  std::ostringstream o;
  auto cx = [](cplx z) { return fmt(z.real()) + ", " + fmt(z.imag()); };
  auto v2 = [](const Vec2& v) { return fmt(v.x()) + ", " + fmt(v.y()); };
  o << "[scenario]\nname = " << c.name << "\n\n";
  o << "[medium]\nlambda = " << fmt(c.medium.lambda) << "\nmu = " << fmt(c.medium.mu)
    << "\nomega = " << fmt(c.medium.omega) << "\n\n";
  o << "[target]\n";
  if (c.target.kind == Target::Kind::Disk) {
    o << "shape = disk\ncenter = " << v2(c.target.center) << "\nradius = " << fmt(c.target.radius) << "\n\n";
  } else {
    o << "shape = polygon\nvertices = ";
    for (std::size_t i = 0; i < c.target.polygon.vertices.size(); ++i)
      o << (i ? "; " : "") << v2(c.target.polygon.vertices[i]);
    o << "\n\n";
  }
  o << "[incident]\ntheta = " << fmt(c.incident.direction.theta) << "\nc_p = " << cx(c.incident.c_p)
    << "\nc_s = " << cx(c.incident.c_s) << "\nproblem = " << problem_name(c.problem)
    << "\ndata = " << (c.data == DataKind::Single ? "single" : "multistatic") << "\n\n";
  o << "[grid]\nM = " << c.M << "\n\n";
  o << "[noise]\nlevel = " << fmt(c.noise.level) << "\nseed = " << c.noise.seed << "\n\n";
  const auto& im = c.imaging;
  o << "[imaging]\nR_meas = " << fmt(im.R_meas) << "\nn_centers = " << im.n_centers << "\nradii = ";
  for (std::size_t i = 0; i < im.radii.size(); ++i) o << (i ? ", " : "") << fmt(im.radii[i]);
  o << "\ntruncation = " << im.truncation << "\nx_min = " << fmt(im.grid.x_min) << "\nx_max = " << fmt(im.grid.x_max)
    << "\ny_min = " << fmt(im.grid.y_min) << "\ny_max = " << fmt(im.grid.y_max) << "\nnx = " << im.grid.nx
    << "\nny = " << im.grid.ny << "\n\n";
  o << "[indicator]\ntau = " << fmt(im.indicator.tau) << "\nadmissibility = " << fmt(im.indicator.admissibility)
    << "\n\n";
  const auto& m = c.mfs;
  o << "[mfs]\nn_sources = " << m.n_sources << "\nn_collocation = " << m.n_collocation
    << "\nretreat = " << fmt(m.retreat) << "\nregularization = " << fmt(m.regularization)
    << "\ncorner_rounding = " << fmt(m.corner_rounding) << "\ngrading_exponent = " << fmt(m.grading_exponent)
    << "\ncorner_angle = " << fmt(m.corner_angle) << "\ncorner_fraction = " << fmt(m.corner_fraction)
    << "\ncorner_clustering = " << fmt(m.corner_clustering)
    << "\nresidual_tolerance = " << fmt(m.residual_tolerance) << "\n\n";
  const char* kind = c.classical.kind == SpectrumKind::Full ? "full" : c.classical.kind == SpectrumKind::PSharp ? "p" : "s";
  o << "[classical]\nkind = " << kind << "\npolarization = " << v2(c.classical.polarization)
    << "\neps_cut = " << fmt(c.classical.eps_cut) << "\n\n";
  o << "[spectra]\n";
  if (c.spectra.radius > 0.0) o << "radius = " << fmt(c.spectra.radius) << "\n";
  o << "truncation = " << c.spectra.truncation << "\n";
  return o.str();
}

}  // namespace onewave::app
