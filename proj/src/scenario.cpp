#include "contactmor/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace contactmor {

const char* to_string(Scenario::Reduction r) {
  switch (r) {
    case Scenario::Reduction::None: return "none";
    case Scenario::Reduction::Krylov: return "krylov";
    case Scenario::Reduction::Modal: return "modal";
    case Scenario::Reduction::CraigBampton: return "craig_bampton";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

struct Line {
  int number;
  std::string section;
  std::string key;
  std::string value;
};

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
  throw ConfigError(origin + ":" + std::to_string(line) + ": " + msg);
}

double parse_num(const Line& l, const std::string& origin) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(l.value, &pos);
    if (trim(l.value.substr(pos)).empty()) return v;
  } catch (...) {
  }
  fail(origin, l.number, "key '" + l.key + "': expected a number, got '" + l.value + "'");
}

int parse_int(const Line& l, const std::string& origin) {
  const double v = parse_num(l, origin);
  if (v != std::floor(v)) fail(origin, l.number, "key '" + l.key + "': expected an integer");
  return int(v);
}

std::array<double, 2> parse_pair(const Line& l, const std::string& origin) {
  std::string v = l.value;
  std::replace(v.begin(), v.end(), ',', ' ');
  std::istringstream is(v);
  std::array<double, 2> out{};
  std::string extra;
  if (!(is >> out[0] >> out[1]) || (is >> extra))
    fail(origin, l.number, "key '" + l.key + "': expected two numbers, got '" + l.value + "'");
  return out;
}

char parse_side(const Line& l, const std::string& origin) {
  if (l.value == "left") return 'l';
  if (l.value == "right") return 'r';
  fail(origin, l.number, "key '" + l.key + "': expected 'left' or 'right'");
}

}  // namespace

Scenario parse_scenario_text(const std::string& text, const std::string& origin) {
  Scenario s;
  s.name = origin;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  std::string section;
  int sensor_idx = -1, tear_idx = -1;
  bool has_load = false;

  std::vector<Line> lines;
  std::vector<std::pair<int, std::string>> sections;  // (line, name) in order
  while (std::getline(in, raw)) {
    ++line_no;
    std::string l = raw;
    const std::size_t hash = l.find('#');
    if (hash != std::string::npos) l = l.substr(0, hash);
    l = trim(l);
    if (l.empty()) continue;
    if (l.front() == '[') {
      if (l.back() != ']') fail(origin, line_no, "unterminated section header");
      section = trim(l.substr(1, l.size() - 2));
      sections.push_back({line_no, section});
      if (section == "sensor") ++sensor_idx, s.sensors.push_back({});
      if (section == "tear") ++tear_idx, s.mesh.tears.push_back({});
      continue;
    }
    const std::size_t eq = l.find('=');
    if (eq == std::string::npos) fail(origin, line_no, "expected 'key = value', got '" + l + "'");
    Line entry{line_no, section, trim(l.substr(0, eq)), trim(l.substr(eq + 1))};
    if (entry.key.empty()) fail(origin, line_no, "empty key");
    // bind repeated sections to their instance
    if (section == "sensor") entry.section = "sensor" + std::to_string(sensor_idx);
    if (section == "tear") entry.section = "tear" + std::to_string(tear_idx);
    lines.push_back(entry);
  }

  auto unknown = [&](const Line& l) {
    fail(origin, l.number, "unknown key '" + l.key + "' in section [" +
                               (l.section.empty() ? "" : l.section) + "]");
  };

  for (const Line& l : lines) {
    const std::string& sec = l.section;
    if (sec == "scenario") {
      if (l.key == "name") s.name = l.value;
      else unknown(l);
    } else if (sec == "mesh") {
      if (l.key == "nx") s.mesh.nx = parse_int(l, origin);
      else if (l.key == "ny") s.mesh.ny = parse_int(l, origin);
      else if (l.key == "x0") s.mesh.x0 = parse_num(l, origin);
      else if (l.key == "y0") s.mesh.y0 = parse_num(l, origin);
      else if (l.key == "x1") s.mesh.x1 = parse_num(l, origin);
      else if (l.key == "y1") s.mesh.y1 = parse_num(l, origin);
      else if (l.key == "fixed_edges") {
        s.mesh.dirichlet_edges = 0;
        std::istringstream es(l.value);
        std::string e;
        while (es >> e) {
          if (e == "left") s.mesh.dirichlet_edges |= EdgeLeft;
          else if (e == "right") s.mesh.dirichlet_edges |= EdgeRight;
          else if (e == "bottom") s.mesh.dirichlet_edges |= EdgeBottom;
          else if (e == "top") s.mesh.dirichlet_edges |= EdgeTop;
          else fail(origin, l.number, "unknown edge '" + e + "'");
        }
      } else unknown(l);
    } else if (sec.rfind("tear", 0) == 0 && sec.size() > 4) {
      MeshSpec::Tear& t = s.mesh.tears[std::stoul(sec.substr(4))];
      if (l.key == "orientation") {
        if (l.value == "vertical") t.orientation = 'v';
        else if (l.value == "horizontal") t.orientation = 'h';
        else fail(origin, l.number, "orientation must be 'vertical' or 'horizontal'");
      } else if (l.key == "line") t.line = parse_num(l, origin);
      else if (l.key == "from") t.from = parse_num(l, origin);
      else if (l.key == "to") t.to = parse_num(l, origin);
      else unknown(l);
    } else if (sec == "material") {
      if (l.key == "rho") s.material.rho = parse_num(l, origin);
      else if (l.key == "E") s.material.E = parse_num(l, origin);
      else if (l.key == "nu") s.material.nu = parse_num(l, origin);
      else if (l.key == "thickness") s.material.thickness = parse_num(l, origin);
      else unknown(l);
    } else if (sec == "load") {
      has_load = true;
      if (l.key == "kind") {
        if (l.value == "load1") s.load.kind = LoadSpec::Kind::Load1;
        else if (l.value == "load2") s.load.kind = LoadSpec::Kind::Load2;
        else if (l.value == "custom") s.load.kind = LoadSpec::Kind::Custom;
        else fail(origin, l.number, "load kind must be load1, load2 or custom");
      } else if (l.key == "point") s.load.point = parse_pair(l, origin);
      else if (l.key == "side") s.load.side = parse_side(l, origin);
      else if (l.key == "direction") s.load.direction = parse_pair(l, origin);
      else if (l.key == "amplitude") s.load.amplitude = parse_num(l, origin);
      else if (l.key == "omega") s.load.omega = parse_num(l, origin);
      else if (l.key == "body_force") s.load.body_force = parse_pair(l, origin);
      else unknown(l);
    } else if (sec == "sim") {
      if (l.key == "h") s.sim.h = parse_num(l, origin);
      else if (l.key == "t0") s.sim.t0 = parse_num(l, origin);
      else if (l.key == "t_end") s.sim.t_end = parse_num(l, origin);
      else unknown(l);
    } else if (sec == "reduction") {
      if (l.key == "method") {
        if (l.value == "none") s.reduction = Scenario::Reduction::None;
        else if (l.value == "krylov") s.reduction = Scenario::Reduction::Krylov;
        else if (l.value == "modal") s.reduction = Scenario::Reduction::Modal;
        else if (l.value == "craig_bampton") s.reduction = Scenario::Reduction::CraigBampton;
        else fail(origin, l.number, "method must be none, krylov, modal or craig_bampton");
      } else if (l.key == "nr") s.n_r = parse_int(l, origin);
      else if (l.key == "nk") s.n_k = parse_int(l, origin);
      else if (l.key == "shift_omega2") s.shift_omega2 = parse_num(l, origin);
      else unknown(l);
    } else if (sec.rfind("sensor", 0) == 0 && sec.size() > 6) {
      Scenario::Sensor& sn = s.sensors[std::stoul(sec.substr(6))];
      if (l.key == "point") sn.point = parse_pair(l, origin);
      else if (l.key == "side") sn.side = parse_side(l, origin);
      else unknown(l);
    } else {
      fail(origin, l.number, "key '" + l.key + "' outside a known section");
    }
  }

  if (!has_load) throw ConfigError(origin + ": missing [load] section");
  if (s.reduction == Scenario::Reduction::Krylov || s.reduction == Scenario::Reduction::Modal) {
    if (s.n_r < 1) throw ConfigError(origin + ": reduction requires nr >= 1");
  }
  if (s.reduction == Scenario::Reduction::CraigBampton && s.n_k < 1)
    throw ConfigError(origin + ": craig_bampton requires nk >= 1");
  return s;
}

Scenario parse_scenario_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open scenario file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  Scenario s = parse_scenario_text(ss.str(), path);
  // strip directories for the default name
  if (s.name == path) {
    const std::size_t slash = path.find_last_of('/');
    s.name = slash == std::string::npos ? path : path.substr(slash + 1);
  }
  return s;
}

std::string Scenario::baseline_hash() const {
  char buf[1024];
  std::string canon;
  auto put = [&](const char* fmt, auto... args) {
    std::snprintf(buf, sizeof buf, fmt, args...);
    canon += buf;
  };
  put("v1|mesh:%d,%d,%.17g,%.17g,%.17g,%.17g,%u|", mesh.nx, mesh.ny, mesh.x0, mesh.y0, mesh.x1,
      mesh.y1, mesh.dirichlet_edges);
  for (const MeshSpec::Tear& t : mesh.tears)
    put("tear:%c,%.17g,%.17g,%.17g|", t.orientation, t.line, t.from, t.to);
  put("mat:%.17g,%.17g,%.17g,%.17g|", material.rho, material.E, material.nu, material.thickness);
  put("load:%d,%.17g,%.17g,%c,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g|", int(load.kind), load.point[0],
      load.point[1], load.side, load.direction[0], load.direction[1], load.amplitude, load.omega,
      load.body_force[0], load.body_force[1]);
  put("sim:%.17g,%.17g,%.17g|", sim.h, sim.t0, sim.t_end);

  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char c : canon) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

}  // namespace contactmor
