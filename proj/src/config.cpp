#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

namespace amp {

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b) {
  const auto mesh_eq = [](const MeshSpec& x, const MeshSpec& y) {
    return x.outer_width == y.outer_width && x.outer_height == y.outer_height &&
           x.wall_thickness == y.wall_thickness && x.target_h == y.target_h;
  };
  const auto params_eq = [](const ModelParams& x, const ModelParams& y) {
    return x.k_omega == y.k_omega && x.k_wall == y.k_wall &&
           x.latent_l == y.latent_l && x.tau == y.tau && x.xi == y.xi &&
           x.lambda_bc == y.lambda_bc && x.t_end == y.t_end &&
           x.enable_cubic == y.enable_cubic;
  };
  const auto stepper_eq = [](const StepperConfig& x, const StepperConfig& y) {
    return x.dt == y.dt && x.linsolve_tol == y.linsolve_tol &&
           x.linsolve_maxit == y.linsolve_maxit && x.cubic_mode == y.cubic_mode;
  };
  return mesh_eq(a.mesh, b.mesh) && params_eq(a.params, b.params) &&
         stepper_eq(a.stepper, b.stepper) && a.initial == b.initial &&
         a.boundary == b.boundary && a.output == b.output &&
         a.study == b.study && a.threads == b.threads;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

struct Parser {
  ScenarioConfig cfg;
  std::vector<ConfigError> errors;
  std::map<std::string, int> seen;  // key -> line

  void fail(int line, const std::string& msg) { errors.push_back({line, msg}); }

  bool has(const std::string& key) const { return seen.count(key) != 0; }
  int line_of(const std::string& key) const {
    const auto it = seen.find(key);
    return it == seen.end() ? 0 : it->second;
  }

  bool parse_double(int line, const std::string& key, const std::string& value,
                    double& out) {
    const char* begin = value.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(v)) {
      fail(line, "key '" + key + "': expected a number, got '" + value + "'");
      return false;
    }
    out = v;
    return true;
  }

  bool parse_int(int line, const std::string& key, const std::string& value,
                 int& out) {
    double v;
    if (!parse_double(line, key, value, v)) return false;
    if (v != std::floor(v) || std::abs(v) > 1e9) {
      fail(line, "key '" + key + "': expected an integer, got '" + value + "'");
      return false;
    }
    out = static_cast<int>(v);
    return true;
  }

  bool parse_ladder(int line, const std::string& key, const std::string& value,
                    std::vector<double>& out) {
    std::vector<double> parsed;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      double v;
      if (!parse_double(line, key, trim(item), v)) return false;
      parsed.push_back(v);
    }
    if (parsed.empty()) {
      fail(line, "key '" + key + "': empty list");
      return false;
    }
    out = std::move(parsed);
    return true;
  }

  bool parse_table(int line, const std::string& key, const std::string& value,
                   std::vector<std::pair<double, double>>& out) {
    std::vector<std::pair<double, double>> parsed;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      const auto colon = item.find(':');
      if (colon == std::string::npos) {
        fail(line, "key '" + key + "': table entries take the form t:value");
        return false;
      }
      double t, v;
      if (!parse_double(line, key, trim(item.substr(0, colon)), t) ||
          !parse_double(line, key, trim(item.substr(colon + 1)), v))
        return false;
      parsed.emplace_back(t, v);
    }
    if (parsed.size() < 2) {
      fail(line, "key '" + key + "': table needs at least two entries");
      return false;
    }
    for (std::size_t i = 1; i < parsed.size(); ++i)
      if (!(parsed[i].first > parsed[i - 1].first)) {
        fail(line, "key '" + key + "': table times must strictly increase");
        return false;
      }
    out = std::move(parsed);
    return true;
  }

  void apply(int line, const std::string& key, const std::string& value) {
    if (seen.count(key)) {
      fail(line, "duplicate key '" + key + "' (first set on line " +
                     std::to_string(seen[key]) + ")");
      return;
    }
    seen[key] = line;

    auto& c = cfg;
    if (key == "mesh.outer_width") parse_double(line, key, value, c.mesh.outer_width);
    else if (key == "mesh.outer_height") parse_double(line, key, value, c.mesh.outer_height);
    else if (key == "mesh.wall_thickness") parse_double(line, key, value, c.mesh.wall_thickness);
    else if (key == "mesh.target_h") parse_double(line, key, value, c.mesh.target_h);
    else if (key == "params.k_omega") parse_double(line, key, value, c.params.k_omega);
    else if (key == "params.k_wall") parse_double(line, key, value, c.params.k_wall);
    else if (key == "params.latent_l") parse_double(line, key, value, c.params.latent_l);
    else if (key == "params.tau") parse_double(line, key, value, c.params.tau);
    else if (key == "params.xi") parse_double(line, key, value, c.params.xi);
    else if (key == "params.lambda_bc") parse_double(line, key, value, c.params.lambda_bc);
    else if (key == "params.t_end") parse_double(line, key, value, c.params.t_end);
    else if (key == "stepper.dt") parse_double(line, key, value, c.stepper.dt);
    else if (key == "stepper.linsolve_tol") parse_double(line, key, value, c.stepper.linsolve_tol);
    else if (key == "stepper.linsolve_maxit") parse_int(line, key, value, c.stepper.linsolve_maxit);
    else if (key == "stepper.cubic_mode") {
      if (value == "semi_implicit") c.stepper.cubic_mode = CubicMode::kSemiImplicit;
      else if (value == "explicit") c.stepper.cubic_mode = CubicMode::kExplicit;
      else fail(line, "key '" + key + "': expected semi_implicit or explicit");
    } else if (key == "initial.preset") {
      if (value == "constant" || value == "equilibrium") c.initial.preset = value;
      else fail(line, "key '" + key + "': expected constant or equilibrium");
    } else if (key == "initial.u0") parse_double(line, key, value, c.initial.u0);
    else if (key == "initial.phi0") parse_double(line, key, value, c.initial.phi0);
    else if (key == "boundary.preset") {
      if (value == "constant" || value == "ramp" || value == "table")
        c.boundary.preset = value;
      else fail(line, "key '" + key + "': expected constant, ramp, or table");
    } else if (key == "boundary.g0") parse_double(line, key, value, c.boundary.g0);
    else if (key == "boundary.rate") parse_double(line, key, value, c.boundary.rate);
    else if (key == "boundary.table") parse_table(line, key, value, c.boundary.table);
    else if (key == "output.dir") {
      if (value.empty()) fail(line, "key 'output.dir': must not be empty");
      else c.output.dir = value;
    } else if (key == "output.snapshot_stride") parse_int(line, key, value, c.output.snapshot_stride);
    else if (key == "threads") parse_int(line, key, value, c.threads);
    else if (key == "study.eps_u0") parse_double(line, key, value, c.study.eps_u0);
    else if (key == "study.eps_phi0") parse_double(line, key, value, c.study.eps_phi0);
    else if (key == "study.eps_g") parse_double(line, key, value, c.study.eps_g);
    else if (key == "study.ladder") parse_ladder(line, key, value, c.study.ladder);
    else if (key == "study.convergence_levels") parse_int(line, key, value, c.study.convergence_levels);
    else if (key == "study.oracle_factor") parse_double(line, key, value, c.study.oracle_factor);
    else fail(line, "unknown key '" + key + "'");
  }

  void require(const char* key) {
    if (!has(key)) fail(0, std::string("missing required key: ") + key);
  }

  void finish() {
    for (const char* key :
         {"mesh.outer_width", "mesh.outer_height", "mesh.wall_thickness",
          "mesh.target_h", "params.k_omega", "params.k_wall",
          "params.latent_l", "params.tau", "params.xi", "params.lambda_bc",
          "params.t_end", "stepper.dt", "boundary.preset"})
      require(key);

    if (cfg.initial.preset == "equilibrium") {
      cfg.initial.u0 = 0.0;
      cfg.initial.phi0 = 1.0;
    } else {
      require("initial.u0");
      require("initial.phi0");
    }
    if (cfg.boundary.preset == "ramp" && !has("boundary.rate"))
      fail(0, "missing required key: boundary.rate (boundary.preset = ramp)");
    if (cfg.boundary.preset == "table" && !has("boundary.table"))
      fail(0, "missing required key: boundary.table (boundary.preset = table)");

    for (const auto& m : cfg.mesh.validate())
      fail(line_of("mesh.target_h"), "mesh: " + m);
    for (const auto& m : cfg.params.validate())
      fail(line_of("params.t_end"), "params: " + m);
    for (const auto& m : cfg.stepper.validate())
      fail(line_of("stepper.dt"), "stepper: " + m);
    if (cfg.output.snapshot_stride < 1)
      fail(line_of("output.snapshot_stride"),
           "output.snapshot_stride must be >= 1");
    if (cfg.threads < 1) fail(line_of("threads"), "threads must be >= 1");
    if (cfg.study.convergence_levels < 2)
      fail(line_of("study.convergence_levels"),
           "study.convergence_levels must be >= 2");
    if (!(cfg.study.oracle_factor >= 1.0))
      fail(line_of("study.oracle_factor"), "study.oracle_factor must be >= 1");
    if (cfg.study.eps_u0 < 0 || cfg.study.eps_phi0 < 0 || cfg.study.eps_g < 0)
      fail(0, "study perturbation amplitudes must be nonnegative");
    check_ladder();
  }

  void check_ladder() {
    const auto& l = cfg.study.ladder;
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (!(l[i] > 0.0)) {
        fail(line_of("study.ladder"), "study.ladder entries must be positive");
        return;
      }
      if (i > 0 && !(l[i] < l[i - 1])) {
        fail(line_of("study.ladder"),
             "study.ladder must be strictly decreasing");
        return;
      }
    }
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

ParseResult parse_config(const std::string& text) {
  Parser p;
  std::stringstream ss(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(ss, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      p.fail(line_no, "expected 'key = value', got '" + line + "'");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      p.fail(line_no, "empty key");
      continue;
    }
    p.apply(line_no, key, value);
  }
  p.finish();

  ParseResult result;
  result.errors = std::move(p.errors);
  if (result.errors.empty()) result.config = std::move(p.cfg);
  return result;
}

std::string serialize_config(const ScenarioConfig& c) {
  std::ostringstream os;
  os << "mesh.outer_width = " << fmt(c.mesh.outer_width) << "\n";
  os << "mesh.outer_height = " << fmt(c.mesh.outer_height) << "\n";
  os << "mesh.wall_thickness = " << fmt(c.mesh.wall_thickness) << "\n";
  os << "mesh.target_h = " << fmt(c.mesh.target_h) << "\n";
  os << "params.k_omega = " << fmt(c.params.k_omega) << "\n";
  os << "params.k_wall = " << fmt(c.params.k_wall) << "\n";
  os << "params.latent_l = " << fmt(c.params.latent_l) << "\n";
  os << "params.tau = " << fmt(c.params.tau) << "\n";
  os << "params.xi = " << fmt(c.params.xi) << "\n";
  os << "params.lambda_bc = " << fmt(c.params.lambda_bc) << "\n";
  os << "params.t_end = " << fmt(c.params.t_end) << "\n";
  os << "stepper.dt = " << fmt(c.stepper.dt) << "\n";
  os << "stepper.linsolve_tol = " << fmt(c.stepper.linsolve_tol) << "\n";
  os << "stepper.linsolve_maxit = " << c.stepper.linsolve_maxit << "\n";
  os << "stepper.cubic_mode = "
     << (c.stepper.cubic_mode == CubicMode::kSemiImplicit ? "semi_implicit"
                                                          : "explicit")
     << "\n";
  os << "initial.preset = " << c.initial.preset << "\n";
  os << "initial.u0 = " << fmt(c.initial.u0) << "\n";
  os << "initial.phi0 = " << fmt(c.initial.phi0) << "\n";
  os << "boundary.preset = " << c.boundary.preset << "\n";
  os << "boundary.g0 = " << fmt(c.boundary.g0) << "\n";
  os << "boundary.rate = " << fmt(c.boundary.rate) << "\n";
  if (!c.boundary.table.empty()) {
    os << "boundary.table = ";
    for (std::size_t i = 0; i < c.boundary.table.size(); ++i) {
      if (i) os << ",";
      os << fmt(c.boundary.table[i].first) << ":"
         << fmt(c.boundary.table[i].second);
    }
    os << "\n";
  }
  os << "output.dir = " << c.output.dir << "\n";
  os << "output.snapshot_stride = " << c.output.snapshot_stride << "\n";
  os << "threads = " << c.threads << "\n";
  os << "study.eps_u0 = " << fmt(c.study.eps_u0) << "\n";
  os << "study.eps_phi0 = " << fmt(c.study.eps_phi0) << "\n";
  os << "study.eps_g = " << fmt(c.study.eps_g) << "\n";
  os << "study.ladder = ";
  for (std::size_t i = 0; i < c.study.ladder.size(); ++i) {
    if (i) os << ",";
    os << fmt(c.study.ladder[i]);
  }
  os << "\n";
  os << "study.convergence_levels = " << c.study.convergence_levels << "\n";
  os << "study.oracle_factor = " << fmt(c.study.oracle_factor) << "\n";
  return os.str();
}

BoundaryData make_boundary(const BoundarySpec& spec) {
  BoundaryData bd;
  if (spec.preset == "constant") {
    const double g0 = spec.g0;
    bd.g = [g0](double, double, double) { return g0; };
  } else if (spec.preset == "ramp") {
    const double g0 = spec.g0, rate = spec.rate;
    bd.g = [g0, rate](double, double, double t) { return g0 + rate * t; };
  } else if (spec.preset == "table") {
    const auto table = spec.table;
    bd.g = [table](double, double, double t) {
      if (t <= table.front().first) return table.front().second;
      if (t >= table.back().first) return table.back().second;
      const auto it = std::upper_bound(
          table.begin(), table.end(), t,
          [](double v, const std::pair<double, double>& e) {
            return v < e.first;
          });
      const auto& hi = *it;
      const auto& lo = *(it - 1);
      const double w = (t - lo.first) / (hi.first - lo.first);
      return lo.second + w * (hi.second - lo.second);
    };
  } else {
    throw std::invalid_argument("make_boundary: unknown preset '" +
                                spec.preset + "'");
  }
  return bd;
}

std::function<double(double, double)> make_initial_u(const InitialSpec& spec) {
  const double v = spec.preset == "equilibrium" ? 0.0 : spec.u0;
  return [v](double, double) { return v; };
}

std::function<double(double, double)> make_initial_phi(
    const InitialSpec& spec) {
  const double v = spec.preset == "equilibrium" ? 1.0 : spec.phi0;
  return [v](double, double) { return v; };
}

}  // namespace amp
