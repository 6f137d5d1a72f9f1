#include "oblab/config.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "oblab/errors.hpp"
#include "oblab/radial.hpp"

namespace oblab {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& msg) { fail(status::config_error, msg); }

std::string join(const std::string& scope, const char* key) {
  return scope.empty() ? key : scope + "." + key;
}

const json& child(const json& obj, const std::string& scope, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) bad("missing key \"" + join(scope, key) + "\"");
  return *it;
}

void expect_object(const json& v, const std::string& path) {
  if (!v.is_object()) bad("\"" + path + "\" must be an object");
}

void reject_unknown(const json& obj, const std::string& scope,
                    std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        known = true;
        break;
      }
    if (!known) bad("unknown key \"" + join(scope, it.key().c_str()) + "\"");
  }
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) bad("\"" + path + "\" must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) bad("\"" + path + "\" must be finite");
  return x;
}

int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) bad("\"" + path + "\" must be an integer");
  return v.get<int>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) bad("\"" + path + "\" must be a string");
  return v.get<std::string>();
}

std::vector<double> as_number_list(const json& v, const std::string& path) {
  if (!v.is_array()) bad("\"" + path + "\" must be an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(as_number(e, path));
  return out;
}

double number_or(const json& obj, const std::string& scope, const char* key, double dflt) {
  auto it = obj.find(key);
  return it == obj.end() ? dflt : as_number(*it, join(scope, key));
}

int int_or(const json& obj, const std::string& scope, const char* key, int dflt) {
  auto it = obj.find(key);
  return it == obj.end() ? dflt : as_int(*it, join(scope, key));
}

ObstacleConfig parse_obstacle(const json& node) {
  expect_object(node, "obstacle");
  ObstacleConfig oc;
  const std::string kind = as_string(child(node, "obstacle", "kind"), "obstacle.kind");
  if (kind == "power_profile") {
    reject_unknown(node, "obstacle",
                   {"kind", "alpha", "cos_coeffs", "sin_coeffs", "modulation"});
    oc.kind = obstacle_kind::power_profile;
    oc.spec.alpha = number_or(node, "obstacle", "alpha", 1.5);
    if (auto it = node.find("cos_coeffs"); it != node.end())
      oc.spec.cos_coeffs = as_number_list(*it, "obstacle.cos_coeffs");
    if (auto it = node.find("sin_coeffs"); it != node.end())
      oc.spec.sin_coeffs = as_number_list(*it, "obstacle.sin_coeffs");
    if (auto it = node.find("modulation"); it != node.end()) {
      expect_object(*it, "obstacle.modulation");
      reject_unknown(*it, "obstacle.modulation", {"c", "p"});
      oc.spec.has_modulation = true;
      oc.spec.mod_c = as_number(child(*it, "obstacle.modulation", "c"), "obstacle.modulation.c");
      oc.spec.mod_p = as_number(child(*it, "obstacle.modulation", "p"), "obstacle.modulation.p");
    }
    validate_obstacle(oc.spec);
  } else if (kind == "radial_polynomial") {
    reject_unknown(node, "obstacle", {"kind", "coeffs"});
    oc.kind = obstacle_kind::radial_polynomial;
    oc.poly_coeffs = as_number_list(child(node, "obstacle", "coeffs"), "obstacle.coeffs");
    if (oc.poly_coeffs.empty()) bad("\"obstacle.coeffs\" must be nonempty");
  } else {
    bad("\"obstacle.kind\" must be \"power_profile\" or \"radial_polynomial\"");
  }
  return oc;
}

BoundaryData parse_boundary(const json& node) {
  expect_object(node, "boundary");
  BoundaryData bd;
  const std::string kind = as_string(child(node, "boundary", "kind"), "boundary.kind");
  if (kind == "constant") {
    reject_unknown(node, "boundary", {"kind", "value"});
    bd.k = BoundaryData::kind::constant;
    bd.value = as_number(child(node, "boundary", "value"), "boundary.value");
  } else if (kind == "angular") {
    reject_unknown(node, "boundary", {"kind", "cos_coeffs", "sin_coeffs", "clamp_floor"});
    bd.k = BoundaryData::kind::angular;
    if (auto it = node.find("cos_coeffs"); it != node.end())
      bd.cos_coeffs = as_number_list(*it, "boundary.cos_coeffs");
    if (auto it = node.find("sin_coeffs"); it != node.end())
      bd.sin_coeffs = as_number_list(*it, "boundary.sin_coeffs");
    if (bd.cos_coeffs.empty() && bd.sin_coeffs.empty())
      bad("\"boundary\" of kind angular needs cos_coeffs or sin_coeffs");
    if (auto it = node.find("clamp_floor"); it != node.end())
      bd.clamp_floor = as_number(*it, "boundary.clamp_floor");
  } else {
    bad("\"boundary.kind\" must be \"constant\" or \"angular\"");
  }
  return bd;
}

json coeffs_json(const std::vector<double>& v) { return json(v); }

std::string fnv1a_hex(const std::string& text) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

json canonical_json(const ExperimentConfig& c) {
  json root;
  root["grid"] = {{"L", c.grid.L}, {"m", c.grid.m}};
  if (c.obstacle) {
    const ObstacleConfig& oc = *c.obstacle;
    if (oc.kind == obstacle_kind::power_profile) {
      json o;
      o["kind"] = "power_profile";
      o["alpha"] = oc.spec.alpha;
      o["cos_coeffs"] = coeffs_json(oc.spec.cos_coeffs);
      o["sin_coeffs"] = coeffs_json(oc.spec.sin_coeffs);
      if (oc.spec.has_modulation)
        o["modulation"] = {{"c", oc.spec.mod_c}, {"p", oc.spec.mod_p}};
      root["obstacle"] = o;
    } else {
      root["obstacle"] = {{"kind", "radial_polynomial"}, {"coeffs", coeffs_json(oc.poly_coeffs)}};
    }
  }
  if (c.boundary) {
    const BoundaryData& bd = *c.boundary;
    if (bd.k == BoundaryData::kind::constant) {
      root["boundary"] = {{"kind", "constant"}, {"value", bd.value}};
    } else {
      json b;
      b["kind"] = "angular";
      b["cos_coeffs"] = coeffs_json(bd.cos_coeffs);
      b["sin_coeffs"] = coeffs_json(bd.sin_coeffs);
      if (bd.clamp_floor) b["clamp_floor"] = *bd.clamp_floor;
      root["boundary"] = b;
    }
  }
  json s;
  s["omega"] = c.solver.omega;
  s["tol"] = c.solver.tol;
  s["max_iter"] = c.solver.max_iter;
  s["mode"] = c.mode == solver_mode::ball ? "ball" : "square";
  if (c.mode == solver_mode::ball) s["ball_radius"] = c.ball_radius;
  root["solver"] = s;
  json a;
  a["alpha"] = c.analysis.alpha;
  if (c.analysis.radii)
    a["radii"] = {{"r_min", c.analysis.radii->r_min},
                  {"r_max", c.analysis.radii->r_max},
                  {"ratio", c.analysis.radii->ratio}};
  if (c.analysis.blowup)
    a["blowup"] = {{"r_max", c.analysis.blowup->r_max},
                   {"count", c.analysis.blowup->count},
                   {"ratio", c.analysis.blowup->ratio}};
  a["thresholds"] = {{"eps_zero", c.analysis.thresholds.eps_zero},
                     {"eps_homog", c.analysis.thresholds.eps_homog}};
  a["annulus"] = {{"r_in", c.analysis.annulus.r_in}, {"r_out", c.analysis.annulus.r_out}};
  a["target_grid"] = {{"L", c.analysis.target.L}, {"m", c.analysis.target.m}};
  root["analysis"] = a;
  root["output_dir"] = c.output_dir;
  return root;
}

}  // namespace

std::vector<double> RadiiSpec::build() const {
  std::vector<double> out;
  double r = r_min;
  while (r <= r_max * (1.0 + 1e-12)) {
    out.push_back(std::min(r, r_max));
    if (out.size() > 10000) bad("radii list exceeds 10000 entries");
    r *= ratio;
  }
  return out;
}

std::vector<double> BlowupRadiiSpec::build() const {
  std::vector<double> out;
  double r = r_max;
  for (int k = 0; k < count; ++k) {
    out.push_back(r);
    r *= ratio;
  }
  return out;
}

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    bad(std::string("config is not valid JSON: ") + e.what());
  }
  expect_object(root, "config");
  reject_unknown(root, "",
                 {"grid", "obstacle", "boundary", "solver", "analysis", "output_dir"});

  ExperimentConfig cfg;

  const json& gnode = child(root, "", "grid");
  expect_object(gnode, "grid");
  reject_unknown(gnode, "grid", {"L", "m"});
  const double L = as_number(child(gnode, "grid", "L"), "grid.L");
  const int m = as_int(child(gnode, "grid", "m"), "grid.m");
  try {
    cfg.grid = make_grid(m, L);
  } catch (const error& e) {
    bad(e.what());
  }

  if (auto it = root.find("obstacle"); it != root.end()) cfg.obstacle = parse_obstacle(*it);
  if (auto it = root.find("boundary"); it != root.end()) cfg.boundary = parse_boundary(*it);

  if (auto it = root.find("solver"); it != root.end()) {
    expect_object(*it, "solver");
    reject_unknown(*it, "solver", {"omega", "tol", "max_iter", "mode", "ball_radius"});
    cfg.solver.omega = number_or(*it, "solver", "omega", 1.9);
    cfg.solver.tol = number_or(*it, "solver", "tol", 0.0);
    cfg.solver.max_iter = int_or(*it, "solver", "max_iter", 500000);
    if (!(cfg.solver.omega > 0.0 && cfg.solver.omega < 2.0))
      bad("\"solver.omega\" must lie in (0, 2)");
    if (cfg.solver.tol < 0.0) bad("\"solver.tol\" must be nonnegative");
    if (cfg.solver.max_iter < 1) bad("\"solver.max_iter\" must be at least 1");
    std::string mode = "square";
    if (auto mit = it->find("mode"); mit != it->end())
      mode = as_string(*mit, "solver.mode");
    if (mode == "square") {
      cfg.mode = solver_mode::square;
      if (it->find("ball_radius") != it->end())
        bad("\"solver.ball_radius\" is only valid with mode \"ball\"");
    } else if (mode == "ball") {
      cfg.mode = solver_mode::ball;
      cfg.ball_radius =
          as_number(child(*it, "solver", "ball_radius"), "solver.ball_radius");
      if (!(cfg.ball_radius > 0.0 && cfg.ball_radius <= cfg.grid.L))
        bad("\"solver.ball_radius\" must lie in (0, L]");
    } else {
      bad("\"solver.mode\" must be \"square\" or \"ball\"");
    }
  }

  cfg.analysis.target = make_grid(cfg.grid.m, 1.0);
  if (auto it = root.find("analysis"); it != root.end()) {
    expect_object(*it, "analysis");
    reject_unknown(*it, "analysis",
                   {"alpha", "radii", "blowup", "thresholds", "annulus", "target_grid"});
    if (auto ait = it->find("alpha"); ait != it->end()) {
      cfg.analysis.alpha = as_number(*ait, "analysis.alpha");
      cfg.analysis.alpha_overridden = true;
    }
    if (auto rit = it->find("radii"); rit != it->end()) {
      expect_object(*rit, "analysis.radii");
      reject_unknown(*rit, "analysis.radii", {"r_min", "r_max", "ratio"});
      RadiiSpec rs;
      rs.r_min = as_number(child(*rit, "analysis.radii", "r_min"), "analysis.radii.r_min");
      rs.r_max = as_number(child(*rit, "analysis.radii", "r_max"), "analysis.radii.r_max");
      rs.ratio = number_or(*rit, "analysis.radii", "ratio", std::pow(2.0, 0.25));
      if (!(rs.r_min > 0.0)) bad("\"analysis.radii.r_min\" must be positive");
      if (!(rs.ratio > 1.0)) bad("\"analysis.radii.ratio\" must exceed 1");
      if (!(rs.r_min <= rs.r_max))
        bad("\"analysis.radii\" is empty: r_min exceeds r_max");
      cfg.analysis.radii = rs;
    }
    if (auto bit = it->find("blowup"); bit != it->end()) {
      expect_object(*bit, "analysis.blowup");
      reject_unknown(*bit, "analysis.blowup", {"r_max", "count", "ratio"});
      BlowupRadiiSpec bs;
      bs.r_max = as_number(child(*bit, "analysis.blowup", "r_max"), "analysis.blowup.r_max");
      bs.count = int_or(*bit, "analysis.blowup", "count", 6);
      bs.ratio = number_or(*bit, "analysis.blowup", "ratio", std::pow(2.0, -0.5));
      if (!(bs.r_max > 0.0)) bad("\"analysis.blowup.r_max\" must be positive");
      if (bs.count < 4) bad("\"analysis.blowup.count\" must be at least 4");
      if (!(bs.ratio > 0.0 && bs.ratio < 1.0))
        bad("\"analysis.blowup.ratio\" must lie in (0, 1)");
      cfg.analysis.blowup = bs;
    }
    if (auto tit = it->find("thresholds"); tit != it->end()) {
      expect_object(*tit, "analysis.thresholds");
      reject_unknown(*tit, "analysis.thresholds", {"eps_zero", "eps_homog"});
      cfg.analysis.thresholds.eps_zero =
          number_or(*tit, "analysis.thresholds", "eps_zero", 1e-4);
      cfg.analysis.thresholds.eps_homog =
          number_or(*tit, "analysis.thresholds", "eps_homog", 1e-2);
      if (!(cfg.analysis.thresholds.eps_zero > 0.0) ||
          !(cfg.analysis.thresholds.eps_homog > 0.0))
        bad("\"analysis.thresholds\" must be positive");
    }
    if (auto nit = it->find("annulus"); nit != it->end()) {
      expect_object(*nit, "analysis.annulus");
      reject_unknown(*nit, "analysis.annulus", {"r_in", "r_out"});
      cfg.analysis.annulus.r_in =
          as_number(child(*nit, "analysis.annulus", "r_in"), "analysis.annulus.r_in");
      cfg.analysis.annulus.r_out =
          as_number(child(*nit, "analysis.annulus", "r_out"), "analysis.annulus.r_out");
    }
    if (auto git = it->find("target_grid"); git != it->end()) {
      expect_object(*git, "analysis.target_grid");
      reject_unknown(*git, "analysis.target_grid", {"L", "m"});
      const double tl = number_or(*git, "analysis.target_grid", "L", 1.0);
      const int tm = int_or(*git, "analysis.target_grid", "m", cfg.grid.m);
      try {
        cfg.analysis.target = make_grid(tm, tl);
      } catch (const error& e) {
        bad(std::string("\"analysis.target_grid\": ") + e.what());
      }
    }
  }

  if (!cfg.analysis.alpha_overridden) {
    if (cfg.obstacle && cfg.obstacle->kind == obstacle_kind::power_profile)
      cfg.analysis.alpha = cfg.obstacle->spec.alpha;
    else if (cfg.obstacle)
      bad("\"analysis.alpha\" is required with a radial_polynomial obstacle");
  }
  if (!(cfg.analysis.alpha > 1.0 && cfg.analysis.alpha < 2.0))
    bad("\"analysis.alpha\" must lie in (1, 2)");

  if (cfg.analysis.radii) {
    const GridSpec& g = cfg.grid;
    if (cfg.analysis.radii->r_min < 2.0 * g.h * (1.0 - 1e-12))
      bad("\"analysis.radii.r_min\" must be at least 2h");
    if (cfg.analysis.radii->r_max > g.L - 2.0 * g.h + 1e-12 * g.L)
      bad("\"analysis.radii.r_max\" must be at most L - 2h");
  }
  if (cfg.analysis.blowup) {
    const GridSpec& g = cfg.grid;
    if (cfg.analysis.blowup->r_max * cfg.analysis.target.L > g.L - g.h + 1e-12 * g.L)
      bad("\"analysis.blowup.r_max\" times target L must be at most L - h");
  }
  {
    const GridSpec& t = cfg.analysis.target;
    const Annulus& a = cfg.analysis.annulus;
    if (!(a.r_in >= 2.0 * t.h * (1.0 - 1e-12)) || !(a.r_in < a.r_out) ||
        !(a.r_out <= t.L - 2.0 * t.h + 1e-12 * t.L))
      bad("\"analysis.annulus\" must satisfy 2h <= r_in < r_out <= L - 2h on the target grid");
  }

  if (auto it = root.find("output_dir"); it != root.end())
    cfg.output_dir = as_string(*it, "output_dir");
  if (cfg.output_dir.empty()) bad("\"output_dir\" must be nonempty");

  cfg.config_hash = fnv1a_hex(canonical_json(cfg).dump());
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(status::io_error, "cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

double eval_obstacle_config(const ObstacleConfig& oc, double x, double y) {
  if (oc.kind == obstacle_kind::power_profile) return eval_obstacle(oc.spec, x, y);
  return eval_radial_poly(oc.poly_coeffs, std::hypot(x, y));
}

}  // namespace oblab
