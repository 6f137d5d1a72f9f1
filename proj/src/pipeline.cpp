#include "oblab/pipeline.hpp"

#include <cmath>
#include <cstdlib>
#include <thread>

#include "json.hpp"
#include "oblab/errors.hpp"
#include "oblab/io.hpp"

namespace oblab {

namespace {

using json = nlohmann::ordered_json;

void write_json_file(const std::string& path, const json& doc) {
  write_text_file(path, doc.dump(2) + "\n");
}

std::string joined(const std::string& dir, const char* name) {
  if (dir.empty()) return name;
  return dir.back() == '/' ? dir + name : dir + "/" + name;
}

void require_config_grid(const ExperimentConfig& cfg, const ScalarField& u) {
  if (u.grid.m != cfg.grid.m ||
      std::abs(u.grid.L - cfg.grid.L) > 1e-12 * std::max(1.0, cfg.grid.L))
    fail(status::config_error,
         "field grid (m=" + std::to_string(u.grid.m) + ", L=" + format_double(u.grid.L) +
             ") does not match config grid (m=" + std::to_string(cfg.grid.m) +
             ", L=" + format_double(cfg.grid.L) + ")");
}

}  // namespace

int thread_budget() {
  if (const char* env = std::getenv("OBSTACLE_LAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1)
      fail(status::config_error, "OBSTACLE_LAB_THREADS must be a positive integer");
    return static_cast<int>(std::min(v, 256L));
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

ProblemSpec build_problem(const ExperimentConfig& cfg) {
  if (!cfg.obstacle) fail(status::config_error, "solve requires an obstacle");
  if (!cfg.boundary) fail(status::config_error, "solve requires boundary data");
  const ObstacleConfig oc = *cfg.obstacle;
  auto phi = [oc](double x, double y) { return eval_obstacle_config(oc, x, y); };
  return make_problem(cfg.grid, phi, *cfg.boundary, cfg.solver);
}

SolveResult run_solve(const ExperimentConfig& cfg, const std::string& out_dir) {
  ProblemSpec p = build_problem(cfg);
  const SolveResult res =
      cfg.mode == solver_mode::ball ? ball_mode_solve(p, cfg.ball_radius) : solve(p);

  ensure_directory(out_dir);
  write_field_csv(joined(out_dir, "solution.csv"), res.u);
  write_mask_csv(joined(out_dir, "contact_mask.csv"), cfg.grid, res.contact_mask);

  json doc;
  doc["config_hash"] = cfg.config_hash;
  doc["grid"] = {{"m", cfg.grid.m}, {"L", cfg.grid.L}};
  doc["mode"] = cfg.mode == solver_mode::ball ? "ball" : "square";
  doc["omega"] = p.params.omega;
  doc["tol"] = res.tol_used;
  doc["max_iter"] = p.params.max_iter;
  doc["iterations"] = res.iterations;
  doc["converged"] = res.converged;
  doc["final_residual"] = res.final_residual;
  doc["contact_count"] = res.contact_count;
  write_json_file(joined(out_dir, "solve.json"), doc);
  return res;
}

ScalarField load_solution_field(const ExperimentConfig& cfg, const std::string& path) {
  ScalarField u = read_field_csv(path);
  if (u.grid.m != cfg.grid.m || std::abs(u.grid.L - cfg.grid.L) > 1e-12 * std::max(1.0, cfg.grid.L))
    fail(status::config_error,
         "solution grid (m=" + std::to_string(u.grid.m) + ", L=" + format_double(u.grid.L) +
             ") does not match config grid (m=" + std::to_string(cfg.grid.m) +
             ", L=" + format_double(cfg.grid.L) + ")");
  return u;
}

MonotoneProfile run_profile(const ExperimentConfig& cfg, const ScalarField& u,
                            const std::string& out_dir) {
  if (!cfg.analysis.radii)
    fail(status::config_error, "profile requires \"analysis.radii\"");
  require_config_grid(cfg, u);
  const MonotoneProfile p =
      profile(u, cfg.analysis.alpha, cfg.analysis.radii->build(), thread_budget());

  ensure_directory(out_dir);
  write_profile_csv(joined(out_dir, "profile.csv"), p);
  write_text_file(joined(out_dir, "profile.svg"), render_profile_svg(p));

  json doc;
  doc["config_hash"] = cfg.config_hash;
  doc["alpha"] = p.alpha;
  doc["rows"] = p.rows.size();
  doc["min_pairwise_A_difference"] = p.min_pairwise_dA;
  doc["monotonicity_violation"] = p.monotonicity_violation;
  doc["worst_drift_gap"] = p.worst_drift_gap;
  doc["max_drift_violation"] = std::max(0.0, p.worst_drift_gap);
  write_json_file(joined(out_dir, "profile.json"), doc);
  return p;
}

BlowupReport run_blowup(const ExperimentConfig& cfg, const ScalarField& u,
                        const std::string& out_dir) {
  if (!cfg.analysis.blowup)
    fail(status::config_error, "blowup requires \"analysis.blowup\"");
  require_config_grid(cfg, u);
  const BlowupReport rep =
      classify(u, cfg.analysis.alpha, cfg.analysis.blowup->build(), cfg.analysis.thresholds,
               cfg.analysis.annulus, cfg.analysis.target);

  ensure_directory(out_dir);
  write_blowup_csv(joined(out_dir, "blowup.csv"), rep);

  json doc;
  doc["config_hash"] = cfg.config_hash;
  doc["alpha"] = cfg.analysis.alpha;
  doc["classification"] = to_string(rep.classification);
  doc["final_deviation"] = rep.final_deviation;
  doc["final_sup_norm"] = rep.final_sup_norm;
  doc["distances"] = rep.distances;
  if (!rep.profile_theta.empty()) {
    doc["profile_theta"] = rep.profile_theta;
    doc["profile_value"] = rep.profile_value;
  }
  write_json_file(joined(out_dir, "blowup.json"), doc);
  return rep;
}

ScalingCheckReport run_verify(const ExperimentConfig& cfg) {
  if (!cfg.obstacle) fail(status::config_error, "verify-obstacle requires an obstacle");

  std::vector<double> radii;
  if (cfg.analysis.radii) {
    radii = cfg.analysis.radii->build();
  } else {
    const double lo = cfg.grid.L / 64.0;
    const double hi = cfg.grid.L;
    const int n = 32;
    for (int k = 0; k < n; ++k)
      radii.push_back(lo * std::pow(hi / lo, static_cast<double>(k) / (n - 1)));
  }

  const ObstacleConfig& oc = *cfg.obstacle;
  auto phi = [&](double x, double y) { return eval_obstacle_config(oc, x, y); };
  return verify_scaling_inequality(phi, cfg.analysis.alpha, 64, radii);
}

}  // namespace oblab
