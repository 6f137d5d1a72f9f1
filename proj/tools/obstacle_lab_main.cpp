#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "oblab.h"

namespace {

int map_exit(int code) {
  switch (code) {
    case OBLAB_OK: return 0;
    case OBLAB_ERR_NO_CONVERGENCE: return 3;
    case OBLAB_ERR_HYPOTHESIS: return 4;
    default: return 2;
  }
}

int report_error(int code) {
  std::fprintf(stderr, "error (%s): %s\n", oblab_status_name(code), oblab_last_error());
  return map_exit(code);
}

struct ConfigHandle {
  oblab_config* c = nullptr;
  ~ConfigHandle() { oblab_config_free(c); }
};

struct FieldHandle {
  oblab_field* f = nullptr;
  ~FieldHandle() { oblab_field_free(f); }
};

const char* class_name(int c) {
  switch (c) {
    case 0: return "Zero";
    case 1: return "Homogeneous";
    default: return "Undetermined";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for the two-dimensional obstacle problem"};
  app.require_subcommand(1);

  std::string config_path, out_override, solution_path, field_path;

  auto* cmd_solve = app.add_subcommand("solve", "solve the variational inequality");
  auto* cmd_profile = app.add_subcommand("profile", "monotone quantity across radii");
  auto* cmd_blowup = app.add_subcommand("blowup", "rescale and classify the blow-up limit");
  auto* cmd_verify =
      app.add_subcommand("verify-obstacle", "check the obstacle scaling hypothesis");

  for (auto* cmd : {cmd_solve, cmd_profile, cmd_blowup, cmd_verify}) {
    cmd->add_option("--config", config_path, "experiment config (JSON)")->required();
    cmd->add_option("--out", out_override, "output directory override");
  }
  for (auto* cmd : {cmd_profile, cmd_blowup}) {
    cmd->add_option("--solution", solution_path, "solution CSV to analyze");
    cmd->add_option("--field", field_path, "raw field CSV, takes precedence over --solution");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  ConfigHandle cfg;
  int rc = oblab_config_load(config_path.c_str(), &cfg.c);
  if (rc != OBLAB_OK) return report_error(rc);

  const std::string out_dir =
      out_override.empty() ? std::string(oblab_config_output_dir(cfg.c)) : out_override;

  if (cmd_solve->parsed()) {
    oblab_solve_summary s{};
    rc = oblab_run_solve(cfg.c, out_dir.c_str(), &s);
    if (rc != OBLAB_OK && rc != OBLAB_ERR_NO_CONVERGENCE) return report_error(rc);
    std::printf("%s after %d sweeps: residual %.6e (tol %.6e), contact nodes %lld\n",
                s.converged ? "converged" : "sweep budget exhausted", s.iterations,
                s.final_residual, s.tol, s.contact_count);
    std::printf("artifacts written to %s\n", out_dir.c_str());
    return map_exit(rc);
  }

  if (cmd_profile->parsed() || cmd_blowup->parsed()) {
    const std::string src = !field_path.empty()
                                ? field_path
                                : (!solution_path.empty() ? solution_path
                                                          : out_dir + "/solution.csv");
    FieldHandle u;
    rc = oblab_field_read_csv(src.c_str(), &u.f);
    if (rc != OBLAB_OK) return report_error(rc);

    if (cmd_profile->parsed()) {
      oblab_profile_summary ps{};
      rc = oblab_run_profile(cfg.c, u.f, out_dir.c_str(), &ps);
      if (rc != OBLAB_OK) return report_error(rc);
      std::printf("profile rows %d: min pairwise A difference %.6e, "
                  "monotonicity violation %.6e, worst drift gap %.6e\n",
                  ps.rows, ps.min_pairwise_A_difference, ps.monotonicity_violation,
                  ps.worst_drift_gap);
      std::printf("artifacts written to %s\n", out_dir.c_str());
      return 0;
    }

    oblab_blowup_summary bs{};
    rc = oblab_run_blowup(cfg.c, u.f, out_dir.c_str(), &bs);
    if (rc != OBLAB_OK) return report_error(rc);
    std::printf("classification %s: final deviation %.6e, final sup norm %.6e\n",
                class_name(bs.classification), bs.final_deviation, bs.final_sup_norm);
    std::printf("artifacts written to %s\n", out_dir.c_str());
    return 0;
  }

  oblab_verify_summary vs{};
  rc = oblab_verify_obstacle(cfg.c, &vs);
  if (rc != OBLAB_OK) return report_error(rc);
  if (vs.pass) {
    std::printf("scaling hypothesis holds (worst slack %.6e)\n", vs.worst_violation);
    return 0;
  }
  std::printf("scaling hypothesis violated by %.6e at theta %.6f, radii %.6g -> %.6g\n",
              -vs.worst_violation, vs.worst_theta, vs.worst_r, vs.worst_R);
  return 4;
}
