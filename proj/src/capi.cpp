#include "oblab.h"

#include <cmath>
#include <string>

#include "oblab/config.hpp"
#include "oblab/errors.hpp"
#include "oblab/io.hpp"
#include "oblab/pipeline.hpp"

struct oblab_config {
  oblab::ExperimentConfig cfg;
};

struct oblab_field {
  oblab::ScalarField f;
};

namespace {

thread_local std::string g_error;

template <typename F>
int guarded(F&& fn) {
  try {
    return fn();
  } catch (const oblab::error& e) {
    g_error = e.what();
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    g_error = e.what();
    return OBLAB_ERR_INTERNAL;
  } catch (...) {
    g_error = "unknown failure";
    return OBLAB_ERR_INTERNAL;
  }
}

int null_arg(const char* what) {
  g_error = std::string("null argument: ") + what;
  return OBLAB_ERR_INTERNAL;
}

void fill_solve_summary(const oblab::SolveResult& res, oblab_solve_summary* out) {
  out->iterations = res.iterations;
  out->converged = res.converged ? 1 : 0;
  out->final_residual = res.final_residual;
  out->tol = res.tol_used;
  out->contact_count = static_cast<long long>(res.contact_count);
}

}  // namespace

extern "C" {

const char* oblab_last_error(void) { return g_error.c_str(); }

const char* oblab_status_name(int code) {
  switch (code) {
    case OBLAB_OK: return "ok";
    case OBLAB_ERR_CONFIG: return "config error";
    case OBLAB_ERR_NO_CONVERGENCE: return "no convergence";
    case OBLAB_ERR_HYPOTHESIS: return "hypothesis violation";
    case OBLAB_ERR_OUT_OF_DOMAIN: return "out of domain";
    case OBLAB_ERR_RADIUS: return "bad radius";
    case OBLAB_ERR_INADMISSIBLE: return "inadmissible data";
    case OBLAB_ERR_IO: return "io error";
    default: return "internal error";
  }
}

int oblab_config_load(const char* path, oblab_config** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    auto* c = new oblab_config{oblab::load_config(path)};
    *out = c;
    return OBLAB_OK;
  });
}

int oblab_config_parse(const char* json_text, oblab_config** out) {
  if (!json_text) return null_arg("json_text");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    auto* c = new oblab_config{oblab::parse_config(json_text)};
    *out = c;
    return OBLAB_OK;
  });
}

void oblab_config_free(oblab_config* cfg) { delete cfg; }

const char* oblab_config_output_dir(const oblab_config* cfg) {
  return cfg ? cfg->cfg.output_dir.c_str() : "";
}

const char* oblab_config_hash(const oblab_config* cfg) {
  return cfg ? cfg->cfg.config_hash.c_str() : "";
}

int oblab_field_create(int m, double L, const double* values, oblab_field** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    oblab::ScalarField f = oblab::make_field(oblab::make_grid(m, L));
    if (values) {
      for (size_t k = 0; k < f.values.size(); ++k) f.values[k] = values[k];
      oblab::check_finite(f);
    }
    *out = new oblab_field{std::move(f)};
    return OBLAB_OK;
  });
}

void oblab_field_free(oblab_field* f) { delete f; }

int oblab_field_m(const oblab_field* f) { return f ? f->f.grid.m : 0; }

double oblab_field_extent(const oblab_field* f) { return f ? f->f.grid.L : 0.0; }

double oblab_field_get(const oblab_field* f, int i, int j) {
  if (!f || i < 0 || j < 0 || i >= f->f.grid.m || j >= f->f.grid.m) {
    g_error = "field index out of range";
    return std::nan("");
  }
  return f->f.at(i, j);
}

int oblab_field_sample(const oblab_field* f, double x, double y, double* out) {
  if (!f) return null_arg("field");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = oblab::sample(f->f, x, y);
    return OBLAB_OK;
  });
}

int oblab_field_read_csv(const char* path, oblab_field** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    *out = new oblab_field{oblab::read_field_csv(path)};
    return OBLAB_OK;
  });
}

int oblab_field_write_csv(const oblab_field* f, const char* path) {
  if (!f) return null_arg("field");
  if (!path) return null_arg("path");
  return guarded([&] {
    oblab::write_field_csv(path, f->f);
    return OBLAB_OK;
  });
}

int oblab_run_solve(const oblab_config* cfg, const char* out_dir, oblab_solve_summary* out) {
  if (!cfg) return null_arg("config");
  if (!out_dir) return null_arg("out_dir");
  if (!out) return null_arg("out");
  return guarded([&] {
    const oblab::SolveResult res = oblab::run_solve(cfg->cfg, out_dir);
    fill_solve_summary(res, out);
    return res.converged ? OBLAB_OK : OBLAB_ERR_NO_CONVERGENCE;
  });
}

int oblab_solve_field(const oblab_config* cfg, oblab_field** out_field,
                      oblab_solve_summary* out) {
  if (!cfg) return null_arg("config");
  if (!out_field) return null_arg("out_field");
  if (!out) return null_arg("out");
  *out_field = nullptr;
  return guarded([&] {
    oblab::ProblemSpec p = oblab::build_problem(cfg->cfg);
    const oblab::SolveResult res = cfg->cfg.mode == oblab::solver_mode::ball
                                       ? oblab::ball_mode_solve(p, cfg->cfg.ball_radius)
                                       : oblab::solve(p);
    fill_solve_summary(res, out);
    *out_field = new oblab_field{res.u};
    return res.converged ? OBLAB_OK : OBLAB_ERR_NO_CONVERGENCE;
  });
}

int oblab_run_profile(const oblab_config* cfg, const oblab_field* solution,
                      const char* out_dir, oblab_profile_summary* out) {
  if (!cfg) return null_arg("config");
  if (!solution) return null_arg("solution");
  if (!out_dir) return null_arg("out_dir");
  if (!out) return null_arg("out");
  return guarded([&] {
    const oblab::MonotoneProfile p = oblab::run_profile(cfg->cfg, solution->f, out_dir);
    out->rows = static_cast<int>(p.rows.size());
    out->min_pairwise_A_difference = p.min_pairwise_dA;
    out->monotonicity_violation = p.monotonicity_violation;
    out->worst_drift_gap = p.worst_drift_gap;
    return OBLAB_OK;
  });
}

int oblab_run_blowup(const oblab_config* cfg, const oblab_field* solution,
                     const char* out_dir, oblab_blowup_summary* out) {
  if (!cfg) return null_arg("config");
  if (!solution) return null_arg("solution");
  if (!out_dir) return null_arg("out_dir");
  if (!out) return null_arg("out");
  return guarded([&] {
    const oblab::BlowupReport rep = oblab::run_blowup(cfg->cfg, solution->f, out_dir);
    out->classification = static_cast<int>(rep.classification);
    out->final_deviation = rep.final_deviation;
    out->final_sup_norm = rep.final_sup_norm;
    return OBLAB_OK;
  });
}

int oblab_verify_obstacle(const oblab_config* cfg, oblab_verify_summary* out) {
  if (!cfg) return null_arg("config");
  if (!out) return null_arg("out");
  return guarded([&] {
    const oblab::ScalingCheckReport rep = oblab::run_verify(cfg->cfg);
    out->pass = rep.pass ? 1 : 0;
    out->worst_violation = rep.worst_violation;
    out->worst_theta = rep.worst_theta;
    out->worst_r = rep.worst_r;
    out->worst_R = rep.worst_R;
    return OBLAB_OK;
  });
}

}  // extern "C"
