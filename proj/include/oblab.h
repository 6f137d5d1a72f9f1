#ifndef OBLAB_H
#define OBLAB_H

/* C interface to the obstacle-problem laboratory. All functions return a
 * status code from the list below; details for the last failure on the
 * calling thread come from oblab_last_error(). */

#ifdef __cplusplus
extern "C" {
#endif

typedef struct oblab_config oblab_config;
typedef struct oblab_field oblab_field;

enum {
  OBLAB_OK = 0,
  OBLAB_ERR_CONFIG = 1,
  OBLAB_ERR_NO_CONVERGENCE = 2,
  OBLAB_ERR_HYPOTHESIS = 3,
  OBLAB_ERR_OUT_OF_DOMAIN = 4,
  OBLAB_ERR_RADIUS = 5,
  OBLAB_ERR_INADMISSIBLE = 6,
  OBLAB_ERR_IO = 7,
  OBLAB_ERR_INTERNAL = 8
};

const char* oblab_last_error(void);
const char* oblab_status_name(int code);

int oblab_config_load(const char* path, oblab_config** out);
int oblab_config_parse(const char* json_text, oblab_config** out);
void oblab_config_free(oblab_config* cfg);
const char* oblab_config_output_dir(const oblab_config* cfg);
const char* oblab_config_hash(const oblab_config* cfg);

/* Fields are square node grids on [-L, L]^2, m nodes per side, row-major
 * with index j*m + i for node (x_i, y_j) = (-L + i h, -L + j h). */
int oblab_field_create(int m, double L, const double* values, oblab_field** out);
void oblab_field_free(oblab_field* f);
int oblab_field_m(const oblab_field* f);
double oblab_field_extent(const oblab_field* f);
double oblab_field_get(const oblab_field* f, int i, int j);
int oblab_field_sample(const oblab_field* f, double x, double y, double* out);
int oblab_field_read_csv(const char* path, oblab_field** out);
int oblab_field_write_csv(const oblab_field* f, const char* path);

typedef struct oblab_solve_summary {
  int iterations;
  int converged;
  double final_residual;
  double tol;
  long long contact_count;
} oblab_solve_summary;

typedef struct oblab_profile_summary {
  int rows;
  double min_pairwise_A_difference;
  double monotonicity_violation;
  double worst_drift_gap;
} oblab_profile_summary;

typedef struct oblab_blowup_summary {
  int classification; /* 0 Zero, 1 Homogeneous, 2 Undetermined */
  double final_deviation;
  double final_sup_norm;
} oblab_blowup_summary;

typedef struct oblab_verify_summary {
  int pass;
  double worst_violation;
  double worst_theta;
  double worst_r;
  double worst_R;
} oblab_verify_summary;

/* Solves and writes solution.csv, contact_mask.csv, solve.json into out_dir.
 * Returns OBLAB_ERR_NO_CONVERGENCE when the sweep budget is exhausted; the
 * artifacts are still written and the summary is still filled. */
int oblab_run_solve(const oblab_config* cfg, const char* out_dir, oblab_solve_summary* out);

/* In-memory variant; the caller owns the returned field. */
int oblab_solve_field(const oblab_config* cfg, oblab_field** out_field,
                      oblab_solve_summary* out);

/* Writes profile.csv, profile.svg, profile.json. The solution grid must match
 * the config grid. */
int oblab_run_profile(const oblab_config* cfg, const oblab_field* solution,
                      const char* out_dir, oblab_profile_summary* out);

/* Writes blowup.csv, blowup.json. */
int oblab_run_blowup(const oblab_config* cfg, const oblab_field* solution,
                     const char* out_dir, oblab_blowup_summary* out);

/* Checks the obstacle scaling hypothesis at the analysis exponent. A clean
 * run returns OBLAB_OK with out->pass saying whether the hypothesis holds. */
int oblab_verify_obstacle(const oblab_config* cfg, oblab_verify_summary* out);

#ifdef __cplusplus
}
#endif

#endif /* OBLAB_H */
