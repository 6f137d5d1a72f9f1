#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oblab/blowup.hpp"
#include "oblab/grid.hpp"
#include "oblab/obstacle.hpp"
#include "oblab/vi_solver.hpp"

namespace oblab {

enum class obstacle_kind { power_profile, radial_polynomial };
enum class solver_mode { square, ball };

struct ObstacleConfig {
  obstacle_kind kind = obstacle_kind::power_profile;
  ObstacleSpec spec;                // power_profile
  std::vector<double> poly_coeffs;  // radial_polynomial: sum_k c_k r^k
};

struct RadiiSpec {
  double r_min = 0.0;
  double r_max = 0.0;
  double ratio = 0.0;
  std::vector<double> build() const;
};

struct BlowupRadiiSpec {
  double r_max = 0.0;
  int count = 0;
  double ratio = 0.0;
  std::vector<double> build() const;  // decreasing
};

struct AnalysisConfig {
  double alpha = 1.5;
  bool alpha_overridden = false;
  std::optional<RadiiSpec> radii;
  std::optional<BlowupRadiiSpec> blowup;
  BlowupThresholds thresholds;
  Annulus annulus;
  GridSpec target;
};

struct ExperimentConfig {
  GridSpec grid;
  std::optional<ObstacleConfig> obstacle;
  std::optional<BoundaryData> boundary;
  SolverParams solver;
  solver_mode mode = solver_mode::square;
  double ball_radius = 0.0;
  AnalysisConfig analysis;
  std::string output_dir = "out";
  std::string config_hash;  // FNV-1a 64 of the canonicalized document, hex
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

double eval_obstacle_config(const ObstacleConfig& oc, double x, double y);

}  // namespace oblab
