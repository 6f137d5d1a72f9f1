#pragma once

#include <string>

#include "oblab/blowup.hpp"
#include "oblab/config.hpp"
#include "oblab/obstacle.hpp"
#include "oblab/vi_solver.hpp"
#include "oblab/weiss.hpp"

namespace oblab {

// OBSTACLE_LAB_THREADS when set, hardware concurrency otherwise.
int thread_budget();

ProblemSpec build_problem(const ExperimentConfig& cfg);

// Writes solution.csv, contact_mask.csv, solve.json into out_dir. A run that
// hits max_iter still writes its artifacts, with converged = false.
SolveResult run_solve(const ExperimentConfig& cfg, const std::string& out_dir);

ScalarField load_solution_field(const ExperimentConfig& cfg, const std::string& path);

// Writes profile.csv, profile.svg, profile.json.
MonotoneProfile run_profile(const ExperimentConfig& cfg, const ScalarField& u,
                            const std::string& out_dir);

// Writes blowup.csv, blowup.json.
BlowupReport run_blowup(const ExperimentConfig& cfg, const ScalarField& u,
                        const std::string& out_dir);

ScalingCheckReport run_verify(const ExperimentConfig& cfg);

}  // namespace oblab
