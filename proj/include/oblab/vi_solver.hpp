#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "oblab/grid.hpp"
#include "oblab/obstacle.hpp"

namespace oblab {

struct SolverParams {
  double omega = 1.9;
  double tol = 0.0;  // 0 means 1e-10 * max(1, max|g|, max|phi|)
  long max_iter = 500000;
};

struct ProblemSpec {
  GridSpec grid;
  ScalarField phi;     // obstacle at nodes
  ScalarField gframe;  // boundary values on the frame, zero inside
  SolverParams params;
  std::optional<BoundaryData> boundary;  // kept for ball mode's frozen ring
};

// Samples the obstacle, fills and admissibility-checks the boundary frame.
ProblemSpec make_problem(const GridSpec& grid, const std::function<double(double, double)>& phi,
                         const BoundaryData& g, const SolverParams& params);

struct SolveResult {
  ScalarField u;
  std::vector<uint8_t> contact_mask;  // u - phi <= 10 * tol
  long iterations = 0;
  double final_residual = 0.0;
  std::vector<double> residual_history;
  bool converged = false;
  double tol_used = 0.0;
  long contact_count = 0;
};

// Projected SOR with fixed lexicographic sweeps; boundary frame held at g.
SolveResult solve(const ProblemSpec& p);

// Same iteration with every node at |x| >= R_dom frozen to the boundary value
// along its direction; realizes the disc domain inside the square grid.
SolveResult ball_mode_solve(const ProblemSpec& p, double R_dom);

// max over free nodes of |min(4u - sum of neighbors, u - phi)|.
double complementarity_residual(const ScalarField& u, const ProblemSpec& p);

// Edge-difference Dirichlet sum over the whole square, the discrete energy the
// sweep minimizes.
double grid_energy(const ScalarField& u);

}  // namespace oblab
