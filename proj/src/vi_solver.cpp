#include "oblab/vi_solver.hpp"

#include <algorithm>
#include <cmath>

namespace oblab {

namespace {

double tol_for(const ProblemSpec& p) {
  if (p.params.tol > 0.0) return p.params.tol;
  double scale = 1.0;
  const int m = p.grid.m;
  for (double v : p.phi.values) scale = std::max(scale, std::abs(v));
  for (int i = 0; i < m; ++i) {
    scale = std::max({scale, std::abs(p.gframe.at(i, 0)), std::abs(p.gframe.at(i, m - 1)),
                      std::abs(p.gframe.at(0, i)), std::abs(p.gframe.at(m - 1, i))});
  }
  return 1e-10 * scale;
}

SolveResult run_psor(const ProblemSpec& p, const std::vector<uint8_t>& active,
                     const ScalarField& start) {
  const int m = p.grid.m;
  const double omega = p.params.omega;
  if (!(omega > 0.0) || !(omega < 2.0)) fail(status::config_error, "solver.omega must lie in (0, 2)");
  const double tol = tol_for(p);

  SolveResult res;
  res.u = start;
  res.tol_used = tol;
  double* u = res.u.values.data();
  const double* phi = p.phi.values.data();

  double residual = 0.0;
  for (long it = 1; it <= p.params.max_iter; ++it) {
    for (int j = 1; j + 1 < m; ++j) {
      const size_t row = static_cast<size_t>(j) * m;
      for (int i = 1; i + 1 < m; ++i) {
        const size_t idx = row + i;
        if (!active[idx]) continue;
        const double mean = 0.25 * (u[idx - 1] + u[idx + 1] + u[idx - m] + u[idx + m]);
        const double cand = (1.0 - omega) * u[idx] + omega * mean;
        u[idx] = cand > phi[idx] ? cand : phi[idx];
      }
    }
    residual = 0.0;
    for (int j = 1; j + 1 < m; ++j) {
      const size_t row = static_cast<size_t>(j) * m;
      for (int i = 1; i + 1 < m; ++i) {
        const size_t idx = row + i;
        if (!active[idx]) continue;
        const double q = 4.0 * u[idx] - u[idx - 1] - u[idx + 1] - u[idx - m] - u[idx + m];
        const double s = u[idx] - phi[idx];
        const double v = std::abs(std::min(q, s));
        if (v > residual) residual = v;
      }
    }
    res.residual_history.push_back(residual);
    res.iterations = it;
    if (residual <= tol) {
      res.converged = true;
      break;
    }
  }
  res.final_residual = residual;

  const double contact_tol = 10.0 * tol;
  res.contact_mask.assign(res.u.values.size(), 0);
  for (size_t k = 0; k < res.u.values.size(); ++k) {
    if (res.u.values[k] - p.phi.values[k] <= contact_tol) {
      res.contact_mask[k] = 1;
      ++res.contact_count;
    }
  }
  return res;
}

}  // namespace

ProblemSpec make_problem(const GridSpec& grid, const std::function<double(double, double)>& phi,
                         const BoundaryData& g, const SolverParams& params) {
  ProblemSpec p;
  p.grid = grid;
  p.phi = make_field(grid, phi);
  p.gframe = boundary_field(g, grid, phi);
  p.params = params;
  p.boundary = g;
  return p;
}

SolveResult solve(const ProblemSpec& p) {
  const int m = p.grid.m;
  std::vector<uint8_t> active(static_cast<size_t>(m) * m, 0);
  for (int j = 1; j + 1 < m; ++j)
    for (int i = 1; i + 1 < m; ++i) active[static_cast<size_t>(j) * m + i] = 1;

  ScalarField start = p.gframe;
  for (int j = 1; j + 1 < m; ++j)
    for (int i = 1; i + 1 < m; ++i) start.at(i, j) = std::max(p.phi.at(i, j), 0.0);
  return run_psor(p, active, start);
}

SolveResult ball_mode_solve(const ProblemSpec& p, double R_dom) {
  if (!(R_dom > 0.0) || R_dom > p.grid.L + 1e-12)
    fail(status::bad_radius, "ball-mode radius must satisfy 0 < R_dom <= L");
  if (!p.boundary) fail(status::internal_error, "ball-mode problem lacks boundary data");
  const int m = p.grid.m;

  std::vector<uint8_t> active(static_cast<size_t>(m) * m, 0);
  ScalarField start = make_field(p.grid);
  double worst = 0.0;
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      const size_t idx = static_cast<size_t>(j) * m + i;
      const double x = start.x(i), y = start.y(j);
      const double r = std::sqrt(x * x + y * y);
      const bool frame = (i == 0 || j == 0 || i == m - 1 || j == m - 1);
      if (!frame && r < R_dom - 1e-12) {
        active[idx] = 1;
        start.values[idx] = std::max(p.phi.values[idx], 0.0);
      } else {
        const double gv = eval_boundary(*p.boundary, x, y);
        start.values[idx] = gv;
        if (r <= R_dom + 2.0 * p.grid.h) worst = std::min(worst, gv - p.phi.values[idx]);
      }
    }
  }
  if (worst < -1e-12)
    fail(status::inadmissible_data, "boundary data below the obstacle on the disc rim");
  return run_psor(p, active, start);
}

double complementarity_residual(const ScalarField& u, const ProblemSpec& p) {
  if (!(u.grid == p.grid)) fail(status::config_error, "field grid does not match the problem grid");
  const int m = p.grid.m;
  double res = 0.0;
  for (int j = 1; j + 1 < m; ++j) {
    for (int i = 1; i + 1 < m; ++i) {
      const double q = 4.0 * u.at(i, j) - u.at(i - 1, j) - u.at(i + 1, j) - u.at(i, j - 1) -
                       u.at(i, j + 1);
      const double s = u.at(i, j) - p.phi.at(i, j);
      res = std::max(res, std::abs(std::min(q, s)));
    }
  }
  return res;
}

double grid_energy(const ScalarField& u) {
  const int m = u.grid.m;
  double e = 0.0;
  for (int j = 0; j < m; ++j)
    for (int i = 0; i + 1 < m; ++i) {
      const double d = u.at(i + 1, j) - u.at(i, j);
      e += d * d;
    }
  for (int j = 0; j + 1 < m; ++j)
    for (int i = 0; i < m; ++i) {
      const double d = u.at(i, j + 1) - u.at(i, j);
      e += d * d;
    }
  return e;
}

}  // namespace oblab
