#include "oblab/obstacle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace oblab {

namespace {

double trig_poly(const std::vector<double>& cosc, const std::vector<double>& sinc, double theta) {
  double v = 0.0;
  for (size_t k = 0; k < cosc.size(); ++k) v += cosc[k] * std::cos(k * theta);
  for (size_t k = 0; k < sinc.size(); ++k) v += sinc[k] * std::sin((k + 1) * theta);
  return v;
}

}  // namespace

void validate_obstacle(const ObstacleSpec& spec) {
  if (!(spec.alpha > 1.0) || !(spec.alpha < 2.0))
    fail(status::config_error, "obstacle.alpha must lie in (1, 2)");
  if (spec.cos_coeffs.empty() && spec.sin_coeffs.empty())
    fail(status::config_error, "obstacle profile has no coefficients");
  if (spec.has_modulation) {
    if (!(spec.mod_p > 0.0)) fail(status::config_error, "obstacle.modulation.p must be positive");
    double scale = 0.0, worst = 0.0;
    for (int k = 0; k < 720; ++k) {
      const double a = angular_profile(spec, k * M_PI / 360.0);
      scale = std::max(scale, std::abs(a));
      worst = std::min(worst, spec.mod_c * a);
    }
    if (worst < -1e-12 * std::max(1.0, std::abs(spec.mod_c) * scale))
      fail(status::config_error, "obstacle modulation must satisfy c*a(theta) >= 0");
  }
}

double angular_profile(const ObstacleSpec& spec, double theta) {
  return trig_poly(spec.cos_coeffs, spec.sin_coeffs, theta);
}

double eval_obstacle(const ObstacleSpec& spec, double px, double py) {
  const double r = std::sqrt(px * px + py * py);
  if (r == 0.0) return 0.0;
  const double theta = std::atan2(py, px);
  double v = angular_profile(spec, theta) * std::pow(r, spec.alpha);
  if (spec.has_modulation) v *= 1.0 + spec.mod_c * std::pow(r, spec.mod_p);
  return v;
}

double eval_boundary(const BoundaryData& g, double px, double py) {
  if (g.k == BoundaryData::kind::constant) return g.value;
  const double theta = std::atan2(py, px);
  double v = trig_poly(g.cos_coeffs, g.sin_coeffs, theta);
  if (g.clamp_floor) v = std::max(v, *g.clamp_floor);
  return v;
}

ScalarField boundary_field(const BoundaryData& g, const GridSpec& grid,
                           const std::function<double(double, double)>& phi) {
  ScalarField out = make_field(grid);
  const int m = grid.m;
  double worst = 0.0;
  int wi = 0, wj = 0;
  auto put = [&](int i, int j) {
    const double x = out.x(i), y = out.y(j);
    const double gv = eval_boundary(g, x, y);
    const double slack = gv - phi(x, y);
    if (slack < worst) {
      worst = slack;
      wi = i;
      wj = j;
    }
    out.at(i, j) = gv;
  };
  for (int i = 0; i < m; ++i) {
    put(i, 0);
    put(i, m - 1);
  }
  for (int j = 1; j + 1 < m; ++j) {
    put(0, j);
    put(m - 1, j);
  }
  if (worst < -1e-12)
    fail(status::inadmissible_data,
         "boundary data below the obstacle at node (" + std::to_string(wi) + "," +
             std::to_string(wj) + "), gap " + std::to_string(worst));
  return out;
}

ScalingCheckReport verify_scaling_inequality(const std::function<double(double, double)>& phi,
                                             double alpha, int ray_count,
                                             const std::vector<double>& radii) {
  if (ray_count < 8) fail(status::config_error, "scaling check needs at least 8 rays");
  if (radii.size() < 2) fail(status::config_error, "scaling check needs at least two radii");
  for (size_t k = 0; k + 1 < radii.size(); ++k)
    if (!(radii[k] > 0.0) || !(radii[k] < radii[k + 1]))
      fail(status::config_error, "scaling check radii must be positive and increasing");

  double scale = 0.0;
  std::vector<std::vector<double>> vals(static_cast<size_t>(ray_count));
  for (int k = 0; k < ray_count; ++k) {
    const double theta = 2.0 * M_PI * k / ray_count;
    vals[k].reserve(radii.size());
    for (double r : radii) {
      const double v = phi(r * std::cos(theta), r * std::sin(theta));
      vals[k].push_back(v);
      scale = std::max(scale, std::abs(v));
    }
  }
  const double tol = 1e-12 * std::max(1.0, scale);

  ScalingCheckReport rep;
  for (int k = 0; k < ray_count; ++k) {
    const double theta = 2.0 * M_PI * k / ray_count;
    for (size_t a = 0; a < radii.size(); ++a) {
      for (size_t b = a + 1; b < radii.size(); ++b) {
        const double slack = std::pow(radii[a] / radii[b], alpha) * vals[k][b] - vals[k][a];
        if (slack < rep.worst_violation) {
          rep.worst_violation = slack;
          rep.worst_theta = theta;
          rep.worst_r = radii[a];
          rep.worst_R = radii[b];
        }
      }
    }
  }
  rep.pass = rep.worst_violation >= -tol;
  return rep;
}

ScalingCheckReport verify_scaling_inequality(const ObstacleSpec& spec, int ray_count,
                                             const std::vector<double>& radii) {
  return verify_scaling_inequality(
      [&spec](double x, double y) { return eval_obstacle(spec, x, y); }, spec.alpha, ray_count,
      radii);
}

}  // namespace oblab
