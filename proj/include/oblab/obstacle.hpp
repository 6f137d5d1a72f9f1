#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "oblab/grid.hpp"

namespace oblab {

// phi(r, theta) = a(theta) * r^alpha * (1 + c * r^p) with a a trigonometric
// polynomial; 1 < alpha < 2 so phi(0) = |grad phi(0)| = 0.
struct ObstacleSpec {
  double alpha = 1.5;
  std::vector<double> cos_coeffs;  // a0, a1*cos(theta), a2*cos(2 theta), ...
  std::vector<double> sin_coeffs;  // b1*sin(theta), b2*sin(2 theta), ...
  bool has_modulation = false;
  double mod_c = 0.0;
  double mod_p = 0.0;
};

void validate_obstacle(const ObstacleSpec& spec);

double angular_profile(const ObstacleSpec& spec, double theta);
double eval_obstacle(const ObstacleSpec& spec, double px, double py);

struct BoundaryData {
  enum class kind { constant, angular };
  kind k = kind::constant;
  double value = 0.0;                    // constant
  std::vector<double> cos_coeffs;        // angular trig polynomial of theta
  std::vector<double> sin_coeffs;
  std::optional<double> clamp_floor;     // optional g = max(trig(theta), floor)
};

double eval_boundary(const BoundaryData& g, double px, double py);

// Frame nodes of [-L,L]^2 filled with g, interior zero. Checks g >= phi at
// every frame node.
ScalarField boundary_field(const BoundaryData& g, const GridSpec& grid,
                           const std::function<double(double, double)>& phi);

struct ScalingCheckReport {
  bool pass = true;
  double worst_violation = 0.0;  // most negative slack of (r/R)^alpha phi(R theta) - phi(r theta)
  double worst_theta = 0.0;
  double worst_r = 0.0;
  double worst_R = 0.0;
};

// Checks that phi(r theta)/r^alpha is nondecreasing in r along every sampled ray.
ScalingCheckReport verify_scaling_inequality(const std::function<double(double, double)>& phi,
                                             double alpha, int ray_count,
                                             const std::vector<double>& radii);
ScalingCheckReport verify_scaling_inequality(const ObstacleSpec& spec, int ray_count,
                                             const std::vector<double>& radii);

}  // namespace oblab
