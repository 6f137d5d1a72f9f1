#pragma once

#include <vector>

#include "oblab/grid.hpp"

namespace oblab {

enum class blowup_class { zero, homogeneous, undetermined };

const char* to_string(blowup_class c);

struct BlowupThresholds {
  double eps_zero = 1e-4;
  double eps_homog = 1e-2;
};

struct Annulus {
  double r_in = 0.25;
  double r_out = 0.75;
};

struct BlowupStep {
  double R = 0.0;
  double deviation = 0.0;
  double sup_norm = 0.0;
};

struct BlowupReport {
  blowup_class classification = blowup_class::undetermined;
  std::vector<BlowupStep> steps;
  std::vector<double> distances;  // sup distance on the annulus between consecutive rescalings
  double final_deviation = 0.0;
  double final_sup_norm = 0.0;
  std::vector<double> profile_theta;  // angular profile of the last rescaling, homogeneous case
  std::vector<double> profile_value;
};

// u_R(x) = u(R x) / R^alpha sampled onto the target grid; requires
// R * L_target <= L_source - h_source.
ScalarField rescale(const ScalarField& u, double R, double alpha, const GridSpec& target);

// int_annulus (x . grad v - alpha v)^2 / max(int_annulus v^2, 1e-14).
double homogeneity_deviation(const ScalarField& v, double alpha, const Annulus& ann);

// max over s of |A(u, s R) - A(u_R, s)|.
double verify_scaling_identity(const ScalarField& u, double R,
                               const std::vector<double>& s_values, double alpha,
                               const GridSpec& target);

// Radii must be strictly decreasing, at least 4 of them.
BlowupReport classify(const ScalarField& u, double alpha, const std::vector<double>& radii,
                      const BlowupThresholds& thr, const Annulus& ann, const GridSpec& target);

// max over sphere directions and the given radii of |grad u(r theta)| / r^(alpha-1).
double holder_quotient(const ScalarField& u, const std::vector<double>& radii, double alpha);

}  // namespace oblab
