#pragma once

#include <vector>

#include "oblab/grid.hpp"

namespace oblab {

// A(R, u) = R^-(n+2(alpha-1)) int_{B_R} |grad u|^2  -  alpha int_{S^1} (u(R theta)/R^alpha)^2,
// n = 2 throughout; the exponents keep the symbolic n.

struct ProfileRow {
  double R = 0.0;
  double energy_term = 0.0;
  double boundary_term = 0.0;
  double A = 0.0;
  double drift = 0.0;
};

struct MonotoneProfile {
  double alpha = 0.0;
  std::vector<ProfileRow> rows;
  double min_pairwise_dA = 0.0;        // min over i<j of A_j - A_i
  double monotonicity_violation = 0.0; // max(0, -min_pairwise_dA)
  double worst_drift_gap = 0.0;        // max over i<j of (trapezoid drift - (A_j - A_i))
};

double energy_term(const ScalarField& u, double R, double alpha);
double boundary_term(const ScalarField& u, double R, double alpha);
double A_value(const ScalarField& u, double R, double alpha);

// int_{S^1} R^-(1+2(alpha-1)) (d_nu u - alpha u / R)^2; nonnegative, zero on
// alpha-homogeneous fields.
double drift(const ScalarField& u, double R, double alpha);

// w(x) = (|x|/R)^alpha u(R x/|x|) inside B_R, w(0) = 0, u elsewhere.
ScalarField cone_extension(const ScalarField& u, double R, double alpha);

struct IdentityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
};

// Dirichlet energy of the cone extension against its closed form
// R^n/(n+2(alpha-1)) int_{S^1} [alpha^2 u^2/R^2 + |grad u|^2 - (grad u . theta)^2].
// The 2h core around the apex is excluded from the energy.
IdentityCheck energy_identity_check(const ScalarField& u, double R, double alpha);

// Rows at each radius; radii must be increasing within [2h, L-2h].
MonotoneProfile profile(const ScalarField& u, double alpha, const std::vector<double>& radii,
                        int thread_count = 1);

// Trapezoid integral of drift between rows i and j of the profile grid.
double integrate_drift(const MonotoneProfile& p, size_t i, size_t j);

}  // namespace oblab
