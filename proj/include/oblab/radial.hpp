#pragma once

#include <vector>

#include "oblab/errors.hpp"

namespace oblab {

// Reduced radial obstacle problem on [0,1]: minimize the weighted energy
// int u'(r)^2 r dr over u >= phi with u(1) = g1 and the natural condition at 0.
struct RadialProblem {
  std::vector<double> phi_coeffs;  // phi(r) = sum coeffs[k] * r^k
  double g1 = 0.0;
  int N = 16384;
  double tol = 1e-12;  // scaled by max(1, |g1|, max|phi|)
  long max_iter = 2000000;
};

struct RadialSolution {
  int N = 0;
  std::vector<double> u;  // nodes r_k = k/N, k = 0..N
  long iterations = 0;
  double refinement_gap = 0.0;  // sup distance to the 2N solve on shared nodes
};

double eval_radial_poly(const std::vector<double>& coeffs, double r);
double eval_radial_poly_deriv(const std::vector<double>& coeffs, double r);

// 1-D projected SOR with near-optimal relaxation; solves at N and 2N and
// requires the two to agree within 1e-8.
RadialSolution solve_radial(const RadialProblem& p);

struct MatchingResult {
  bool contact = false;
  double r_star = 0.0;
};

// Contact radius of the semi-analytic solution u = phi on [0,r*],
// u = phi(r*) + phi'(r*) r* ln(r/r*) on [r*,1], found by bisection on
// F(r) = phi(r) - phi'(r) r ln(r) - g1.
MatchingResult matching_radius(const std::vector<double>& phi_coeffs, double g1);

}  // namespace oblab
