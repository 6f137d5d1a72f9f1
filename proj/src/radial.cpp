#include "oblab/radial.hpp"

#include <algorithm>
#include <cmath>

namespace oblab {

double eval_radial_poly(const std::vector<double>& coeffs, double r) {
  double v = 0.0;
  for (size_t k = coeffs.size(); k-- > 0;) v = v * r + coeffs[k];
  return v;
}

double eval_radial_poly_deriv(const std::vector<double>& coeffs, double r) {
  double v = 0.0;
  for (size_t k = coeffs.size(); k-- > 1;) v = v * r + k * coeffs[k];
  return v;
}

namespace {

struct RadialRun {
  std::vector<double> u;
  long iterations;
};

RadialRun run_radial_psor(const RadialProblem& p, int N) {
  const double dr = 1.0 / N;
  std::vector<double> phi(N + 1), u(N + 1);
  double scale = std::max(1.0, std::abs(p.g1));
  for (int k = 0; k <= N; ++k) {
    phi[k] = eval_radial_poly(p.phi_coeffs, k * dr);
    scale = std::max(scale, std::abs(phi[k]));
  }
  if (p.g1 < phi[N] - 1e-12 * scale)
    fail(status::inadmissible_data, "radial boundary value below the obstacle at r = 1");
  const double tol = p.tol * scale;

  for (int k = 0; k < N; ++k) u[k] = std::max(phi[k], 0.0);
  u[N] = p.g1;

  const double omega = 2.0 / (1.0 + std::sin(M_PI / N));
  long it = 1;
  for (; it <= p.max_iter; ++it) {
    double change = 0.0;
    {
      const double cand = (1.0 - omega) * u[0] + omega * u[1];
      const double next = std::max(phi[0], cand);
      change = std::max(change, std::abs(next - u[0]));
      u[0] = next;
    }
    for (int k = 1; k < N; ++k) {
      const double a = k - 0.5, b = k + 0.5;  // half-node radii over dr
      const double gs = (a * u[k - 1] + b * u[k + 1]) / (a + b);
      const double cand = (1.0 - omega) * u[k] + omega * gs;
      const double next = cand > phi[k] ? cand : phi[k];
      const double d = std::abs(next - u[k]);
      if (d > change) change = d;
      u[k] = next;
    }
    if (change > tol) continue;
    double res = std::abs(std::min(u[0] - u[1], u[0] - phi[0]));
    for (int k = 1; k < N; ++k) {
      const double a = k - 0.5, b = k + 0.5;
      const double q = u[k] - (a * u[k - 1] + b * u[k + 1]) / (a + b);
      res = std::max(res, std::abs(std::min(q, u[k] - phi[k])));
    }
    if (res <= tol) break;
  }
  if (it > p.max_iter)
    fail(status::no_convergence, "radial sweep did not reach tolerance within max_iter");
  return {std::move(u), it};
}

}  // namespace

RadialSolution solve_radial(const RadialProblem& p) {
  if (p.N < 16 || (p.N & 1)) fail(status::config_error, "radial N must be even and >= 16");
  RadialRun coarse = run_radial_psor(p, p.N);
  RadialProblem fine_p = p;
  fine_p.N = 2 * p.N;
  RadialRun fine = run_radial_psor(fine_p, fine_p.N);

  double gap = 0.0;
  for (int k = 0; k <= p.N; ++k) gap = std::max(gap, std::abs(coarse.u[k] - fine.u[2 * k]));
  if (gap >= 1e-8)
    fail(status::no_convergence, "radial refinement gap " + std::to_string(gap) + " exceeds 1e-8");

  RadialSolution out;
  out.N = p.N;
  out.u = std::move(coarse.u);
  out.iterations = coarse.iterations;
  out.refinement_gap = gap;
  return out;
}

MatchingResult matching_radius(const std::vector<double>& phi_coeffs, double g1) {
  auto F = [&](double r) {
    return eval_radial_poly(phi_coeffs, r) - eval_radial_poly_deriv(phi_coeffs, r) * r * std::log(r) -
           g1;
  };
  const int scan = 4096;
  const double lo = 1e-6, hi = 1.0 - 1e-6;
  double a = lo, fa = F(a);
  double root_a = 0.0, root_b = 0.0;
  bool found = false;
  for (int k = 1; k <= scan; ++k) {
    const double b = lo + (hi - lo) * k / scan;
    const double fb = F(b);
    if (fa == 0.0) {
      root_a = root_b = a;
      found = true;
      break;
    }
    if (fa * fb < 0.0) {
      root_a = a;
      root_b = b;
      found = true;
      break;
    }
    a = b;
    fa = fb;
  }
  if (!found) {
    double phimax = -1e300;
    for (int k = 0; k <= 1000; ++k)
      phimax = std::max(phimax, eval_radial_poly(phi_coeffs, k / 1000.0));
    if (g1 >= phimax - 1e-12 * std::max(1.0, std::abs(g1)))
      return {false, 0.0};  // constant g1 already admissible: no contact
    fail(status::internal_error, "no matching radius and the constant candidate is inadmissible");
  }
  while (root_b - root_a > 1e-12) {
    const double mid = 0.5 * (root_a + root_b);
    if (F(root_a) * F(mid) <= 0.0)
      root_b = mid;
    else
      root_a = mid;
  }
  return {true, 0.5 * (root_a + root_b)};
}

}  // namespace oblab
