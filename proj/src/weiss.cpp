#include "oblab/weiss.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "oblab/errors.hpp"

namespace oblab {

namespace {

constexpr double kPi = 3.14159265358979323846;

double energy_term_cached(const ScalarField& g2, double R, double alpha) {
  return ball_integral(g2, R) * std::pow(R, -(2.0 + 2.0 * (alpha - 1.0)));
}

double boundary_term_impl(const ScalarField& u, double R, double alpha) {
  const double scale = std::pow(R, alpha);
  const int K = default_sphere_nodes(R, u.grid.h);
  auto f = [&](double theta) {
    const double v = sample(u, R * std::cos(theta), R * std::sin(theta)) / scale;
    return v * v;
  };
  return alpha * sphere_integral(f, R, K);
}

double drift_cached(const ScalarField& u, const NodeGradient& grad, double R, double alpha) {
  const double pre = std::pow(R, -(1.0 + 2.0 * (alpha - 1.0)));
  const int K = default_sphere_nodes(R, u.grid.h);
  auto f = [&](double theta) {
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    const auto [gx, gy] = gradient_at(grad, R * ct, R * st);
    const double radial = gx * ct + gy * st;
    const double q = radial - alpha * sample(u, R * ct, R * st) / R;
    return pre * q * q;
  };
  return sphere_integral(f, R, K);
}

void check_drift_radius(const GridSpec& g, double R) {
  if (!(R >= g.h * (1.0 - 1e-12)) || !(R <= g.L - 2.0 * g.h + 1e-12 * g.L))
    fail(status::bad_radius, "drift radius must satisfy h <= R <= L - 2h");
}

}  // namespace

double energy_term(const ScalarField& u, double R, double alpha) {
  const NodeGradient grad = node_gradient(u);
  ScalarField sq = u;
  for (size_t k = 0; k < sq.values.size(); ++k)
    sq.values[k] = grad.gx.values[k] * grad.gx.values[k] + grad.gy.values[k] * grad.gy.values[k];
  return energy_term_cached(sq, R, alpha);
}

double boundary_term(const ScalarField& u, double R, double alpha) {
  if (!(R > 0.0) || !(R > u.grid.h) || !(R <= u.grid.L - u.grid.h + 1e-12 * u.grid.L))
    fail(status::bad_radius, "boundary term radius must satisfy h < R <= L - h");
  return boundary_term_impl(u, R, alpha);
}

double A_value(const ScalarField& u, double R, double alpha) {
  return energy_term(u, R, alpha) - boundary_term(u, R, alpha);
}

double drift(const ScalarField& u, double R, double alpha) {
  check_drift_radius(u.grid, R);
  return drift_cached(u, node_gradient(u), R, alpha);
}

ScalarField cone_extension(const ScalarField& u, double R, double alpha) {
  const GridSpec& g = u.grid;
  if (!(R > 0.0) || !(R <= g.L - g.h + 1e-12 * g.L))
    fail(status::bad_radius, "cone extension radius must satisfy 0 < R <= L - h");
  ScalarField w = u;
  for (int j = 0; j < g.m; ++j) {
    const double y = w.y(j);
    for (int i = 0; i < g.m; ++i) {
      const double x = w.x(i);
      const double r = std::hypot(x, y);
      if (r >= R) continue;
      if (r < 1e-300) {
        w.at(i, j) = 0.0;
        continue;
      }
      const double trace = sample(u, R * x / r, R * y / r);
      w.at(i, j) = std::pow(r / R, alpha) * trace;
    }
  }
  return w;
}

IdentityCheck energy_identity_check(const ScalarField& u, double R, double alpha) {
  const GridSpec& g = u.grid;
  if (!(R >= 4.0 * g.h) || !(R <= g.L - 2.0 * g.h + 1e-12 * g.L))
    fail(status::bad_radius, "identity check radius must satisfy 4h <= R <= L - 2h");

  const ScalarField w = cone_extension(u, R, alpha);
  const NodeGradient gw = node_gradient(w);
  ScalarField g2w = w;
  for (size_t k = 0; k < g2w.values.size(); ++k)
    g2w.values[k] = gw.gx.values[k] * gw.gx.values[k] + gw.gy.values[k] * gw.gy.values[k];

  IdentityCheck out;
  out.lhs = ball_integral(g2w, R) - ball_integral(g2w, 2.0 * g.h);

  const NodeGradient gu = node_gradient(u);
  const int K = default_sphere_nodes(R, g.h);
  auto f = [&](double theta) {
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    const double us = sample(u, R * ct, R * st);
    const auto [gx, gy] = gradient_at(gu, R * ct, R * st);
    const double gn2 = gx * gx + gy * gy;
    const double gt = gx * ct + gy * st;
    return alpha * alpha * us * us / (R * R) + gn2 - gt * gt;
  };
  out.rhs = std::pow(R, 2.0) / (2.0 + 2.0 * (alpha - 1.0)) * sphere_integral(f, R, K);
  out.gap = std::abs(out.lhs - out.rhs);
  return out;
}

MonotoneProfile profile(const ScalarField& u, double alpha, const std::vector<double>& radii,
                        int thread_count) {
  const GridSpec& g = u.grid;
  if (radii.empty()) fail(status::config_error, "profile radii list is empty");
  for (size_t k = 0; k < radii.size(); ++k) {
    if (k > 0 && !(radii[k] > radii[k - 1]))
      fail(status::config_error, "profile radii must be strictly increasing");
    if (!(radii[k] >= 2.0 * g.h * (1.0 - 1e-12)) ||
        !(radii[k] <= g.L - 2.0 * g.h + 1e-12 * g.L))
      fail(status::bad_radius, "profile radii must lie within [2h, L - 2h]");
  }

  const NodeGradient grad = node_gradient(u);
  ScalarField g2 = u;
  for (size_t k = 0; k < g2.values.size(); ++k)
    g2.values[k] =
        grad.gx.values[k] * grad.gx.values[k] + grad.gy.values[k] * grad.gy.values[k];

  MonotoneProfile out;
  out.alpha = alpha;
  out.rows.resize(radii.size());

  auto compute_row = [&](size_t k) {
    ProfileRow row;
    row.R = radii[k];
    row.energy_term = energy_term_cached(g2, row.R, alpha);
    row.boundary_term = boundary_term_impl(u, row.R, alpha);
    row.A = row.energy_term - row.boundary_term;
    row.drift = drift_cached(u, grad, row.R, alpha);
    out.rows[k] = row;
  };

  const int workers =
      std::max(1, std::min(thread_count, static_cast<int>(radii.size())));
  if (workers <= 1) {
    for (size_t k = 0; k < radii.size(); ++k) compute_row(k);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        for (size_t k = next.fetch_add(1); k < radii.size(); k = next.fetch_add(1))
          compute_row(k);
      });
    for (auto& th : pool) th.join();
  }

  const size_t n = out.rows.size();
  out.min_pairwise_dA = n > 1 ? std::numeric_limits<double>::infinity() : 0.0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      out.min_pairwise_dA = std::min(out.min_pairwise_dA, out.rows[j].A - out.rows[i].A);
  out.monotonicity_violation = std::max(0.0, -out.min_pairwise_dA);

  std::vector<double> prefix(n, 0.0);
  for (size_t k = 1; k < n; ++k)
    prefix[k] = prefix[k - 1] + 0.5 * (out.rows[k].drift + out.rows[k - 1].drift) *
                                    (out.rows[k].R - out.rows[k - 1].R);
  out.worst_drift_gap = n > 1 ? -std::numeric_limits<double>::infinity() : 0.0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      const double gap = (prefix[j] - prefix[i]) - (out.rows[j].A - out.rows[i].A);
      out.worst_drift_gap = std::max(out.worst_drift_gap, gap);
    }
  return out;
}

double integrate_drift(const MonotoneProfile& p, size_t i, size_t j) {
  if (i > j || j >= p.rows.size())
    fail(status::config_error, "integrate_drift indices out of range");
  double acc = 0.0;
  for (size_t k = i + 1; k <= j; ++k)
    acc += 0.5 * (p.rows[k].drift + p.rows[k - 1].drift) * (p.rows[k].R - p.rows[k - 1].R);
  return acc;
}

}  // namespace oblab
