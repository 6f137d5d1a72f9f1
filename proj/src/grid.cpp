#include "oblab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace oblab {

GridSpec make_grid(int m, double L) {
  if (m < 5 || m % 2 == 0) fail(status::config_error, "grid.m must be odd and >= 5, got " + std::to_string(m));
  if (!(L > 0.0) || !std::isfinite(L)) fail(status::config_error, "grid.L must be positive");
  GridSpec g;
  g.L = L;
  g.m = m;
  g.h = 2.0 * L / (m - 1);
  return g;
}

ScalarField make_field(const GridSpec& g) {
  ScalarField f;
  f.grid = g;
  f.values.assign(static_cast<size_t>(g.m) * g.m, 0.0);
  return f;
}

ScalarField make_field(const GridSpec& g, const std::function<double(double, double)>& fn) {
  ScalarField f = make_field(g);
  for (int j = 0; j < g.m; ++j) {
    const double yj = f.y(j);
    for (int i = 0; i < g.m; ++i) f.at(i, j) = fn(f.x(i), yj);
  }
  return f;
}

void check_finite(const ScalarField& f) {
  for (double v : f.values)
    if (!std::isfinite(v)) fail(status::internal_error, "field contains a non-finite value");
}

namespace {

// Domain membership with a little slack against rounding of circle points.
inline bool in_domain(double c, double L) { return std::abs(c) <= L * (1.0 + 1e-12) + 1e-300; }

}  // namespace

double sample(const ScalarField& f, double px, double py) {
  const GridSpec& g = f.grid;
  if (!in_domain(px, g.L) || !in_domain(py, g.L))
    fail(status::out_of_domain, "sample point outside the domain");
  const int i = std::clamp(static_cast<int>(std::floor((px + g.L) / g.h)), 0, g.m - 2);
  const int j = std::clamp(static_cast<int>(std::floor((py + g.L) / g.h)), 0, g.m - 2);
  const double tx = (px - f.x(i)) / g.h;
  const double ty = (py - f.y(j)) / g.h;
  return f.at(i, j) * (1 - tx) * (1 - ty) + f.at(i + 1, j) * tx * (1 - ty) +
         f.at(i, j + 1) * (1 - tx) * ty + f.at(i + 1, j + 1) * tx * ty;
}

NodeGradient node_gradient(const ScalarField& f) {
  const GridSpec& g = f.grid;
  const int m = g.m;
  const double inv2h = 1.0 / (2.0 * g.h);
  NodeGradient out{make_field(g), make_field(g)};
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      double vx, vy;
      if (i == 0)
        vx = (-3 * f.at(0, j) + 4 * f.at(1, j) - f.at(2, j)) * inv2h;
      else if (i == m - 1)
        vx = (3 * f.at(m - 1, j) - 4 * f.at(m - 2, j) + f.at(m - 3, j)) * inv2h;
      else
        vx = (f.at(i + 1, j) - f.at(i - 1, j)) * inv2h;
      if (j == 0)
        vy = (-3 * f.at(i, 0) + 4 * f.at(i, 1) - f.at(i, 2)) * inv2h;
      else if (j == m - 1)
        vy = (3 * f.at(i, m - 1) - 4 * f.at(i, m - 2) + f.at(i, m - 3)) * inv2h;
      else
        vy = (f.at(i, j + 1) - f.at(i, j - 1)) * inv2h;
      out.gx.at(i, j) = vx;
      out.gy.at(i, j) = vy;
    }
  }
  return out;
}

std::pair<double, double> gradient_at(const NodeGradient& g, double px, double py) {
  const double L = g.gx.grid.L, h = g.gx.grid.h;
  if (std::abs(px) > L - h + 1e-12 * L || std::abs(py) > L - h + 1e-12 * L)
    fail(status::out_of_domain, "gradient point closer than h to the domain boundary");
  return {sample(g.gx, px, py), sample(g.gy, px, py)};
}

std::pair<double, double> gradient_at(const ScalarField& f, double px, double py) {
  return gradient_at(node_gradient(f), px, py);
}

namespace {

// Area fraction of a square subcell (side s) on the inner side of the circle,
// approximated by the straight cut through the circle point on the ray of the
// subcell center. d = R - |center|, (nx,ny) the unit normal at that point.
double cut_fraction(double d, double nx, double ny, double s) {
  double p = std::abs(nx) * s, q = std::abs(ny) * s;
  if (p < q) std::swap(p, q);
  const double a = 0.5 * (p + q);
  if (d >= a) return 1.0;
  if (d <= -a) return 0.0;
  const double t = d + a;
  if (q <= 1e-300) return std::clamp(t / p, 0.0, 1.0);
  if (t <= q) return t * t / (2 * p * q);
  if (t <= p) return (t - 0.5 * q) / p;
  const double r = p + q - t;
  return 1.0 - r * r / (2 * p * q);
}

}  // namespace

double ball_integral(const ScalarField& f, double R) {
  const GridSpec& g = f.grid;
  if (!(R > 0.0) || R > g.L - g.h + 1e-12 * g.L)
    fail(status::bad_radius, "ball radius must satisfy 0 < R <= L - h");
  const int m = g.m;
  const double h = g.h, L = g.L;
  const double s = h / 4.0;
  double sum = 0.0;
  for (int j = 0; j + 1 < m; ++j) {
    const double ylo = -L + j * h, yhi = ylo + h;
    const double cy0 = std::clamp(0.0, ylo, yhi);
    const double fy = std::max(std::abs(ylo), std::abs(yhi));
    for (int i = 0; i + 1 < m; ++i) {
      const double xlo = -L + i * h, xhi = xlo + h;
      const double cx0 = std::clamp(0.0, xlo, xhi);
      const double dmin = std::sqrt(cx0 * cx0 + cy0 * cy0);
      if (dmin >= R) continue;
      const double fx = std::max(std::abs(xlo), std::abs(xhi));
      const double dmax = std::sqrt(fx * fx + fy * fy);
      double area;
      if (dmax <= R) {
        area = h * h;
      } else {
        area = 0.0;
        for (int b = 0; b < 4; ++b) {
          const double cy = ylo + (b + 0.5) * s;
          for (int a = 0; a < 4; ++a) {
            const double cx = xlo + (a + 0.5) * s;
            const double rc = std::max(std::sqrt(cx * cx + cy * cy), 1e-300);
            area += cut_fraction(R - rc, cx / rc, cy / rc, s);
          }
        }
        area *= s * s;
      }
      const double cavg = 0.25 * (f.at(i, j) + f.at(i + 1, j) + f.at(i, j + 1) + f.at(i + 1, j + 1));
      sum += cavg * area;
    }
  }
  return sum;
}

double sphere_integral(const std::function<double(double)>& f, double R, int K) {
  if (K < 16) fail(status::config_error, "sphere quadrature needs K >= 16");
  if (!(R > 0.0)) fail(status::bad_radius, "sphere radius must be positive");
  double sum = 0.0;
  const double step = 2.0 * M_PI / K;
  for (int k = 0; k < K; ++k) sum += f(k * step);
  return sum * step;
}

int default_sphere_nodes(double R, double h) {
  return std::max(64, static_cast<int>(std::ceil(2.0 * M_PI * R / h)));
}

double dirichlet_energy(const ScalarField& u, double R) {
  NodeGradient g = node_gradient(u);
  ScalarField g2 = make_field(u.grid);
  for (size_t k = 0; k < g2.values.size(); ++k)
    g2.values[k] = g.gx.values[k] * g.gx.values[k] + g.gy.values[k] * g.gy.values[k];
  return ball_integral(g2, R);
}

}  // namespace oblab
