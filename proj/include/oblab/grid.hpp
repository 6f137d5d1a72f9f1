#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "oblab/errors.hpp"

namespace oblab {

// Uniform grid on [-L,L]^2. m is odd so the origin is a node.
struct GridSpec {
  double L = 1.0;
  int m = 0;
  double h = 0.0;

  bool operator==(const GridSpec& o) const { return m == o.m && L == o.L; }
};

GridSpec make_grid(int m, double L);

struct ScalarField {
  GridSpec grid;
  std::vector<double> values;  // row-major, index j*m + i for node (x_i, y_j)

  double& at(int i, int j) { return values[static_cast<size_t>(j) * grid.m + i]; }
  double at(int i, int j) const { return values[static_cast<size_t>(j) * grid.m + i]; }
  double x(int i) const { return -grid.L + i * grid.h; }
  double y(int j) const { return -grid.L + j * grid.h; }
};

ScalarField make_field(const GridSpec& g);
ScalarField make_field(const GridSpec& g, const std::function<double(double, double)>& f);
void check_finite(const ScalarField& f);

double sample(const ScalarField& f, double px, double py);

struct NodeGradient {
  ScalarField gx;
  ScalarField gy;
};

// Central differences inside, second-order one-sided on the frame.
NodeGradient node_gradient(const ScalarField& f);

std::pair<double, double> gradient_at(const ScalarField& f, double px, double py);
std::pair<double, double> gradient_at(const NodeGradient& g, double px, double py);

// Integral of a node-sampled integrand over the disc B_R. Cells fully inside
// contribute cell-average times h^2; straddling cells are split 4x4 and each
// subcell contributes a straight-cut overlap fraction.
double ball_integral(const ScalarField& integrand, double R);

// (2*pi/K) * sum f(theta_k), the periodic trapezoid rule on the unit circle.
double sphere_integral(const std::function<double(double)>& f, double R, int K);

int default_sphere_nodes(double R, double h);

double dirichlet_energy(const ScalarField& u, double R);

}  // namespace oblab
