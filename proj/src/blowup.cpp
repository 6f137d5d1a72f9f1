#include "oblab/blowup.hpp"

#include <algorithm>
#include <cmath>

#include "oblab/errors.hpp"
#include "oblab/weiss.hpp"

namespace oblab {

namespace {

void check_annulus(const GridSpec& g, const Annulus& ann) {
  const double slack = 1e-12 * g.L;
  if (!(ann.r_in >= 2.0 * g.h - slack) || !(ann.r_in < ann.r_out) ||
      !(ann.r_out <= g.L - 2.0 * g.h + slack))
    fail(status::bad_radius, "annulus must satisfy 2h <= r_in < r_out <= L - 2h");
}

template <typename F>
void for_annulus_nodes(const GridSpec& g, const Annulus& ann, F&& fn) {
  const double slack = 1e-12 * g.L;
  for (int j = 0; j < g.m; ++j) {
    const double y = -g.L + g.h * j;
    for (int i = 0; i < g.m; ++i) {
      const double x = -g.L + g.h * i;
      const double r = std::hypot(x, y);
      if (r >= ann.r_in - slack && r <= ann.r_out + slack) fn(i, j);
    }
  }
}

}  // namespace

const char* to_string(blowup_class c) {
  switch (c) {
    case blowup_class::zero: return "Zero";
    case blowup_class::homogeneous: return "Homogeneous";
    default: return "Undetermined";
  }
}

ScalarField rescale(const ScalarField& u, double R, double alpha, const GridSpec& target) {
  const GridSpec& src = u.grid;
  if (!(R > 0.0)) fail(status::bad_radius, "rescale radius must be positive");
  if (!(R * target.L <= src.L - src.h + 1e-12 * src.L))
    fail(status::bad_radius, "rescale requires R * L_target <= L_source - h_source");
  const double scale = std::pow(R, alpha);
  ScalarField v = make_field(make_grid(target.m, target.L));
  for (int j = 0; j < target.m; ++j) {
    const double y = v.y(j);
    for (int i = 0; i < target.m; ++i)
      v.at(i, j) = sample(u, R * v.x(i), R * y) / scale;
  }
  return v;
}

double homogeneity_deviation(const ScalarField& v, double alpha, const Annulus& ann) {
  check_annulus(v.grid, ann);
  const NodeGradient grad = node_gradient(v);
  ScalarField num = v;
  ScalarField den = v;
  for (int j = 0; j < v.grid.m; ++j) {
    const double y = v.y(j);
    for (int i = 0; i < v.grid.m; ++i) {
      const double x = v.x(i);
      const double q = x * grad.gx.at(i, j) + y * grad.gy.at(i, j) - alpha * v.at(i, j);
      num.at(i, j) = q * q;
      den.at(i, j) = v.at(i, j) * v.at(i, j);
    }
  }
  const double top = ball_integral(num, ann.r_out) - ball_integral(num, ann.r_in);
  const double bottom = ball_integral(den, ann.r_out) - ball_integral(den, ann.r_in);
  return top / std::max(bottom, 1e-14);
}

double verify_scaling_identity(const ScalarField& u, double R,
                               const std::vector<double>& s_values, double alpha,
                               const GridSpec& target) {
  if (s_values.empty()) fail(status::config_error, "scaling identity needs at least one s");
  const ScalarField v = rescale(u, R, alpha, target);
  double worst = 0.0;
  for (double s : s_values) {
    const double lhs = A_value(u, s * R, alpha);
    const double rhs = A_value(v, s, alpha);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

BlowupReport classify(const ScalarField& u, double alpha, const std::vector<double>& radii,
                      const BlowupThresholds& thr, const Annulus& ann, const GridSpec& target) {
  if (radii.size() < 4) fail(status::config_error, "classification needs at least 4 radii");
  for (size_t k = 1; k < radii.size(); ++k)
    if (!(radii[k] < radii[k - 1]))
      fail(status::config_error, "classification radii must be strictly decreasing");
  if (!(thr.eps_zero > 0.0) || !(thr.eps_homog > 0.0))
    fail(status::config_error, "classification thresholds must be positive");
  check_annulus(target, ann);

  BlowupReport rep;
  std::vector<ScalarField> scaled;
  scaled.reserve(radii.size());
  for (double R : radii) {
    scaled.push_back(rescale(u, R, alpha, target));
    const ScalarField& v = scaled.back();
    BlowupStep step;
    step.R = R;
    step.deviation = homogeneity_deviation(v, alpha, ann);
    double sup = 0.0;
    for_annulus_nodes(target, ann,
                      [&](int i, int j) { sup = std::max(sup, std::abs(v.at(i, j))); });
    step.sup_norm = sup;
    rep.steps.push_back(step);
  }
  for (size_t k = 0; k + 1 < scaled.size(); ++k) {
    double d = 0.0;
    for_annulus_nodes(target, ann, [&](int i, int j) {
      d = std::max(d, std::abs(scaled[k + 1].at(i, j) - scaled[k].at(i, j)));
    });
    rep.distances.push_back(d);
  }

  rep.final_deviation = rep.steps.back().deviation;
  rep.final_sup_norm = rep.steps.back().sup_norm;

  const double zero_gate = thr.eps_zero * std::max(rep.steps.front().sup_norm, 1e-12);
  if (rep.final_sup_norm < zero_gate) {
    rep.classification = blowup_class::zero;
    return rep;
  }

  const size_t nd = rep.distances.size();
  const double d0 = rep.distances[nd - 3];
  const double d1 = rep.distances[nd - 2];
  const double d2 = rep.distances[nd - 1];
  const bool settling = (d0 >= d1 && d1 >= d2);
  const double noise_gate = thr.eps_homog * std::max(rep.final_sup_norm, 1e-12);
  const bool at_noise = (d0 <= noise_gate && d1 <= noise_gate && d2 <= noise_gate);
  if (rep.final_deviation < thr.eps_homog && (settling || at_noise)) {
    rep.classification = blowup_class::homogeneous;
    const double r0 = 0.5 * (ann.r_in + ann.r_out);
    const double scale = std::pow(r0, alpha);
    const int K = 128;
    const ScalarField& v = scaled.back();
    for (int k = 0; k < K; ++k) {
      const double theta = 2.0 * 3.14159265358979323846 * k / K;
      rep.profile_theta.push_back(theta);
      rep.profile_value.push_back(sample(v, r0 * std::cos(theta), r0 * std::sin(theta)) / scale);
    }
    return rep;
  }

  rep.classification = blowup_class::undetermined;
  return rep;
}

double holder_quotient(const ScalarField& u, const std::vector<double>& radii, double alpha) {
  if (radii.empty()) fail(status::config_error, "holder quotient needs at least one radius");
  const GridSpec& g = u.grid;
  const NodeGradient grad = node_gradient(u);
  double worst = 0.0;
  for (double r : radii) {
    if (!(r >= g.h * (1.0 - 1e-12)) || !(r <= g.L - 2.0 * g.h + 1e-12 * g.L))
      fail(status::bad_radius, "holder quotient radii must lie within [h, L - 2h]");
    const int K = default_sphere_nodes(r, g.h);
    const double denom = std::pow(r, alpha - 1.0);
    for (int k = 0; k < K; ++k) {
      const double theta = 2.0 * 3.14159265358979323846 * k / K;
      const auto [gx, gy] = gradient_at(grad, r * std::cos(theta), r * std::sin(theta));
      worst = std::max(worst, std::hypot(gx, gy) / denom);
    }
  }
  return worst;
}

}  // namespace oblab
