#include <cmath>

#include "doctest.h"
#include "oblab/weiss.hpp"

using namespace oblab;

namespace {

constexpr double kPi = 3.14159265358979323846;

ScalarField homogeneous_field(int m, double L, double alpha,
                              const std::function<double(double)>& profile) {
  return make_field(make_grid(m, L), [&](double x, double y) {
    const double r = std::hypot(x, y);
    return r == 0.0 ? 0.0 : std::pow(r, alpha) * profile(std::atan2(y, x));
  });
}

}  // namespace

TEST_CASE("energy_term closed forms") {
  const GridSpec g = make_grid(129, 1.0);
  const ScalarField lin = make_field(g, [](double x, double) { return x; });
  // integral of 1 over B_R scaled by R^-3
  CHECK(std::abs(energy_term(lin, 0.5, 1.5) - kPi / 0.5) <= 1e-3 / 0.125);

  const ScalarField c = make_field(g, [](double, double) { return 0.7; });
  CHECK(energy_term(c, 0.5, 1.5) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("boundary_term closed forms") {
  const GridSpec g = make_grid(129, 1.2);
  const ScalarField one = make_field(g, [](double, double) { return 1.0; });
  CHECK(boundary_term(one, 1.0, 1.5) ==
        doctest::Approx(2.0 * kPi * 1.5).epsilon(1e-13));

  const ScalarField lin = make_field(g, [](double x, double) { return x; });
  CHECK(boundary_term(lin, 0.25, 1.5) ==
        doctest::Approx(6.0 * kPi).epsilon(1e-11));

  CHECK_THROWS_AS(boundary_term(one, 1.25, 1.5), error);
  CHECK_THROWS_AS(boundary_term(one, 0.0, 1.5), error);
}

TEST_CASE("A is constant in R on the homogeneous cone") {
  const ScalarField u = homogeneous_field(257, 1.0, 1.5, [](double) { return 1.0; });
  for (double R : {0.3, 0.4, 0.5})
    CHECK(std::abs(A_value(u, R, 1.5) + kPi * 1.5) <= 5e-3);
}

TEST_CASE("A of a constant matches its closed form") {
  const GridSpec g = make_grid(65, 1.0);
  const double c = 0.7;
  const ScalarField u = make_field(g, [&](double, double) { return c; });
  for (double R : {0.4, 0.6}) {
    const double expected = -2.0 * kPi * 1.5 * c * c * std::pow(R, -3.0);
    CHECK(A_value(u, R, 1.5) == doctest::Approx(expected).epsilon(1e-12));
  }
  const ScalarField z = make_field(g);
  CHECK(A_value(z, 0.5, 1.5) == 0.0);
}

TEST_CASE("drift closed forms and positivity") {
  const GridSpec g = make_grid(129, 1.2);
  const double c = 0.7;
  const ScalarField cf = make_field(g, [&](double, double) { return c; });
  CHECK(drift(cf, 1.0, 1.5) == doctest::Approx(4.5 * kPi * c * c).epsilon(1e-13));

  const ScalarField lin = make_field(g, [](double x, double) { return x; });
  CHECK(drift(lin, 0.5, 1.5) == doctest::Approx(kPi).epsilon(1e-11));

  const ScalarField hom = homogeneous_field(257, 1.0, 1.5,
                                            [](double t) { return 1.0 + 0.3 * std::cos(t); });
  CHECK(drift(hom, 0.4, 1.5) >= 0.0);
  CHECK(drift(hom, 0.4, 1.5) <= 1e-6);

  CHECK_THROWS_AS(drift(lin, 1.19, 1.5), error);  // must stay 2h inside
  CHECK_THROWS_AS(drift(lin, 1e-4, 1.5), error);
}

TEST_CASE("cone extension interpolates the circle trace") {
  const GridSpec g = make_grid(65, 1.0);
  const ScalarField one = make_field(g, [](double, double) { return 1.0; });
  const ScalarField w = cone_extension(one, 0.5, 1.5);
  const int c = 32;
  CHECK(w.at(c, c) == 0.0);
  CHECK(w.at(c + 8, c) == doctest::Approx(std::pow(0.5, 1.5)).epsilon(1e-14));  // r = 0.25
  CHECK(w.at(c + 16, c) == doctest::Approx(1.0).epsilon(1e-14));                // r = R
  CHECK(w.at(c, 0) == 1.0);                                                     // outside copied

  const ScalarField hom = homogeneous_field(257, 1.0, 1.5,
                                            [](double t) { return 1.0 + 0.3 * std::cos(t); });
  const ScalarField wh = cone_extension(hom, 0.5, 1.5);
  double sup = 0.0;
  for (size_t k = 0; k < wh.values.size(); ++k)
    sup = std::max(sup, std::abs(wh.values[k] - hom.values[k]));
  CHECK(sup <= 1e-4);
}

TEST_CASE("cone extension energy identity") {
  const GridSpec g = make_grid(129, 1.2);
  const ScalarField lin = make_field(g, [](double x, double) { return x; });
  const IdentityCheck chk = energy_identity_check(lin, 1.0, 1.5);
  CHECK(chk.rhs == doctest::Approx(3.25 * kPi / 3.0).epsilon(1e-11));
  CHECK(chk.gap <= 10.0 * g.h);

  const ScalarField z = make_field(g);
  const IdentityCheck zero = energy_identity_check(z, 1.0, 1.5);
  CHECK(zero.lhs == 0.0);
  CHECK(zero.rhs == 0.0);
}

TEST_CASE("profile rows match the pointwise operations") {
  const ScalarField u = homogeneous_field(129, 1.0, 1.5,
                                          [](double t) { return 1.0 + 0.3 * std::cos(t); });
  const std::vector<double> radii{0.2, 0.3, 0.4};
  const MonotoneProfile p = profile(u, 1.5, radii, 1);
  REQUIRE(p.rows.size() == 3);
  for (size_t k = 0; k < radii.size(); ++k) {
    CHECK(p.rows[k].R == radii[k]);
    CHECK(p.rows[k].energy_term == doctest::Approx(energy_term(u, radii[k], 1.5)).epsilon(1e-13));
    CHECK(p.rows[k].boundary_term ==
          doctest::Approx(boundary_term(u, radii[k], 1.5)).epsilon(1e-13));
    CHECK(p.rows[k].A ==
          doctest::Approx(p.rows[k].energy_term - p.rows[k].boundary_term).epsilon(1e-13));
    CHECK(p.rows[k].drift == doctest::Approx(drift(u, radii[k], 1.5)).epsilon(1e-13));
  }
}

TEST_CASE("profile of the constant field follows the closed form") {
  const GridSpec g = make_grid(65, 1.0);
  const double c = 0.5;
  const ScalarField u = make_field(g, [&](double, double) { return c; });
  const std::vector<double> radii{0.3, 0.4, 0.5, 0.6};
  const MonotoneProfile p = profile(u, 1.5, radii, 1);
  for (const ProfileRow& row : p.rows) {
    CHECK(row.A ==
          doctest::Approx(-3.0 * kPi * c * c * std::pow(row.R, -3.0)).epsilon(1e-11));
    CHECK(row.drift ==
          doctest::Approx(4.5 * kPi * c * c * std::pow(row.R, -4.0)).epsilon(1e-11));
  }
  // A increases with R while the trapezoid drift integral undershoots the increments
  CHECK(p.min_pairwise_dA > 0.0);
  CHECK(p.monotonicity_violation == 0.0);
  CHECK(p.worst_drift_gap < 0.0);
}

TEST_CASE("profile is deterministic across thread counts") {
  const ScalarField u = homogeneous_field(129, 1.0, 1.5,
                                          [](double t) { return 1.0 + 0.3 * std::cos(t); });
  const std::vector<double> radii{0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  const MonotoneProfile a = profile(u, 1.5, radii, 1);
  const MonotoneProfile b = profile(u, 1.5, radii, 4);
  REQUIRE(a.rows.size() == b.rows.size());
  for (size_t k = 0; k < a.rows.size(); ++k) {
    CHECK(a.rows[k].A == b.rows[k].A);
    CHECK(a.rows[k].drift == b.rows[k].drift);
  }
  CHECK(a.worst_drift_gap == b.worst_drift_gap);
}

TEST_CASE("profile validates its radii") {
  const ScalarField u = make_field(make_grid(65, 1.0));
  CHECK_THROWS_AS(profile(u, 1.5, {}, 1), error);
  CHECK_THROWS_AS(profile(u, 1.5, {0.3, 0.2}, 1), error);
  CHECK_THROWS_AS(profile(u, 1.5, {0.01, 0.3}, 1), error);  // below 2h
  CHECK_THROWS_AS(profile(u, 1.5, {0.3, 0.99}, 1), error);  // above L - 2h
}

TEST_CASE("integrate_drift is the exact trapezoid on the row grid") {
  MonotoneProfile p;
  p.rows = {{1.0, 0, 0, 0, 1.0}, {2.0, 0, 0, 0, 2.0}, {3.0, 0, 0, 0, 3.0}};
  CHECK(integrate_drift(p, 0, 2) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(integrate_drift(p, 1, 2) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(integrate_drift(p, 2, 2) == 0.0);
  CHECK_THROWS_AS(integrate_drift(p, 2, 0), error);
  CHECK_THROWS_AS(integrate_drift(p, 0, 3), error);
}
