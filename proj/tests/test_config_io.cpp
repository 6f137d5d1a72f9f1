#include <cmath>
#include <random>
#include <string>

#include "doctest.h"
#include "oblab/config.hpp"
#include "oblab/errors.hpp"
#include "oblab/io.hpp"
#include "oblab/radial.hpp"

using namespace oblab;

namespace {

std::string scratch_path(const std::string& name) {
  ensure_directory("oblab_test_tmp");
  return "oblab_test_tmp/" + name;
}

std::string error_message(const std::string& json_text) {
  try {
    parse_config(json_text);
  } catch (const error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("a minimal config gets the documented defaults") {
  const ExperimentConfig cfg = parse_config(R"({"grid": {"L": 1.0, "m": 65}})");
  CHECK(cfg.grid.m == 65);
  CHECK(cfg.grid.L == 1.0);
  CHECK(cfg.grid.h == doctest::Approx(2.0 / 64).epsilon(1e-15));
  CHECK(!cfg.obstacle);
  CHECK(!cfg.boundary);
  CHECK(cfg.solver.omega == 1.9);
  CHECK(cfg.solver.tol == 0.0);
  CHECK(cfg.solver.max_iter == 500000);
  CHECK(cfg.mode == solver_mode::square);
  CHECK(cfg.analysis.alpha == 1.5);
  CHECK(!cfg.analysis.alpha_overridden);
  CHECK(!cfg.analysis.radii);
  CHECK(!cfg.analysis.blowup);
  CHECK(cfg.analysis.thresholds.eps_zero == 1e-4);
  CHECK(cfg.analysis.thresholds.eps_homog == 1e-2);
  CHECK(cfg.analysis.annulus.r_in == 0.25);
  CHECK(cfg.analysis.annulus.r_out == 0.75);
  CHECK(cfg.analysis.target.m == 65);
  CHECK(cfg.analysis.target.L == 1.0);
  CHECK(cfg.output_dir == "out");
  CHECK(cfg.config_hash.size() == 16);
  CHECK(cfg.config_hash.find_first_not_of("0123456789abcdef") == std::string::npos);
}

TEST_CASE("a full config lands in every field") {
  const ExperimentConfig cfg = parse_config(R"({
    "grid": {"L": 0.6, "m": 129},
    "obstacle": {"kind": "power_profile", "alpha": 1.3,
                 "cos_coeffs": [-1.0, 1.0], "modulation": {"c": -0.5, "p": 1.0}},
    "boundary": {"kind": "angular", "cos_coeffs": [-0.3, 0.3]},
    "solver": {"omega": 1.7, "tol": 1e-9, "max_iter": 1234},
    "analysis": {
      "radii": {"r_min": 0.05, "r_max": 0.5, "ratio": 1.5},
      "blowup": {"r_max": 0.25, "count": 5},
      "thresholds": {"eps_zero": 1e-5, "eps_homog": 5e-3},
      "annulus": {"r_in": 0.3, "r_out": 0.7},
      "target_grid": {"L": 1.0, "m": 65}
    },
    "output_dir": "scratch/full"
  })");
  REQUIRE(cfg.obstacle);
  CHECK(cfg.obstacle->kind == obstacle_kind::power_profile);
  CHECK(cfg.obstacle->spec.alpha == 1.3);
  CHECK(cfg.obstacle->spec.cos_coeffs == std::vector<double>{-1.0, 1.0});
  CHECK(cfg.obstacle->spec.has_modulation);
  CHECK(cfg.obstacle->spec.mod_c == -0.5);
  REQUIRE(cfg.boundary);
  CHECK(cfg.boundary->k == BoundaryData::kind::angular);
  CHECK(cfg.solver.omega == 1.7);
  CHECK(cfg.solver.max_iter == 1234);
  // analysis.alpha follows the obstacle exponent when not written out
  CHECK(cfg.analysis.alpha == 1.3);
  CHECK(!cfg.analysis.alpha_overridden);
  REQUIRE(cfg.analysis.radii);
  CHECK(cfg.analysis.radii->ratio == 1.5);
  REQUIRE(cfg.analysis.blowup);
  CHECK(cfg.analysis.blowup->count == 5);
  CHECK(cfg.analysis.blowup->ratio == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-15));
  CHECK(cfg.analysis.annulus.r_in == 0.3);
  CHECK(cfg.analysis.target.m == 65);
  CHECK(cfg.output_dir == "scratch/full");
}

TEST_CASE("an explicit analysis alpha overrides the obstacle exponent") {
  const ExperimentConfig cfg = parse_config(R"({
    "grid": {"L": 1.0, "m": 65},
    "obstacle": {"kind": "power_profile", "alpha": 1.3, "cos_coeffs": [1.0]},
    "analysis": {"alpha": 1.5}
  })");
  CHECK(cfg.analysis.alpha == 1.5);
  CHECK(cfg.analysis.alpha_overridden);
}

TEST_CASE("a radial polynomial obstacle requires an explicit exponent") {
  CHECK(error_message(R"({"grid": {"L": 1.0, "m": 65},
    "obstacle": {"kind": "radial_polynomial", "coeffs": [0.5, 0.0, -1.0]}})")
            .find("analysis.alpha") != std::string::npos);
  const ExperimentConfig cfg = parse_config(R"({"grid": {"L": 1.0, "m": 65},
    "obstacle": {"kind": "radial_polynomial", "coeffs": [0.5, 0.0, -1.0]},
    "analysis": {"alpha": 1.5}})");
  REQUIRE(cfg.obstacle);
  CHECK(cfg.obstacle->poly_coeffs.size() == 3);
  CHECK(eval_obstacle_config(*cfg.obstacle, 0.3, 0.4) ==
        doctest::Approx(eval_radial_poly({0.5, 0.0, -1.0}, 0.5)).epsilon(1e-15));
}

TEST_CASE("power profile obstacle evaluation goes through the angular form") {
  const ExperimentConfig cfg = parse_config(R"({
    "grid": {"L": 1.0, "m": 65},
    "obstacle": {"kind": "power_profile", "alpha": 1.5, "cos_coeffs": [-1.0]}
  })");
  REQUIRE(cfg.obstacle);
  CHECK(eval_obstacle_config(*cfg.obstacle, 0.25, 0.0) ==
        doctest::Approx(-std::pow(0.25, 1.5)).epsilon(1e-15));
}

TEST_CASE("the radii ladder is geometric and capped") {
  const ExperimentConfig cfg = parse_config(R"({
    "grid": {"L": 1.0, "m": 257},
    "analysis": {"radii": {"r_min": 0.05, "r_max": 0.5}}
  })");
  REQUIRE(cfg.analysis.radii);
  const std::vector<double> radii = cfg.analysis.radii->build();
  REQUIRE(radii.size() == 14);
  CHECK(radii.front() == 0.05);
  CHECK(radii.back() <= 0.5);
  for (size_t k = 1; k < radii.size(); ++k) {
    CHECK(radii[k] > radii[k - 1]);
    CHECK(radii[k] / radii[k - 1] ==
          doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-12));
  }
}

TEST_CASE("blowup radii descend geometrically") {
  BlowupRadiiSpec bs;
  bs.r_max = 0.4;
  bs.count = 7;
  bs.ratio = std::pow(2.0, -0.5);
  const std::vector<double> radii = bs.build();
  REQUIRE(radii.size() == 7);
  CHECK(radii.front() == 0.4);
  for (size_t k = 1; k < radii.size(); ++k) CHECK(radii[k] < radii[k - 1]);
}

TEST_CASE("config errors name the offending key") {
  CHECK(error_message(R"({"grid": {"L": 1.0, "m": 64}})").find("grid.m") != std::string::npos);
  CHECK(error_message(R"({"output_dir": "x"})").find("missing key \"grid\"") !=
        std::string::npos);
  CHECK(error_message(R"({"grd": {}, "grid": {"L": 1.0, "m": 65}})").find("\"grd\"") !=
        std::string::npos);
  CHECK(error_message(R"({"grid": {"L": 1.0, "m": 65}, "solver": {"omga": 1.9}})")
            .find("solver.omga") != std::string::npos);
  CHECK(error_message("{\"grid\": ").find("JSON") != std::string::npos);
  CHECK(error_message(R"({"grid": {"L": 1.0, "m": 65}, "solver": {"omega": 2.0}})")
            .find("omega") != std::string::npos);
  CHECK(error_message(R"({"grid": {"L": 1.0, "m": 65}, "output_dir": ""})")
            .find("output_dir") != std::string::npos);
  CHECK(error_message(R"({"grid": {"L": 1.0, "m": 65},
                          "analysis": {"radii": {"r_min": 0.4, "r_max": 0.2}}})")
            .find("r_min exceeds r_max") != std::string::npos);
  CHECK(error_message(R"({"grid": {"L": 1.0, "m": 65},
                          "analysis": {"radii": {"r_min": 0.01, "r_max": 0.5}}})")
            .find("2h") != std::string::npos);
  CHECK(error_message(R"({"grid": {"L": 1.0, "m": 65},
                          "analysis": {"annulus": {"r_in": 0.01, "r_out": 0.5}}})")
            .find("annulus") != std::string::npos);
  CHECK(error_message(R"({"grid": {"L": 1.0, "m": 65},
                          "analysis": {"blowup": {"r_max": 1.0}}})")
            .find("blowup") != std::string::npos);
  CHECK(error_message(R"({"grid": {"L": 1.0, "m": 65},
                          "analysis": {"alpha": 2.5}})")
            .find("alpha") != std::string::npos);
}

TEST_CASE("ball mode wiring is strict") {
  CHECK(error_message(R"({"grid": {"L": 1.0, "m": 65}, "solver": {"ball_radius": 0.5}})")
            .find("ball_radius") != std::string::npos);
  CHECK(error_message(R"({"grid": {"L": 1.0, "m": 65}, "solver": {"mode": "ball"}})")
            .find("ball_radius") != std::string::npos);
  CHECK(error_message(
            R"({"grid": {"L": 1.0, "m": 65}, "solver": {"mode": "ball", "ball_radius": 1.5}})")
            .find("ball_radius") != std::string::npos);
  const ExperimentConfig cfg = parse_config(
      R"({"grid": {"L": 1.0, "m": 65}, "solver": {"mode": "ball", "ball_radius": 0.9}})");
  CHECK(cfg.mode == solver_mode::ball);
  CHECK(cfg.ball_radius == 0.9);
}

TEST_CASE("the config hash tracks content, not formatting") {
  const std::string compact = R"({"grid":{"L":1.0,"m":65},"solver":{"omega":1.8}})";
  const std::string spaced = R"({
    "solver": {  "omega": 1.8 },
    "grid":   {  "L": 1.0, "m": 65 }
  })";
  const std::string changed = R"({"grid":{"L":1.0,"m":65},"solver":{"omega":1.7}})";
  CHECK(parse_config(compact).config_hash == parse_config(spaced).config_hash);
  CHECK(parse_config(compact).config_hash != parse_config(changed).config_hash);
  CHECK(parse_config(compact).config_hash == parse_config(compact).config_hash);
}

TEST_CASE("load_config reads from disk and rejects missing files") {
  const std::string path = scratch_path("cfg_roundtrip.json");
  write_text_file(path, R"({"grid": {"L": 1.0, "m": 65}, "output_dir": "somewhere"})");
  const ExperimentConfig cfg = load_config(path);
  CHECK(cfg.output_dir == "somewhere");
  CHECK_THROWS_AS(load_config(scratch_path("does_not_exist.json")), error);
  try {
    load_config(scratch_path("does_not_exist.json"));
  } catch (const error& e) {
    CHECK(e.code() == status::io_error);
  }
}

TEST_CASE("field csv round-trips every double bit for bit") {
  std::mt19937_64 rng(987654321);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  ScalarField u = make_field(make_grid(17, 0.6));
  for (double& v : u.values) v = dist(rng);
  u.values[0] = 0.1;
  u.values[1] = 1.0 / 3.0;
  u.values[2] = 1e-17;
  u.values[3] = -12345.678901234567;

  const std::string path = scratch_path("field_roundtrip.csv");
  write_field_csv(path, u);
  const ScalarField v = read_field_csv(path);
  CHECK(v.grid.m == u.grid.m);
  CHECK(v.grid.L == u.grid.L);
  for (size_t k = 0; k < u.values.size(); ++k) REQUIRE(v.values[k] == u.values[k]);

  const std::string again = scratch_path("field_roundtrip2.csv");
  write_field_csv(again, v);
  CHECK(read_text_file(path) == read_text_file(again));
}

TEST_CASE("field csv rejects malformed input") {
  auto write_and_read = [&](const std::string& name, const std::string& body) {
    const std::string path = scratch_path(name);
    write_text_file(path, body);
    return read_field_csv(path);
  };
  CHECK_THROWS_AS(write_and_read("bad_header.csv", "5\n"), error);
  CHECK_THROWS_AS(write_and_read("bad_m.csv", "6,1.0\n"), error);
  CHECK_THROWS_AS(write_and_read("short_row.csv", "5,1.0\n0,0,0,0,0\n0,0,0\n"), error);
  CHECK_THROWS_AS(write_and_read("short_file.csv", "5,1.0\n0,0,0,0,0\n"), error);
  CHECK_THROWS_AS(
      write_and_read("garbage.csv",
                     "5,1.0\n0,0,0,0,0\n0,0,0,0,0\n0,0,1.5x,0,0\n0,0,0,0,0\n0,0,0,0,0\n"),
      error);
  CHECK_THROWS_AS(read_field_csv(scratch_path("missing.csv")), error);

  // a trailing comma at the end of a row is tolerated
  const std::string path = scratch_path("trailing_comma.csv");
  std::string body = "5,1.0\n";
  for (int j = 0; j < 5; ++j) body += "1,2,3,4,5,\n";
  write_text_file(path, body);
  const ScalarField u = read_field_csv(path);
  CHECK(u.at(4, 4) == 5.0);
}

TEST_CASE("profile and blowup csv carry one row per entry") {
  MonotoneProfile p;
  p.alpha = 1.5;
  p.rows = {{0.25, 1.0, 2.0, -2.0, 0.5}, {0.5, 1.5, 2.5, -1.75, 0.25}};
  const std::string ppath = scratch_path("profile.csv");
  write_profile_csv(ppath, p);
  const std::string ptext = read_text_file(ppath);
  CHECK(ptext.find("R,energy_term,boundary_term,A,drift\n") == 0);
  CHECK(ptext.find("\n0.25,1,2,-2,0.5\n") != std::string::npos);

  BlowupReport rep;
  rep.steps = {{0.25, 0.5, 0.75}, {0.125, 0.25, 0.375}};
  const std::string bpath = scratch_path("blowup.csv");
  write_blowup_csv(bpath, rep);
  const std::string btext = read_text_file(bpath);
  CHECK(btext.find("R,deviation,sup_norm\n") == 0);
  CHECK(btext.find("\n0.25,0.5,0.75\n") != std::string::npos);
  CHECK(btext.find("\n0.125,0.25,0.375\n") != std::string::npos);
}

TEST_CASE("the profile svg is self-contained and plots both series") {
  MonotoneProfile p;
  p.alpha = 1.5;
  p.rows = {{0.1, 0, 0, -3.0, 0.9}, {0.2, 0, 0, -2.0, 0.4}, {0.4, 0, 0, -1.0, 0.1}};
  const std::string svg = render_profile_svg(p);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  size_t polylines = 0, circles = 0, pos = 0;
  while ((pos = svg.find("<polyline", pos)) != std::string::npos) { ++polylines; ++pos; }
  pos = 0;
  while ((pos = svg.find("<circle", pos)) != std::string::npos) { ++circles; ++pos; }
  CHECK(polylines == 2);
  CHECK(circles == 6);
  CHECK(svg.find("log10 R") != std::string::npos);
  CHECK(render_profile_svg(MonotoneProfile{}).find("</svg>") != std::string::npos);
}

TEST_CASE("format_double round-trips exactly") {
  for (double x : {0.1, 1.0 / 3.0, 1e-17, -12345.678901234567, 2.0, 0.0,
                   4.71238898038469}) {
    CHECK(std::stod(format_double(x)) == x);
  }
}

TEST_CASE("text io helpers behave") {
  const std::string path = scratch_path("nested/dir/file.txt");
  ensure_directory("oblab_test_tmp/nested/dir");
  ensure_directory("oblab_test_tmp/nested/dir");
  write_text_file(path, "line1\nline2\n");
  CHECK(read_text_file(path) == "line1\nline2\n");
  CHECK_THROWS_AS(read_text_file("oblab_test_tmp/nope.txt"), error);
}
