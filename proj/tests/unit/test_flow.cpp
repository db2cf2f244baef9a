#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "slope_study.hpp"
#include "vortexloop/errors.hpp"
#include "vortexloop/flow.hpp"
#include "vortexloop/random.hpp"
#include "vortexloop/symplectic.hpp"

using namespace vortexloop;
using std::numbers::pi;

namespace {

CircleForm sin2t() { return CircleForm::trig(0.0, {}, {0.0, 1.0}); }

DecoratedLoop unit_circle(int n = 128, double r = 1.0) {
  return DecoratedLoop(LoopEmbedding::from_function(
                           [r](double s) { return Point{r * std::cos(s), r * std::sin(s)}; }, n),
                       sin2t());
}

double max_point_distance(const std::vector<Point>& a, const std::vector<Point>& b) {
  double d = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) d = std::max(d, norm(a[j] - b[j]));
  return d;
}

}  // namespace

TEST_CASE("scheme names") {
  CHECK(parse_scheme("rk4") == Scheme::RK4);
  CHECK(parse_scheme("implicit-midpoint") == Scheme::ImplicitMidpoint);
  CHECK(parse_scheme("midpoint") == Scheme::ImplicitMidpoint);
  CHECK(std::string(to_string(Scheme::ImplicitMidpoint)) == "implicit-midpoint");
  CHECK_THROWS_AS(parse_scheme("euler"), std::invalid_argument);
}

TEST_CASE("zero Hamiltonian is the identity") {
  const auto L = slope_study::fixed_loop(128);
  AdvectOptions o;
  o.T = 1.0;
  o.dt = 0.1;
  o.record_series = true;
  const auto rep = advect(L, PlanarHamiltonian{}, o);
  CHECK(rep.loop.embedding().samples() == L.embedding().samples());
  CHECK(rep.area_drift == 0.0);
  CHECK(rep.profile_drift == 0.0);
  CHECK(rep.hamiltonian_drift == 0.0);
  CHECK(rep.equivariance_residual == 0.0);
  CHECK(rep.steps == 10);
  CHECK(rep.series.size() == 11);
  CHECK(rep.series.back().t == 1.0);
}

TEST_CASE("radial bump on a centered circle keeps the area") {
  const PlanarHamiltonian h({Bump{{0, 0}, 0.8, 1.0}});
  for (auto scheme : {Scheme::RK4, Scheme::ImplicitMidpoint}) {
    AdvectOptions o;
    o.T = 1.0;
    o.dt = 1e-2;
    o.scheme = scheme;
    const auto rep = advect(unit_circle(), h, o);
    CHECK(rep.area_drift < 1e-12);
    CHECK(rep.profile_drift == 0.0);
    // the circle rotates rigidly
    const auto& p = rep.loop.embedding().samples();
    for (const auto& q : p) CHECK(std::abs(norm(q) - 1.0) < 1e-10);
    CHECK(norm(p[0] - Point{1, 0}) > 0.1);
  }
}

TEST_CASE("random two-bump flows conserve the invariants") {
  Rng rng(5);
  for (int trial = 0; trial < 3; ++trial) {
    const auto f = random_star_loop(rng, 256);
    const DecoratedLoop L(f, random_morse_form(rng, 2));
    const auto h = random_two_bump(rng, f(rng.uniform(0, 2 * pi)), 0.5);
    AdvectOptions o;
    o.T = 1.0;
    o.dt = 1e-3;
    const auto rep = advect(L, h, o);
    CHECK(rep.area_drift < 1e-8);
    CHECK(rep.hamiltonian_drift < 1e-8);
    CHECK(rep.equivariance_residual < 1e-8);
    CHECK(rep.profile_drift == 0.0);
    CHECK(rep.steps == 1000);
  }
}

TEST_CASE("points outside the support do not move") {
  const PlanarHamiltonian h({Bump{{0, 0}, 0.1, 1.0}});
  const std::vector<Point> far{{1.0, 0.0}, {0.0, -0.7}, {3.0, 3.0}};
  AdvectOptions o;
  o.T = 0.5;
  o.dt = 0.01;
  CHECK(flow_points(h, far, o) == far);
  double err = -1.0;
  flow_points(h, far, o, &err);
  CHECK(err == 0.0);
}

TEST_CASE("last step is shortened to land on T") {
  const PlanarHamiltonian h({Bump{{0, 0}, 0.8, 1.0}});
  AdvectOptions o;
  o.T = 1.0;
  o.dt = 0.3;
  o.record_series = true;
  const auto rep = advect(unit_circle(64), h, o);
  CHECK(rep.steps == 4);
  CHECK(rep.series.back().t == 1.0);
  // counterclockwise rotation with angular speed -dh/dr on the unit circle
  const double speed = std::exp(-1.0 / (2 * 0.8 * 0.8)) / (0.8 * 0.8);
  const Point expect{std::cos(speed), std::sin(speed)};
  // RK4 error at dt 0.3 is about 4e-5; stopping at 0.9 or 1.2 would miss by 0.07
  CHECK(norm(rep.loop.embedding().samples()[0] - expect) < 1e-4);
}

TEST_CASE("RK4 convergence order on generic flows") {
  const auto L = slope_study::fixed_loop();
  for (const auto& h : slope_study::configs()) {
    const auto s = slope_study::measure(L, h);
    CHECK(std::abs(s.area - 4.0) <= 0.3);
    CHECK(std::abs(s.equivariance - 4.0) <= 0.3);
  }
}

TEST_CASE("implicit midpoint preserves area and converges at order two") {
  const auto L = slope_study::fixed_loop();
  const auto h = slope_study::configs()[0];
  AdvectOptions ref;
  ref.T = 1.0;
  ref.dt = 1e-3;
  const auto exact = flow_points(h, L.embedding().samples(), ref);
  std::vector<double> dts, errs;
  for (double dt : slope_study::kSteps) {
    AdvectOptions o;
    o.T = 1.0;
    o.dt = dt;
    o.scheme = Scheme::ImplicitMidpoint;
    const auto rep = advect(L, h, o);
    CHECK(rep.area_drift < 1e-12);
    dts.push_back(dt);
    errs.push_back(max_point_distance(rep.loop.embedding().samples(), exact));
  }
  CHECK(std::abs(slope_study::loglog_slope(dts, errs) - 2.0) < 0.2);
}

TEST_CASE("flow failures") {
  const auto L = unit_circle(128);
  const PlanarHamiltonian strong({Bump{{0.6, 0.3}, 0.3, 40.0}});
  AdvectOptions o;
  o.T = 1.0;
  o.dt = 0.05;
  CHECK_THROWS_AS(advect(L, strong, o), StepRejected);

  const PlanarHamiltonian fold({Bump{{1.0, 0.0}, 0.3, 2.0}});
  AdvectOptions g;
  g.T = 2.0;
  g.dt = 0.01;
  CHECK_THROWS_AS(advect(L, fold, g), ValidationFailed);

  const PlanarHamiltonian h({Bump{{0, 0}, 0.8, 1.0}});
  AdvectOptions bad;
  bad.dt = 0.0;
  CHECK_THROWS_AS(advect(L, h, bad), std::invalid_argument);
  bad.dt = 2.0;
  bad.T = 1.0;
  CHECK_THROWS_AS(advect(L, h, bad), std::invalid_argument);
  bad.dt = 0.1;
  bad.T = -1.0;
  CHECK_THROWS_AS(advect(L, h, bad), std::invalid_argument);
  bad.T = NAN;
  CHECK_THROWS_AS(flow_points(h, {}, bad), std::invalid_argument);
}

TEST_CASE("equivariance residual") {
  const auto L = slope_study::fixed_loop(128);
  const auto h = slope_study::configs()[1];
  AdvectOptions o;
  o.T = 1.0;
  o.dt = 1e-3;
  CHECK(equivariance_residual(L, PlanarHamiltonian{}, h, o) == 0.0);
  CHECK(equivariance_residual(L, h, h, o) < 1e-8);
  Rng rng(3);
  const auto test_h = random_two_bump(rng, {0, 0}, 0.5);
  CHECK(equivariance_residual(L, h, test_h, o) < 1e-8);
  o.test_hamiltonian = test_h;
  CHECK(advect(L, h, o).equivariance_residual == equivariance_residual(L, h, test_h, o));
  // the flow pushes momentum values forward: J(phi o f)(h) = J(f)(h o phi)
  AdvectOptions ref = o;
  ref.dt = o.dt / 4;
  const auto moved = advect(L, h, o).loop;
  const double lhs = momentum_map_eval(moved.embedding(), test_h, L.decoration());
  const auto carried = flow_points(h, L.embedding().samples(), ref);
  double rhs = 0.0;
  const auto w = L.decoration().series().evaluate(uniform_grid(128));
  for (int j = 0; j < 128; ++j) rhs += test_h.value(carried[j]) * w[j] * 2 * pi / 128;
  CHECK(std::abs(lhs - rhs) < 1e-8);
}

TEST_CASE("series records every step") {
  const auto L = slope_study::fixed_loop(128);
  const auto h = slope_study::configs()[2];
  AdvectOptions o;
  o.T = 0.5;
  o.dt = 0.05;
  o.record_series = true;
  const auto rep = advect(L, h, o);
  REQUIRE(rep.series.size() == 11);
  const double a0 = rep.series.front().area;
  for (std::size_t i = 0; i < rep.series.size(); ++i) {
    CHECK(rep.series[i].step == static_cast<int>(i));
    CHECK(std::abs(rep.series[i].area - a0) < 1e-5);
    CHECK(rep.series[i].max_local_error <= rep.max_local_error);
  }
  CHECK(std::abs(rep.series.back().t - 0.5) < 1e-15);
}
