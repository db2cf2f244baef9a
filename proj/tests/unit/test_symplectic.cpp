#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "frozen_values.hpp"
#include "oracles.hpp"
#include "vortexloop/errors.hpp"
#include "vortexloop/random.hpp"
#include "vortexloop/symplectic.hpp"

using namespace vortexloop;
using std::numbers::pi;

namespace {

CircleForm sin_k(int k) {
  std::vector<double> s(k, 0.0);
  s[k - 1] = 1.0;
  return CircleForm::trig(0.0, {}, s);
}

LoopEmbedding circle(int n = 64) {
  return LoopEmbedding::from_function([](double s) { return Point{std::cos(s), std::sin(s)}; }, n);
}

CircleForm fixed_form() { return CircleForm::trig(0.1, {0, 0, 0.3}, {0, 1, 0, 0, -0.2}); }

TangentField constant_field(std::size_t n, Point p) { return TangentField(n, p); }

double field_distance(const TangentField& a, const TangentField& b) {
  double d = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) d = std::max(d, norm(a[j] - b[j]));
  return d;
}

TangentField combine(double a, const TangentField& u, double b, const TangentField& v) {
  TangentField out(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) out[j] = a * u[j] + b * v[j];
  return out;
}

// u o gamma at the sample nodes.
TangentField precompose(const TangentField& u, const CircleDiffeo& gamma) {
  const auto moved = LoopEmbedding::unchecked(u);
  TangentField out(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) out[j] = moved(gamma(2 * pi * j / u.size()));
  return out;
}

// Integrand omega(u, v) beta summed independently of the library.
double omega_oracle(const TangentField& u, const TangentField& v, const CircleForm& beta, int q) {
  const auto ui = LoopEmbedding::unchecked(u);
  const auto vi = LoopEmbedding::unchecked(v);
  return oracle::periodic_trapezoid(
      [&](double t) { return cross(ui(t), vi(t)) * beta(t); }, q);
}

}  // namespace

TEST_CASE("tangent_decompose examples") {
  const auto f = circle();
  TangentField tangent(64);
  for (int j = 0; j < 64; ++j) {
    const double s = 2 * pi * j / 64;
    tangent[j] = {-std::sin(s), std::cos(s)};
  }
  const auto split = tangent_decompose(f, tangent);
  CHECK(split.rho.size() == 128);
  for (std::size_t j = 0; j < split.rho.size(); ++j) {
    CHECK(std::abs(split.rho[j]) < 1e-13);
    CHECK(std::abs(split.lambda[j] - 1.0) < 1e-13);
  }
  CHECK(field_distance(tangent_compose(f, split), tangent) < 1e-13);

  const auto zero = tangent_decompose(f, constant_field(64, {0, 0}));
  for (std::size_t j = 0; j < zero.rho.size(); ++j) {
    CHECK(zero.rho[j] == 0.0);
    CHECK(zero.lambda[j] == 0.0);
  }

  // outward normal field violates the constraint
  TangentField outward(64);
  for (int j = 0; j < 64; ++j) outward[j] = f.samples()[j];
  CHECK(constraint_violation(f, outward) > 0.9);
  CHECK_THROWS_AS(tangent_decompose(f, outward), ConstraintViolation);
  CHECK_THROWS_AS(omega_eval(f, outward, tangent, sin_k(2)), ConstraintViolation);
  CHECK_THROWS_AS(tangent_decompose(f, constant_field(10, {0, 0})), std::invalid_argument);
  CHECK_THROWS_AS(tangent_decompose(f, tangent, 100), std::invalid_argument);
}

TEST_CASE("tangent_decompose round trip and constraint handling") {
  Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_star_loop(rng, 128);
    const auto rho = random_series(rng, 5, true);
    const auto lambda = random_series(rng, 5, false);
    const auto u = tangent_compose(f, rho, lambda);
    CHECK(constraint_violation(f, u) < 1e-13);
    const auto split = tangent_decompose(f, u, 256);
    const auto grid = uniform_grid(256);
    double err = 0.0;
    for (int j = 0; j < 256; ++j) {
      err = std::max(err, std::abs(split.rho[j] - rho.value(grid[j])));
      err = std::max(err, std::abs(split.lambda[j] - lambda.value(grid[j])));
    }
    CHECK(err < 1e-10);
    CHECK(field_distance(tangent_compose(f, split), u) < 1e-10);

    // a small violation is projected away, only the mean of rho changes
    TangentField drift = u;
    for (std::size_t j = 0; j < drift.size(); ++j) {
      const Point d = f.derivative(2 * pi * j / drift.size());
      drift[j] += (1e-8 / dot(d, d)) * Point{d.y, -d.x};
    }
    const double viol = constraint_violation(f, drift);
    CHECK(viol > 0.0);
    CHECK(viol < 1e-6);
    const auto projected = project_to_constraint(f, drift);
    CHECK(constraint_violation(f, projected) < 1e-14);
    CHECK(field_distance(projected, u) < 1e-13);
  }
}

TEST_CASE("pairing examples") {
  const TrigSeries sin1(0.0, {0.0}, {1.0});
  const TrigSeries cos1(0.0, {1.0}, {0.0});
  CHECK(std::abs(pairing(sin1, cos1, sin_k(2)) - pi / 2) < 1e-14);
  CHECK(std::abs(pairing(sin1, TrigSeries::constant(1.0), sin_k(2))) < 1e-15);
  const auto grid = uniform_grid(64);
  CHECK(std::abs(pairing(sin1.evaluate(grid), cos1.evaluate(grid), sin_k(2)) - pi / 2) < 1e-14);
  CHECK_THROWS_AS(pairing(std::vector<double>{1.0}, std::vector<double>{}, sin_k(2)),
                  std::invalid_argument);
}

TEST_CASE("pairing against a dense trapezoid oracle") {
  const TrigSeries rho(0.0, {0.0, -0.5, 0.0}, {0.3, 0.0, 0.2});
  const TrigSeries lambda(0.7, {0.4, 0.0, 0.0, 0.0}, {0.0, 0.0, 0.0, -0.1});
  const auto beta = fixed_form();
  CHECK(std::abs(pairing(rho, lambda, beta) - frozen::kFixedPairing) < 1e-10);
  Rng rng(8);
  for (int trial = 0; trial < 3; ++trial) {
    const auto r = random_series(rng, 6, true);
    const auto l = random_series(rng, 6, false);
    const auto b = random_morse_form(rng, 2);
    const double ref = oracle::periodic_trapezoid(
        [&](double t) { return r.value(t) * l.value(t) * b(t); }, 1'000'000);
    CHECK(std::abs(pairing(r, l, b) - ref) < 1e-10);
  }
}

TEST_CASE("pairing_matrix contrast between sin 2t and the volume form") {
  const auto rep = pairing_matrix(sin_k(2), 16);
  CHECK(rep.lambda_side.rows() == 2 * 18);
  CHECK(rep.lambda_side.cols() == 2 * 16 + 1);
  CHECK(rep.rho_side.rows() == 2 * 16);
  CHECK(rep.rho_side.cols() == 2 * 18 + 1);
  CHECK(rep.sigma_min > 1e-6);
  CHECK(std::abs(rep.sigma_min - frozen::kPairingSigmaMinSin2t16) < 1e-12);
  const auto rep32 = pairing_matrix(sin_k(2), 32);
  CHECK(std::abs(rep32.sigma_min - frozen::kPairingSigmaMinSin2t32) < 1e-12);
  CHECK(rep.sigma_min / rep32.sigma_min < 2.0);
  CHECK(rep32.sigma_min / rep.sigma_min < 2.0);

  const auto vol = pairing_matrix(CircleForm::volume(), 16);
  CHECK(vol.relative_sigma_min() < 1e-10);
  CHECK(vol.sigma_max > 0.5);
  CHECK_THROWS_AS(pairing_matrix(sin_k(2), 1), std::invalid_argument);
}

TEST_CASE("omega_eval examples") {
  const auto f = circle();
  const auto e1 = constant_field(64, {1, 0});
  const auto e2 = constant_field(64, {0, 1});
  CHECK(std::abs(omega_eval(f, e1, e2, sin_k(2))) < 1e-14);
  const auto beta = fixed_form();
  CHECK(std::abs(omega_eval(f, e1, e2, beta) - beta.total()) < 1e-13);
  Rng rng(2);
  const auto g = random_star_loop(rng, 128);
  const auto u = random_tangent(rng, g);
  CHECK(omega_eval(g, u, u, beta) == 0.0);
  CHECK(std::abs(omega_eval(g, constant_field(128, {1, 0}), constant_field(128, {0, 1}), beta) -
                 beta.total()) < 1e-13);
}

TEST_CASE("omega routes agree; antisymmetry and bilinearity") {
  Rng rng(55);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_star_loop(rng, 128);
    const auto beta = random_morse_form(rng, rng.integer(1, 3));
    const auto u = random_tangent(rng, f);
    const auto v = random_tangent(rng, f);
    const auto w = random_tangent(rng, f);
    const double a = omega_eval(f, u, v, beta);
    CHECK(std::abs(a - omega_split(f, u, v, beta)) < 1e-9);
    CHECK(std::abs(a - omega_ambient(u, v, beta)) < 1e-12);
    CHECK(std::abs(a - omega_oracle(u, v, beta, 4096)) < 1e-10);
    CHECK(omega_eval(f, v, u, beta) == -a);
    const double c1 = rng.normal(), c2 = rng.normal();
    const double lhs = omega_eval(f, combine(c1, u, c2, w), v, beta);
    const double rhs = c1 * a + c2 * omega_eval(f, w, v, beta);
    CHECK(std::abs(lhs - rhs) < 1e-12 * (1 + std::abs(lhs)));
  }
}

TEST_CASE("pointed omega") {
  Rng rng(13);
  const auto f = random_star_loop(rng, 128);
  const auto beta = random_morse_form(rng, 2);
  const auto u = random_tangent(rng, f);
  const auto v = random_tangent(rng, f);
  const auto z = find_zeros(beta);
  const PointedDecoration none(std::vector<double>(z.size(), 0.0), z.zeros);
  CHECK(pointed_omega_eval(f, u, v, beta, none) == omega_eval(f, u, v, beta));

  const PointedDecoration pd({0.5, -1.25, 2.0}, {0.3, 2.0, 4.5});
  const auto e1 = constant_field(128, {1, 0});
  const auto e2 = constant_field(128, {0, 1});
  CHECK(std::abs(pointed_omega_eval(f, e1, e2, beta, pd) - (beta.total() + 1.25)) < 1e-12);

  const auto ui = LoopEmbedding::unchecked(u);
  const auto vi = LoopEmbedding::unchecked(v);
  double point_terms = 0.0;
  for (std::size_t i = 0; i < pd.marked.size(); ++i)
    point_terms += pd.circulations[i] * cross(ui(pd.marked[i]), vi(pd.marked[i]));
  const double ref = omega_oracle(u, v, beta, 4096) + point_terms;
  CHECK(std::abs(pointed_omega_eval(f, u, v, beta, pd) - ref) < 1e-10);

  CHECK_THROWS_AS(PointedDecoration({1.0}, {0.1, 0.2}), std::invalid_argument);
  CHECK_THROWS_AS(PointedDecoration({1.0, 1.0}, {0.2, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(PointedDecoration({1.0}, {7.0}), std::invalid_argument);
}

TEST_CASE("primitive one-form examples") {
  const auto f = circle();
  CHECK(primitive_one_form_eval(f, constant_field(64, {0, 0}), sin_k(2)) == 0.0);
  CHECK(std::abs(primitive_one_form_eval(f, constant_field(64, {1, 0}), sin_k(2))) < 1e-14);
  // u = e1, beta = 1 + sin t: alpha = -1/2 integral of sin t (1 + sin t) = -pi/2
  CHECK(std::abs(primitive_one_form_eval(f, constant_field(64, {1, 0}),
                                         CircleForm::trig(1.0, {}, {1.0})) +
                 pi / 2) < 1e-13);
}

TEST_CASE("finite-difference exactness and closedness") {
  Rng rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_star_loop(rng, 128);
    const auto beta = random_morse_form(rng, rng.integer(1, 3));
    const auto u = random_tangent(rng, f);
    const auto v = random_tangent(rng, f);
    const auto w = random_tangent(rng, f);
    CHECK(std::abs(fd_exactness_defect(f, u, v, beta)) < 1e-5);
    CHECK(std::abs(fd_closedness_defect(f, u, v, w, beta)) < 1e-5);
  }
}

TEST_CASE("momentum map examples") {
  const auto f = circle(256);
  const PlanarHamiltonian zero;
  CHECK(momentum_map_eval(f, zero, sin_k(2)) == 0.0);
  // a very wide bump is 1 to within 1e-8 near the curve
  const PlanarHamiltonian one({Bump{{0, 0}, 1e4, 1.0}});
  const auto beta = CircleForm::trig(0.1, {}, {0.0, 1.0});
  CHECK(std::abs(momentum_map_eval(f, one, beta) - beta.total()) < 1e-8);

  const PlanarHamiltonian bump({Bump{{0.5, 0.2}, 0.25, 1.3}});
  const PlanarHamiltonian wide({Bump{{0.5, 0.2}, 0.7, 1.3}});
  CHECK(std::abs(momentum_map_eval(f, bump, sin_k(2)) - frozen::kBumpMomentum) < 1e-9);
  CHECK(std::abs(momentum_map_eval(f, wide, sin_k(2)) - frozen::kWideBumpMomentum) < 1e-9);
  const double ref = oracle::periodic_trapezoid(
      [&](double t) { return wide.value({std::cos(t), std::sin(t)}) * std::sin(2 * t); });
  CHECK(std::abs(momentum_map_eval(f, wide, sin_k(2)) - ref) < 1e-9);

  const std::vector<PlanarHamiltonian> dict{zero, bump, wide};
  const auto all = momentum_map_eval(f, dict, sin_k(2));
  REQUIRE(all.size() == 3);
  CHECK(all[0] == 0.0);
  CHECK(all[1] == momentum_map_eval(f, bump, sin_k(2)));
  CHECK(all[2] == momentum_map_eval(f, wide, sin_k(2)));
}

TEST_CASE("momentum separation") {
  Rng rng(23);
  const auto sym = CircleForm::trig(0.0, {}, {0.0, 0.0, 1.0});
  const auto f = random_star_loop(rng, 256);
  const DecoratedLoop L(f, sym);
  std::vector<PlanarHamiltonian> dict;
  for (int i = 0; i < 50; ++i) dict.push_back(random_two_bump(rng, f(rng.uniform(0, 2 * pi)), 0.3));
  CHECK(momentum_separation(L, L, dict) == 0.0);

  const auto gamma = stabilizer_generator(sym, 2);
  const DecoratedLoop Lg(f.reparametrized(gamma), sym);
  CHECK(momentum_separation(L, Lg, dict) < 1e-9);

  // different profile: a bump supported near one segment sees it
  const auto other = CircleForm::trig(0.0, {0.3}, {0.0, 0.0, 1.0});
  const DecoratedLoop L2(f, other);
  const auto z = find_zeros(other);
  const double mid = 0.5 * (z.zeros[0] + z.zeros[1]);
  const std::vector<PlanarHamiltonian> local{PlanarHamiltonian({Bump{f(mid), 0.05, 1.0}})};
  CHECK(momentum_separation(L, L2, local) > 1e-4);
  CHECK(momentum_separation(L, L2, dict) > 1e-4);
  CHECK_THROWS_AS(momentum_separation(L, L2, std::vector<PlanarHamiltonian>{}),
                  std::invalid_argument);
}

TEST_CASE("omega and the momentum map are invariant under the stabilizer") {
  Rng rng(61);
  for (int trial = 0; trial < 3; ++trial) {
    const auto beta = random_symmetric_form(rng, 2);
    const auto g = stabilizer_generator(beta, 2);
    const auto f = random_star_loop(rng, 512);
    const auto u = random_tangent(rng, f);
    const auto v = random_tangent(rng, f);
    const auto fg = f.reparametrized(g);
    CHECK(std::abs(omega_eval(f, u, v, beta) -
                   omega_eval(fg, precompose(u, g), precompose(v, g), beta)) < 1e-9);
    const auto h = random_two_bump(rng, f(0.0), 1.0);
    CHECK(std::abs(momentum_map_eval(f, h, beta) - momentum_map_eval(fg, h, beta)) < 1e-9);
  }
}
