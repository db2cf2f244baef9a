#include "vortexloop/random.hpp"

#include <cmath>

#include "vortexloop/quadrature.hpp"

namespace vortexloop {

int Rng::integer(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

double Rng::normal() {
  double u = uniform();
  while (u == 0.0) u = uniform();
  const double v = uniform();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(kTwoPi * v);
}

TrigSeries random_series(Rng& rng, int degree, bool zero_mean, double scale) {
  const double a0 = zero_mean ? 0.0 : scale * rng.normal();
  std::vector<double> c(degree), s(degree);
  for (int j = 0; j < degree; ++j) {
    const double w = scale / ((j + 1.0) * (j + 1.0));
    c[j] = w * rng.normal();
    s[j] = w * rng.normal();
  }
  return TrigSeries(a0, std::move(c), std::move(s));
}

CircleForm random_morse_form(Rng& rng, int q) {
  const double amp = rng.uniform(0.5, 2.0);
  const double phase = rng.uniform(0.0, kTwoPi);
  const int degree = 2 * q + 2;
  std::vector<double> c(degree, 0.0), s(degree, 0.0);
  c[q - 1] = amp * std::sin(phase);
  s[q - 1] = amp * std::cos(phase);
  // Perturbation small enough that sin(q t + phi) dominates near its zeros.
  for (int j = 0; j < degree; ++j) {
    if (j == q - 1) continue;
    c[j] += 0.08 * amp * rng.uniform(-1.0, 1.0) / (j + 1.0);
    s[j] += 0.08 * amp * rng.uniform(-1.0, 1.0) / (j + 1.0);
  }
  return CircleForm::trig(0.05 * amp * rng.uniform(-1.0, 1.0), std::move(c), std::move(s));
}

CircleDiffeo random_diffeo(Rng& rng, int modes, double spread, int samples) {
  const double phi0 = rng.uniform(0.0, kTwoPi);
  std::vector<double> c(modes), theta(modes);
  double budget = 0.0;
  for (int j = 0; j < modes; ++j) {
    c[j] = rng.uniform(-1.0, 1.0);
    theta[j] = rng.uniform(0.0, kTwoPi);
    budget += (j + 1) * std::abs(c[j]);
  }
  const double scale = budget > 0.0 ? spread * rng.uniform(0.5, 1.0) / budget : 0.0;
  return CircleDiffeo::from_function(
      [&](double t) {
        double v = t + phi0;
        for (int j = 0; j < modes; ++j) v += scale * c[j] * std::sin((j + 1) * t + theta[j]);
        return v;
      },
      samples);
}

CircleForm random_symmetric_form(Rng& rng, int q, int samples) {
  // g(t) = offset + a sin(t + phase) + b cos 2t has exactly two zeros and
  // unequal positive and negative parts.
  const double a = rng.uniform(0.5, 1.5);
  const double b = rng.uniform(0.1, 0.2) * a;
  const double phase = rng.uniform(0.0, kTwoPi);
  const double offset = rng.uniform(0.15, 0.3) * a * rng.sign();
  std::vector<double> c(2 * q, 0.0), s(2 * q, 0.0);
  // g(q t) = offset + a sin(q t + phase) + b cos(2 q t)
  c[q - 1] = a * std::sin(phase);
  s[q - 1] = a * std::cos(phase);
  c[2 * q - 1] = b;
  const auto model = CircleForm::trig(offset, std::move(c), std::move(s));
  const auto gamma = random_diffeo(rng, 2, 0.4, samples);
  return pullback_form(gamma, model, samples);
}

LoopEmbedding random_star_loop(Rng& rng, int n, int modes, double wobble) {
  const Point center{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  const double radius = rng.uniform(0.8, 1.5);
  std::vector<double> a(modes), phi(modes);
  double total = 0.0;
  for (int j = 0; j < modes; ++j) {
    a[j] = rng.uniform(-1.0, 1.0) / (j + 1.0);
    phi[j] = rng.uniform(0.0, kTwoPi);
    total += std::abs(a[j]) * (j + 2.0);
  }
  // Bounding sum |a_j| (j + 2) keeps r > 0 and the curve star-shaped and immersed.
  const double scale = total > 0.0 ? wobble / total : 0.0;
  return LoopEmbedding::from_function(
      [&](double s) {
        double r = 1.0;
        for (int j = 0; j < modes; ++j) r += scale * a[j] * std::cos((j + 2) * s + phi[j]);
        return center + radius * r * Point{std::cos(s), std::sin(s)};
      },
      n);
}

PlanarHamiltonian random_two_bump(Rng& rng, Point around, double reach) {
  std::vector<Bump> bumps(2);
  for (auto& b : bumps) {
    const double r = reach * std::sqrt(rng.uniform());
    const double th = rng.uniform(0.0, kTwoPi);
    b.center = around + r * Point{std::cos(th), std::sin(th)};
    b.sigma = rng.uniform(0.4, 0.8);
    b.amplitude = rng.sign() * rng.uniform(0.5, 1.0);
  }
  return PlanarHamiltonian(std::move(bumps));
}

TangentField random_tangent(Rng& rng, const LoopEmbedding& f, int degree) {
  const auto rho = random_series(rng, degree, true);
  const auto lambda = random_series(rng, degree, false);
  return project_to_constraint(f, tangent_compose(f, rho, lambda));
}

}  // namespace vortexloop
