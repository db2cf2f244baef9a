#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "vortexloop/circle_diffeo.hpp"
#include "vortexloop/circle_form.hpp"
#include "vortexloop/hamiltonian.hpp"
#include "vortexloop/loop.hpp"
#include "vortexloop/symplectic.hpp"

namespace vortexloop {

/// Seeded generator with platform-independent uniform and normal draws
/// (the standard distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Integer in [lo, hi].
  int integer(int lo, int hi);
  double normal();
  double sign() { return uniform() < 0.5 ? -1.0 : 1.0; }
  Rng split() { return Rng(engine_()); }

 private:
  std::mt19937_64 engine_;
};

/// Trig polynomial with coefficients ~ scale / j^2.
TrigSeries random_series(Rng& rng, int degree, bool zero_mean, double scale = 1.0);

/// Morse form a sin(q t + phi) + small higher modes, with k = 2q zeros.
CircleForm random_morse_form(Rng& rng, int q);

/// gamma(t) = t + phi0 + sum c_j sin(j t + theta_j), sum j |c_j| <= spread < 1.
CircleDiffeo random_diffeo(Rng& rng, int modes = 3, double spread = 0.6, int samples = 256);

/// g(q t) pulled back by a random diffeo, g a random two-zero Morse form:
/// k = 2q zeros with step 2 and a non-rigid stabilizer.
CircleForm random_symmetric_form(Rng& rng, int q, int samples = 512);

/// Star-shaped loop c + R (1 + sum a_j cos(j s + phi_j)) (cos s, sin s).
LoopEmbedding random_star_loop(Rng& rng, int n = 256, int modes = 4, double wobble = 0.25);

/// Two bumps with sigma in [0.4, 0.8] and |amplitude| in [0.5, 1], centered
/// within `reach` of `around`.
PlanarHamiltonian random_two_bump(Rng& rng, Point around, double reach);

/// Tangent field satisfying the area constraint, built from random (rho, lambda).
TangentField random_tangent(Rng& rng, const LoopEmbedding& f, int degree = 4);

}  // namespace vortexloop
