#include "vortexloop/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "vortexloop/errors.hpp"
#include "vortexloop/flow.hpp"
#include "vortexloop/quadrature.hpp"
#include "vortexloop/random.hpp"
#include "vortexloop/symplectic.hpp"

namespace vortexloop {
namespace {

constexpr double kPi = std::numbers::pi;

class Recorder {
 public:
  Recorder(std::string suite, std::vector<PropertyResult>& out) : suite_(std::move(suite)), out_(out) {}

  void at_most(const std::string& name, double value, double threshold, std::string detail = {}) {
    out_.push_back({suite_, name, value <= threshold, value, threshold, "<=", std::move(detail)});
  }
  void at_least(const std::string& name, double value, double threshold, std::string detail = {}) {
    out_.push_back({suite_, name, value >= threshold, value, threshold, ">=", std::move(detail)});
  }
  /// Runs a check that may throw; a throw is recorded as a failure.
  template <class F>
  void guarded(const std::string& name, F&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      out_.push_back({suite_, name, false, std::numeric_limits<double>::infinity(), 0.0, "<=",
                      e.what()});
    }
  }

 private:
  std::string suite_;
  std::vector<PropertyResult>& out_;
};

CircleForm sin_form(int q) {
  std::vector<double> s(q, 0.0);
  s[q - 1] = 1.0;
  return CircleForm::trig(0.0, std::vector<double>(q, 0.0), std::move(s));
}

double profile_shift_error(const VorticityProfile& p, const VorticityProfile& q) {
  if (p.size() != q.size() || p.size() == 0) return std::numeric_limits<double>::infinity();
  const std::size_t k = p.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < k; ++j) {
    double e = 0.0;
    for (std::size_t i = 0; i < k; ++i) e = std::max(e, std::abs(p.omegas[i] - q.omegas[(i + j) % k]));
    best = std::min(best, e);
  }
  return best / p.max_abs();
}

/// max over a grid of |cumulative(beta, t_i, t) - cumulative(beta, t_{i+l}, gamma(t))|.
double stabilizer_equivariance(const CircleForm& beta, const CircleDiffeo& gamma, int ell) {
  return intertwiner_residual(beta, beta, gamma, ell, 1024);
}

void forms_suite(Rng rng, std::vector<PropertyResult>& out) {
  Recorder r("forms", out);
  const auto s2 = sin_form(2);
  r.guarded("sin2t_zeros", [&] {
    const auto z = find_zeros(s2);
    double err = z.size() == 4 ? 0.0 : std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < z.size() && i < 4; ++i)
      err = std::max(err, std::abs(z.zeros[i] - i * kPi / 2));
    r.at_most("sin2t_zeros", err, 1e-10);
    const auto p = partial_vorticities(s2, z);
    double perr = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
      perr = std::max(perr, std::abs(p.omegas[i] - (i % 2 == 0 ? 1.0 : -1.0)));
    r.at_most("sin2t_profile", perr, 1e-10);
    r.at_most("sin2t_step", std::abs(symmetry_step(p) - 2.0), 0.0);
  });
  r.guarded("sin2t_stabilizer_is_rotation", [&] {
    const auto g = stabilizer_generator(s2, 2);
    r.at_most("sin2t_stabilizer_is_rotation", sup_distance(g, CircleDiffeo::rotation(kPi)), 1e-9);
  });
  r.guarded("sin3t_stabilizer_order", [&] {
    const auto s3 = sin_form(3);
    const auto z = find_zeros(s3);
    const auto p = partial_vorticities(s3, z);
    r.at_most("sin3t_zero_count", std::abs(static_cast<double>(z.size()) - 6.0), 0.0);
    r.at_most("sin3t_step", std::abs(symmetry_step(p) - 2.0), 0.0);
    const auto g = stabilizer_generator(s3, 2);
    r.at_most("sin3t_stabilizer_order", sup_distance_to_identity(g.power(3)), 1e-8);
  });

  r.guarded("random_forms_even_alternating", [&] {
    int bad = 0;
    for (int trial = 0; trial < 10; ++trial) {
      const auto f = random_morse_form(rng, rng.integer(1, 4));
      const auto z = find_zeros(f);
      const auto p = partial_vorticities(f, z);
      bool ok = z.size() % 2 == 0 && z.size() >= 2;
      for (std::size_t i = 0; ok && i < z.size(); ++i) {
        const std::size_t j = (i + 1) % z.size();
        ok = z.derivatives[i] * z.derivatives[j] < 0 && p.omegas[i] * p.omegas[j] < 0;
      }
      bad += !ok;
    }
    r.at_most("random_forms_even_alternating", bad, 0.0, "failing forms out of 10");
  });

  r.guarded("reparametrization_covariance", [&] {
    double worst = 0.0;
    for (int trial = 0; trial < 6; ++trial) {
      const auto f = random_morse_form(rng, rng.integer(1, 3));
      const auto g = random_diffeo(rng);
      const auto pulled = pullback_form(g, f, 1024);
      worst = std::max(worst, profile_shift_error(partial_vorticities(f, find_zeros(f)),
                                                  partial_vorticities(pulled, find_zeros(pulled))));
    }
    r.at_most("reparametrization_covariance", worst, 1e-8);
  });

  r.guarded("invert_cumulative_roundtrip", [&] {
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      const auto f = random_morse_form(rng, rng.integer(1, 3));
      const auto z = find_zeros(f);
      for (std::size_t i = 0; i < z.size(); ++i) {
        const double a = z.zeros[i];
        const double b = i + 1 < z.size() ? z.zeros[i + 1] : z.zeros[0] + kTwoPi;
        for (int s = 1; s < 8; ++s) {
          const double t = a + (b - a) * s / 8.0;
          const double back = invert_cumulative(f, a, std::fmod(b, kTwoPi), cumulative(f, a, t));
          worst = std::max(worst, std::abs(std::remainder(back - t, kTwoPi)));
        }
      }
    }
    r.at_most("invert_cumulative_roundtrip", worst, 1e-10);
  });

  r.guarded("stabilizer_random_symmetric", [&] {
    double order_err = 0.0, equiv_err = 0.0;
    for (int trial = 0; trial < 3; ++trial) {
      const int q = rng.integer(2, 3);
      const auto f = random_symmetric_form(rng, q);
      const auto p = partial_vorticities(f, find_zeros(f));
      const int ell = symmetry_step(p);
      const auto g = stabilizer_generator(f, ell);
      order_err = std::max(order_err, sup_distance_to_identity(g.power(static_cast<int>(p.size()) / ell)));
      equiv_err = std::max(equiv_err, stabilizer_equivariance(f, g, ell));
    }
    r.at_most("stabilizer_random_symmetric_order", order_err, 1e-8);
    r.at_most("stabilizer_random_symmetric_equivariance", equiv_err, 1e-9);
  });

  r.guarded("intertwiner_recovers_inverse", [&] {
    double worst = 0.0;
    for (int trial = 0; trial < 8; ++trial) {
      const auto model = random_morse_form(rng, rng.integer(1, 3));
      const auto gamma = random_diffeo(rng);
      const auto target = pullback_form(gamma, model, 1024);
      const auto shifts = circular_match(partial_vorticities(model, find_zeros(model)),
                                         partial_vorticities(target, find_zeros(target)), 1e-6);
      if (shifts.empty()) throw ProfileMismatch("pulled-back profile does not match");
      double best = std::numeric_limits<double>::infinity();
      const auto inv = gamma.inverse_map();
      for (int s : shifts) best = std::min(best, sup_distance(intertwiner(model, target, s), inv));
      worst = std::max(worst, best);
    }
    r.at_most("intertwiner_recovers_inverse", worst, 1e-8);
  });
}

void symplectic_suite(Rng rng, std::vector<PropertyResult>& out, bool inject_volume) {
  Recorder r("symplectic", out);
  r.guarded("pairing_nondegenerate", [&] {
    const auto beta = inject_volume ? CircleForm::volume() : sin_form(2);
    const auto rep = pairing_matrix(beta, 16);
    const bool degenerate = rep.relative_sigma_min() < 1e-10;
    r.at_least("pairing_nondegenerate", rep.sigma_min, 1e-6,
               std::string(inject_volume ? "beta = dt (injected); " : "beta = sin 2t; ") +
                   (degenerate ? "degenerate: numerical kernel found" : "nondegenerate"));
  });
  r.guarded("pairing_volume_form_kernel", [&] {
    const auto rep = pairing_matrix(CircleForm::volume(), 16);
    r.at_most("pairing_volume_form_kernel", rep.relative_sigma_min(), 1e-10);
  });
  r.guarded("pairing_resolution_stability", [&] {
    const double a = pairing_matrix(sin_form(2), 16).sigma_min;
    const double b = pairing_matrix(sin_form(2), 32).sigma_min;
    r.at_most("pairing_resolution_stability", std::max(a / b, b / a), 2.0);
  });

  const int n = 256;
  r.guarded("omega_identities", [&] {
    double route = 0.0, anti = 0.0, bilinear = 0.0;
    for (int trial = 0; trial < 8; ++trial) {
      const auto f = random_star_loop(rng, n);
      const auto beta = random_morse_form(rng, rng.integer(1, 3));
      const auto u = random_tangent(rng, f);
      const auto v = random_tangent(rng, f);
      const auto w = random_tangent(rng, f);
      const double a = rng.normal(), b = rng.normal();
      const double uv = omega_eval(f, u, v, beta);
      route = std::max(route, std::abs(uv - omega_split(f, u, v, beta)));
      anti = std::max(anti, std::abs(uv + omega_eval(f, v, u, beta)));
      TangentField comb(n);
      for (int j = 0; j < n; ++j) comb[j] = a * u[j] + b * w[j];
      bilinear = std::max(bilinear, std::abs(omega_eval(f, comb, v, beta) -
                                             (a * uv + b * omega_eval(f, w, v, beta))));
    }
    r.at_most("omega_route_equivalence", route, 1e-9);
    r.at_most("omega_antisymmetry", anti, 1e-12);
    r.at_most("omega_bilinearity", bilinear, 1e-12);
  });
  r.guarded("finite_difference_identities", [&] {
    double closed = 0.0, exact = 0.0;
    for (int trial = 0; trial < 4; ++trial) {
      const auto f = random_star_loop(rng, 128);
      const auto beta = random_morse_form(rng, rng.integer(1, 3));
      const auto u = random_tangent(rng, f);
      const auto v = random_tangent(rng, f);
      const auto w = random_tangent(rng, f);
      closed = std::max(closed, std::abs(fd_closedness_defect(f, u, v, w, beta)));
      exact = std::max(exact, std::abs(fd_exactness_defect(f, u, v, beta)));
    }
    r.at_most("omega_closedness", closed, 1e-5);
    r.at_most("omega_exactness", exact, 1e-5);
  });
  r.guarded("stabilizer_invariance", [&] {
    double omega_err = 0.0, momentum_err = 0.0;
    for (int trial = 0; trial < 2; ++trial) {
      const auto beta = random_symmetric_form(rng, 2);
      const auto p = partial_vorticities(beta, find_zeros(beta));
      const auto g = stabilizer_generator(beta, symmetry_step(p));
      const auto f = random_star_loop(rng, 512);
      const auto u = random_tangent(rng, f);
      const auto v = random_tangent(rng, f);
      const auto fg = f.reparametrized(g);
      const auto compose_field = [&](const TangentField& field) {
        const auto moved = LoopEmbedding::unchecked(field);
        TangentField out(field.size());
        const auto grid = uniform_grid(static_cast<int>(field.size()));
        for (std::size_t j = 0; j < field.size(); ++j) out[j] = moved(g(grid[j]));
        return out;
      };
      omega_err = std::max(omega_err, std::abs(omega_eval(f, u, v, beta) -
                                               omega_eval(fg, compose_field(u), compose_field(v), beta)));
      const auto h = random_two_bump(rng, fg(0.0), 1.0);
      momentum_err = std::max(momentum_err, std::abs(momentum_map_eval(f, h, beta) -
                                                     momentum_map_eval(fg, h, beta)));
    }
    r.at_most("omega_stabilizer_invariance", omega_err, 1e-9);
    r.at_most("momentum_stabilizer_invariance", momentum_err, 1e-9);
  });
}

void flow_suite(Rng rng, std::vector<PropertyResult>& out) {
  Recorder r("flow", out);
  r.guarded("advect_invariants", [&] {
    double area = 0.0, profile = 0.0, ham = 0.0;
    int inequivalent = 0;
    for (int trial = 0; trial < 3; ++trial) {
      const DecoratedLoop loop(random_star_loop(rng), random_morse_form(rng, rng.integer(1, 3)));
      const auto h = random_two_bump(rng, loop.embedding()(0.0), 1.0);
      const auto rep = advect(loop, h);
      area = std::max(area, rep.area_drift);
      profile = std::max(profile, rep.profile_drift);
      ham = std::max(ham, rep.hamiltonian_drift);
      inequivalent += !orbit_equivalent(loop, rep.loop);
    }
    r.at_most("advect_area_drift", area, 1e-8);
    r.at_most("advect_profile_drift", profile, 0.0);
    r.at_most("advect_hamiltonian_drift", ham, 1e-8);
    r.at_most("advect_orbit_equivalent", inequivalent, 0.0, "inequivalent results out of 3");
  });
  r.guarded("equivariance_residual", [&] {
    double worst = 0.0;
    for (int trial = 0; trial < 3; ++trial) {
      const DecoratedLoop loop(random_star_loop(rng), random_morse_form(rng, rng.integer(1, 3)));
      const auto hf = random_two_bump(rng, loop.embedding()(0.0), 1.0);
      const auto ht = random_two_bump(rng, loop.embedding()(kPi), 1.0);
      worst = std::max(worst, equivariance_residual(loop, hf, ht));
    }
    r.at_most("equivariance_residual", worst, 1e-7);
  });
  r.guarded("outside_support_fixed", [&] {
    const auto h = random_two_bump(rng, {0.0, 0.0}, 0.5);
    std::vector<Point> far{{20.0, 0.0}, {-15.0, 7.0}, {0.0, -30.0}};
    AdvectOptions o;
    const auto moved = flow_points(h, far, o);
    double d = 0.0;
    for (std::size_t i = 0; i < far.size(); ++i) d = std::max(d, norm(moved[i] - far[i]));
    r.at_most("outside_support_fixed", d, 0.0);
  });
  r.guarded("vector_field_divergence_free", [&] {
    const auto h = random_two_bump(rng, {0.0, 0.0}, 0.5);
    double worst = 0.0;
    const double e = 1e-5;
    for (int i = 0; i < 20; ++i) {
      const Point p{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
      const double div = (h.vector_field(p + Point{e, 0}).x - h.vector_field(p - Point{e, 0}).x +
                          h.vector_field(p + Point{0, e}).y - h.vector_field(p - Point{0, e}).y) /
                         (2 * e);
      worst = std::max(worst, std::abs(div));
    }
    r.at_most("vector_field_divergence_free", worst, 1e-7);
  });
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
}

VerifyReport run_verify(const VerifyOptions& options) {
  const auto& s = options.suite;
  if (s != "all" && s != "forms" && s != "symplectic" && s != "flow")
    throw std::invalid_argument("unknown suite '" + s + "' (forms | symplectic | flow | all)");
  VerifyReport rep{s, options.seed, {}};
  // Each suite draws from its own stream so a suite alone reproduces its part of "all".
  if (s == "all" || s == "forms") forms_suite(Rng(options.seed * 3 + 1), rep.results);
  if (s == "all" || s == "symplectic")
    symplectic_suite(Rng(options.seed * 3 + 2), rep.results, options.inject_volume_form);
  if (s == "all" || s == "flow") flow_suite(Rng(options.seed * 3 + 3), rep.results);
  return rep;
}

io::Json to_json(const VerifyReport& report) {
  io::Json results = io::Json::array();
  for (const auto& p : report.results) {
    io::Json j{{"suite", p.suite},   {"property", p.name},        {"pass", p.pass},
               {"value", std::isfinite(p.value) ? io::Json(p.value) : io::Json("inf")},
               {"comparison", p.comparison}, {"threshold", p.threshold}};
    if (!p.detail.empty()) j["detail"] = p.detail;
    results.push_back(std::move(j));
  }
  const auto failed = std::count_if(report.results.begin(), report.results.end(),
                                    [](const auto& r) { return !r.pass; });
  return io::Json{{"schema", io::kSchema}, {"suite", report.suite},     {"seed", report.seed},
                  {"passed", report.passed()}, {"failures", failed}, {"results", std::move(results)}};
}

}  // namespace vortexloop
