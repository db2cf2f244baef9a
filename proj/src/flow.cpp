#include "vortexloop/flow.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <span>
#include <cmath>
#include <stdexcept>
#include <string>

#include "vortexloop/errors.hpp"
#include "vortexloop/quadrature.hpp"
#include "vortexloop/symplectic.hpp"

namespace vortexloop {
namespace {

void check_times(const AdvectOptions& o) {
  if (!(o.dt > 0.0) || !std::isfinite(o.dt)) throw std::invalid_argument("dt must be positive");
  if (!(o.T >= 0.0) || !std::isfinite(o.T)) throw std::invalid_argument("T must be non-negative");
  if (o.T > 0.0 && o.dt > o.T) throw std::invalid_argument("dt must not exceed T");
}

int step_count(const AdvectOptions& o) {
  if (o.T == 0.0) return 0;
  return std::max(1, static_cast<int>(std::ceil(o.T / o.dt - 1e-9)));
}

double step_size(const AdvectOptions& o, int step, int steps) {
  return step + 1 < steps ? o.dt : o.T - (steps - 1) * o.dt;
}

double sample_momentum(std::span<const Point> pts, std::span<const double> weights,
                       const PlanarHamiltonian& h) {
  double sum = 0.0;
  for (std::size_t j = 0; j < pts.size(); ++j) sum += h.value(pts[j]) * weights[j];
  return sum;
}

}  // namespace

const char* to_string(Scheme scheme) {
  return scheme == Scheme::RK4 ? "rk4" : "implicit-midpoint";
}

Scheme parse_scheme(const std::string& name) {
  if (name == "rk4") return Scheme::RK4;
  if (name == "implicit-midpoint" || name == "midpoint") return Scheme::ImplicitMidpoint;
  throw std::invalid_argument("unknown scheme '" + name + "' (rk4 | implicit-midpoint)");
}

std::vector<Point> flow_points(const PlanarHamiltonian& h, std::vector<Point> points,
                               const AdvectOptions& options, double* max_local_error) {
  check_times(options);
  const int steps = step_count(options);
  std::vector<double> err(points.size());
  double worst = 0.0;
  if (!h.empty()) {
    for (int s = 0; s < steps; ++s) {
      kernels::step_points(h, points, step_size(options, s, steps), options.scheme, err);
      for (std::size_t i = 0; i < err.size(); ++i) {
        if (!(err[i] <= options.max_local_error)) {
          throw StepRejected("local error " + std::to_string(err[i]) + " at point " +
                             std::to_string(i) + " in step " + std::to_string(s) +
                             " exceeds " + std::to_string(options.max_local_error) +
                             "; reduce dt");
        }
        worst = std::max(worst, err[i]);
      }
    }
  }
  if (max_local_error) *max_local_error = worst;
  return points;
}

FlowReport advect(const DecoratedLoop& loop, const PlanarHamiltonian& h,
                  const AdvectOptions& options) {
  check_times(options);
  const auto& f0 = loop.embedding();
  const auto& beta = loop.decoration();
  const double area0 = enclosed_area(f0);
  const double j0 = momentum_map_eval(f0, h, beta);

  std::vector<FlowSample> series;
  std::vector<Point> pts = f0.samples();
  const int steps = step_count(options);
  double worst = 0.0;
  if (options.record_series) series.push_back({0, 0.0, area0, j0, 0.0});
  if (!h.empty()) {
    std::vector<double> err(pts.size());
    double t = 0.0;
    for (int s = 0; s < steps; ++s) {
      const double dt = step_size(options, s, steps);
      kernels::step_points(h, pts, dt, options.scheme, err);
      t += dt;
      double step_worst = 0.0;
      for (std::size_t i = 0; i < err.size(); ++i) {
        if (!(err[i] <= options.max_local_error)) {
          throw StepRejected("local error " + std::to_string(err[i]) + " at sample " +
                             std::to_string(i) + " in step " + std::to_string(s) +
                             " exceeds " + std::to_string(options.max_local_error) +
                             "; reduce dt");
        }
        step_worst = std::max(step_worst, err[i]);
      }
      worst = std::max(worst, step_worst);
      if (options.record_series) {
        const auto current = LoopEmbedding::unchecked(pts);
        series.push_back({s + 1, s + 1 == steps ? options.T : t, enclosed_area(current),
                          momentum_map_eval(current, h, beta), step_worst});
      }
    }
  } else if (options.record_series) {
    for (int s = 0; s < steps; ++s)
      series.push_back({s + 1, s + 1 == steps ? options.T : (s + 1) * options.dt, area0, j0, 0.0});
  }

  std::optional<LoopEmbedding> evolved;
  try {
    evolved.emplace(std::move(pts));
  } catch (const Error& e) {
    throw ValidationFailed(std::string("evolved loop is invalid: ") + e.what());
  }
  FlowReport rep{DecoratedLoop(std::move(*evolved), beta), 0.0, 0.0, 0.0, 0.0, steps, worst,
                 std::move(series)};
  const double area1 = enclosed_area(rep.loop.embedding());
  rep.area_drift = std::abs(area1 - area0) / std::abs(area0);
  const auto& w0 = loop.profile();
  const auto& w1 = rep.loop.profile();
  if (w0.size() != w1.size()) {
    rep.profile_drift = std::numeric_limits<double>::infinity();
  } else {
    for (std::size_t i = 0; i < w0.size(); ++i)
      rep.profile_drift =
          std::max(rep.profile_drift, std::abs(w1.omegas[i] - w0.omegas[i]) / w0.max_abs());
  }
  rep.hamiltonian_drift = std::abs(momentum_map_eval(rep.loop.embedding(), h, beta) - j0);
  rep.equivariance_residual =
      equivariance_residual(loop, h, options.test_hamiltonian.value_or(h), options);
  return rep;
}

double equivariance_residual(const DecoratedLoop& loop, const PlanarHamiltonian& h_flow,
                             const PlanarHamiltonian& h_test, const AdvectOptions& options) {
  check_times(options);
  const auto& f = loop.embedding();
  const int n = static_cast<int>(f.size());
  auto weights = loop.decoration().series().evaluate(uniform_grid(n));
  for (auto& w : weights) w *= kTwoPi / n;

  const auto moved = flow_points(h_flow, f.samples(), options);
  const double lhs = sample_momentum(moved, weights, h_test);

  AdvectOptions reference = options;
  reference.dt = options.dt / 4.0;
  const auto pulled = flow_points(h_flow, f.samples(), reference);
  const double rhs = sample_momentum(pulled, weights, h_test);
  return std::abs(lhs - rhs);
}

}  // namespace vortexloop
