#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vortexloop/hamiltonian.hpp"
#include "vortexloop/kernels.hpp"
#include "vortexloop/loop.hpp"

namespace vortexloop {

struct AdvectOptions {
  double T = 1.0;
  double dt = 1e-3;
  Scheme scheme = Scheme::RK4;
  /// A step whose per-point error estimate exceeds this is rejected.
  double max_local_error = 1e-3;
  /// Record invariants after every step.
  bool record_series = false;
  /// Test function for the equivariance residual; the flow Hamiltonian
  /// itself when empty.
  std::optional<PlanarHamiltonian> test_hamiltonian;
};

struct FlowSample {
  int step = 0;
  double t = 0.0;
  double area = 0.0;
  double hamiltonian = 0.0;
  double max_local_error = 0.0;
};

struct FlowReport {
  DecoratedLoop loop;
  double area_drift = 0.0;         // |a_T - a_0| / a_0
  double profile_drift = 0.0;      // max_i |omega_i(T) - omega_i(0)| / max|omega|
  double hamiltonian_drift = 0.0;  // |J(f_T)(h) - J(f_0)(h)|
  double equivariance_residual = 0.0;
  int steps = 0;
  double max_local_error = 0.0;
  std::vector<FlowSample> series;
};

/// Scheme name as used on the command line and in JSON ("rk4",
/// "implicit-midpoint").
const char* to_string(Scheme scheme);
Scheme parse_scheme(const std::string& name);

/// Time-T flow of X_h applied to each point: ceil(T / dt) steps, the last
/// one shortened to land on T. Throws StepRejected.
std::vector<Point> flow_points(const PlanarHamiltonian& h, std::vector<Point> points,
                               const AdvectOptions& options, double* max_local_error = nullptr);

/// phi_T . (C, beta): samples are carried by the flow, the decoration on
/// the parameter circle is unchanged. Throws StepRejected, or
/// ValidationFailed when the evolved polyline is no longer a valid loop.
FlowReport advect(const DecoratedLoop& loop, const PlanarHamiltonian& h,
                  const AdvectOptions& options = {});

/// |<J(phi_T o f), h_test> - <J(f), h_test o phi_T>|. Both sides use the
/// trapezoid rule on the sample nodes: the first flows the loop with dt,
/// the second evaluates h_test o phi_T with a dt / 4 reference flow.
double equivariance_residual(const DecoratedLoop& loop, const PlanarHamiltonian& h_flow,
                             const PlanarHamiltonian& h_test, const AdvectOptions& options = {});

}  // namespace vortexloop
