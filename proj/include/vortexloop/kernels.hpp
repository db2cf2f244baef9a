#pragma once

// Data-parallel inner loops. Every kernel has an OpenMP version (the one the
// library calls) and a *_serial reference kept for tests and benchmarks.
// Parallel kernels write per-index outputs only; any reduction happens
// serially afterwards so results do not depend on the thread count.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "vortexloop/geometry.hpp"
#include "vortexloop/hamiltonian.hpp"

namespace vortexloop {

enum class Scheme { RK4, ImplicitMidpoint };

namespace kernels {

double trig_value(double a0, std::span<const double> c, std::span<const double> s, double t);
std::pair<double, double> trig_value_and_derivative(double a0, std::span<const double> c,
                                                    std::span<const double> s, double t);

void evaluate_trig(double a0, std::span<const double> c, std::span<const double> s,
                   std::span<const double> t, std::span<double> out);
void evaluate_trig_serial(double a0, std::span<const double> c, std::span<const double> s,
                          std::span<const double> t, std::span<double> out);

/// Real DFT of uniform samples; returns a0 and fills the cosine/sine
/// coefficients of the band-limited interpolant (m = N/2 modes).
double dft_coefficients(std::span<const double> samples, std::vector<double>& c,
                        std::vector<double>& s);
double dft_coefficients_serial(std::span<const double> samples, std::vector<double>& c,
                               std::vector<double>& s);

std::optional<std::pair<std::size_t, std::size_t>> first_crossing(std::span<const Point> polygon);
std::optional<std::pair<std::size_t, std::size_t>> first_crossing_serial(
    std::span<const Point> polygon);

/// One integrator step for every point. local_error receives a per-point
/// error estimate.
void step_points(const PlanarHamiltonian& h, std::span<Point> points, double dt, Scheme scheme,
                 std::span<double> local_error);
void step_points_serial(const PlanarHamiltonian& h, std::span<Point> points, double dt,
                        Scheme scheme, std::span<double> local_error);

/// Single-point step shared by both kernels.
Point step_point(const PlanarHamiltonian& h, Point p, double dt, Scheme scheme,
                 double& local_error);

}  // namespace kernels
}  // namespace vortexloop
