#include "vortexloop/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace vortexloop {
namespace {

// Radial profile g(r) = exp(-r^2 / 2 s^2) * chi(r) and its first two
// derivatives divided appropriately for the Cartesian chain rule.
struct Radial {
  double value = 0.0;
  double d1_over_r = 0.0;  // g'(r) / r
  double d2 = 0.0;         // g''(r)
};

Radial radial_profile(double r2, double sigma) {
  Radial out;
  const double s2 = sigma * sigma;
  const double start = PlanarHamiltonian::kCutoffStart * sigma;
  const double end = PlanarHamiltonian::kCutoffEnd * sigma;
  if (r2 >= end * end) return out;
  const double g = std::exp(-0.5 * r2 / s2);
  if (r2 < start * start) {
    out.value = g;
    out.d1_over_r = -g / s2;
    out.d2 = g * (r2 / s2 - 1.0) / s2;
    return out;
  }
  const double r = std::sqrt(r2);
  const double q = (r - start) / sigma;
  const double q2 = q * q;
  const double chi = 1.0 - q2 * q * (10.0 - 15.0 * q + 6.0 * q2);
  const double dchi = -30.0 * q2 * (1.0 - q) * (1.0 - q) / sigma;
  const double d2chi = -60.0 * q * (1.0 - q) * (1.0 - 2.0 * q) / s2;
  const double dg = -r / s2 * g;
  const double d2g = g * (r2 / s2 - 1.0) / s2;
  out.value = g * chi;
  out.d1_over_r = (dg * chi + g * dchi) / r;
  out.d2 = d2g * chi + 2.0 * dg * dchi + g * d2chi;
  return out;
}

}  // namespace

PlanarHamiltonian::PlanarHamiltonian(std::vector<Bump> bumps) : bumps_(std::move(bumps)) {
  for (std::size_t i = 0; i < bumps_.size(); ++i) {
    const auto& b = bumps_[i];
    if (!(b.sigma > 0.0) || !std::isfinite(b.sigma) || !std::isfinite(b.amplitude) ||
        !std::isfinite(b.center.x) || !std::isfinite(b.center.y))
      throw std::invalid_argument("bump " + std::to_string(i) +
                                  ": sigma must be positive and all fields finite");
  }
}

double PlanarHamiltonian::value(Point p) const {
  double h = 0.0;
  for (const auto& b : bumps_) {
    const Point d = p - b.center;
    h += b.amplitude * radial_profile(dot(d, d), b.sigma).value;
  }
  return h;
}

Point PlanarHamiltonian::gradient(Point p) const {
  Point g;
  for (const auto& b : bumps_) {
    const Point d = p - b.center;
    const auto rad = radial_profile(dot(d, d), b.sigma);
    g += (b.amplitude * rad.d1_over_r) * d;
  }
  return g;
}

HessianValue PlanarHamiltonian::hessian(Point p) const {
  HessianValue h;
  for (const auto& b : bumps_) {
    const Point d = p - b.center;
    const double r2 = dot(d, d);
    const auto rad = radial_profile(r2, b.sigma);
    if (rad.value == 0.0 && rad.d2 == 0.0) continue;
    // H = g'/r I + (g'' - g'/r) d d^T / r^2
    const double a = rad.d1_over_r;
    const double c = r2 > 0.0 ? (rad.d2 - a) / r2 : 0.0;
    h.xx += b.amplitude * (a + c * d.x * d.x);
    h.xy += b.amplitude * (c * d.x * d.y);
    h.yy += b.amplitude * (a + c * d.y * d.y);
  }
  return h;
}

Point PlanarHamiltonian::vector_field(Point p) const {
  const Point g = gradient(p);
  return {g.y, -g.x};
}

bool PlanarHamiltonian::outside_support(Point p) const {
  for (const auto& b : bumps_) {
    const Point d = p - b.center;
    const double end = kCutoffEnd * b.sigma;
    if (dot(d, d) < end * end) return false;
  }
  return true;
}

Point hamiltonian_vector_field(const PlanarHamiltonian& h, Point p) { return h.vector_field(p); }

}  // namespace vortexloop
