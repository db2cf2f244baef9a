#pragma once

#include <vector>

#include "vortexloop/geometry.hpp"

namespace vortexloop {

/// Gaussian bump A exp(-|p - c|^2 / (2 sigma^2)), blended to zero on
/// [5 sigma, 6 sigma] by a quintic smoothstep so that it is C^2 and exactly
/// zero beyond 6 sigma.
struct Bump {
  Point center;
  double sigma = 1.0;
  double amplitude = 1.0;
};

struct HessianValue {
  double xx = 0.0, xy = 0.0, yy = 0.0;
};

/// Compactly supported planar Hamiltonian: a finite sum of cut-off Gaussian
/// bumps. Sign convention: i_X omega = dh with omega = dx ^ dy, so
/// X_h = (dh/dy, -dh/dx).
class PlanarHamiltonian {
 public:
  PlanarHamiltonian() = default;
  explicit PlanarHamiltonian(std::vector<Bump> bumps);

  static constexpr double kCutoffStart = 5.0;
  static constexpr double kCutoffEnd = 6.0;

  double value(Point p) const;
  Point gradient(Point p) const;
  HessianValue hessian(Point p) const;
  Point vector_field(Point p) const;

  /// True when p lies outside every bump's closed support disc.
  bool outside_support(Point p) const;

  const std::vector<Bump>& bumps() const { return bumps_; }
  bool empty() const { return bumps_.empty(); }

 private:
  std::vector<Bump> bumps_;
};

Point hamiltonian_vector_field(const PlanarHamiltonian& h, Point p);

}  // namespace vortexloop
