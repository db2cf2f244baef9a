#pragma once

#include <cmath>
#include <vector>

#include "vortexloop/flow.hpp"

namespace slope_study {

using namespace vortexloop;

inline Point fixed_curve(double s) {
  return {std::cos(s) + 0.2 * std::cos(2 * s) - 0.05 * std::sin(3 * s) + 0.1 * std::sin(2 * s),
          std::sin(s) + 0.1 * std::sin(3 * s) + 0.07 * std::cos(2 * s)};
}

inline DecoratedLoop fixed_loop(int n = 256) {
  return DecoratedLoop(LoopEmbedding::from_function(fixed_curve, n),
                       CircleForm::trig(0.1, {0.0, 0.0, 0.3}, {0.0, 1.0, 0.0, 0.0, -0.2}));
}

// Generic non-radial two-bump flows.
inline std::vector<PlanarHamiltonian> configs() {
  return {
      PlanarHamiltonian({Bump{{0.5, 0.2}, 0.6, 2.0}, Bump{{-0.5, -0.4}, 0.5, -1.5}}),
      PlanarHamiltonian({Bump{{0.6, 0.3}, 0.6, 1.6}, Bump{{-0.5, -0.4}, 0.5, -1.2}}),
      PlanarHamiltonian({Bump{{0.4, 0.0}, 0.7, 3.0}, Bump{{-0.4, 0.3}, 0.6, 2.0}}),
      PlanarHamiltonian({Bump{{0.7, 0.1}, 0.5, 1.5}, Bump{{-0.3, -0.6}, 0.6, 1.5}}),
  };
}

inline const std::vector<double> kSteps{1e-2, 5e-3, 2.5e-3};

/// Least-squares slope of log y against log x.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct Slopes {
  double area = 0.0;
  double equivariance = 0.0;
};

inline Slopes measure(const DecoratedLoop& loop, const PlanarHamiltonian& h) {
  std::vector<double> area, eq;
  for (double dt : kSteps) {
    AdvectOptions o;
    o.T = 1.0;
    o.dt = dt;
    const auto rep = advect(loop, h, o);
    area.push_back(rep.area_drift);
    eq.push_back(rep.equivariance_residual);
  }
  return {loglog_slope(kSteps, area), loglog_slope(kSteps, eq)};
}

}  // namespace slope_study
