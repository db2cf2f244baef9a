#pragma once

#include <span>
#include <utility>
#include <vector>

namespace vortexloop {

/// Real trigonometric polynomial
///   p(t) = a0 + sum_{j=1..m} a_j cos(j t) + b_j sin(j t).
/// Used for every periodic quantity in the library: vorticity densities,
/// curve coordinates, diffeomorphism displacements and tangent fields.
class TrigSeries {
 public:
  TrigSeries() = default;
  TrigSeries(double a0, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

  static TrigSeries constant(double c) { return TrigSeries(c, {}, {}); }

  /// Band-limited interpolant of samples taken at t_j = 2*pi*j/N. For even N
  /// the Nyquist mode carries a cosine term only.
  static TrigSeries interpolate(std::span<const double> samples);

  double value(double t) const;
  double derivative(double t) const;
  double second_derivative(double t) const;
  std::pair<double, double> value_and_derivative(double t) const;

  /// Batch evaluation (OpenMP-parallel over points).
  void evaluate(std::span<const double> t, std::span<double> out) const;
  std::vector<double> evaluate(std::span<const double> t) const;

  int degree() const { return static_cast<int>(cos_.size()); }
  double mean() const { return a0_; }
  double a0() const { return a0_; }
  const std::vector<double>& cos_coeffs() const { return cos_; }
  const std::vector<double>& sin_coeffs() const { return sin_; }
  double max_abs_coefficient() const;

  TrigSeries derivative_series() const;
  /// Drops trailing modes whose coefficients are below rel_tol times the
  /// largest coefficient.
  TrigSeries trimmed(double rel_tol) const;

  TrigSeries& operator+=(const TrigSeries& other);
  TrigSeries& operator*=(double s);
  friend TrigSeries operator+(TrigSeries a, const TrigSeries& b) { return a += b; }
  friend TrigSeries operator*(TrigSeries a, double s) { return a *= s; }
  friend TrigSeries operator*(double s, TrigSeries a) { return a *= s; }

 private:
  double a0_ = 0.0;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

/// Integral over one period of the product of the listed series, exact for
/// trigonometric polynomials (trapezoid rule with enough nodes).
double period_integral_of_product(std::span<const TrigSeries* const> factors);

}  // namespace vortexloop
