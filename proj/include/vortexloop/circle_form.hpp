#pragma once

#include <utility>
#include <vector>

#include "vortexloop/quadrature.hpp"
#include "vortexloop/trig_series.hpp"

namespace vortexloop {

/// A one-form beta = beta(t) dt on the oriented circle R / 2 pi Z.
///
/// Both accepted representations are held internally as a trigonometric
/// series: a coefficient list is used as given, uniform samples are turned
/// into their band-limited interpolant. The original samples are kept so the
/// form serializes back to what was read.
class CircleForm {
 public:
  enum class Kind { Trig, Samples };

  CircleForm() = default;

  static CircleForm trig(double a0, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);
  static CircleForm from_series(TrigSeries series);
  static CircleForm from_samples(std::vector<double> values);
  /// Nowhere-vanishing density c dt.
  static CircleForm volume(double density = 1.0);

  double operator()(double t) const { return series_.value(t); }
  double value(double t) const { return series_.value(t); }
  double derivative(double t) const { return series_.derivative(t); }
  std::pair<double, double> value_and_derivative(double t) const {
    return series_.value_and_derivative(t);
  }

  /// Signed integral of beta over [a, b] from the exact antiderivative.
  double integral(double a, double b) const {
    return series_.a0() * (b - a) + primitive_.value(b) - primitive_.value(a);
  }
  /// The same integral by composite Gauss-Legendre quadrature.
  double quadrature_integral(double a, double b) const;
  /// Integral over the full circle.
  double total() const { return kTwoPi * series_.mean(); }

  int degree() const { return series_.degree(); }
  /// Number of samples for sampled forms, 2 * degree + 1 otherwise.
  int resolution() const;

  Kind kind() const { return kind_; }
  const TrigSeries& series() const { return series_; }
  const std::vector<double>& samples() const { return samples_; }

  /// The form seen through the orientation reversal t -> -t, i.e. the
  /// pullback t -> -beta(-t).
  CircleForm reversed() const;

 private:
  void set_series(TrigSeries series);

  Kind kind_ = Kind::Trig;
  TrigSeries series_;
  TrigSeries primitive_;  // periodic part of the antiderivative
  std::vector<double> samples_;
};

/// Zeros of a Morse form, ordered in [0, 2 pi), with beta'(t_i).
struct ZeroSet {
  std::vector<double> zeros;
  std::vector<double> derivatives;

  std::size_t size() const { return zeros.size(); }
  bool empty() const { return zeros.empty(); }
};

/// Partial vorticities omega_i = integral of beta from t_i to t_{i+1}
/// (t_{k+1} = t_1 + 2 pi) and their sum.
struct VorticityProfile {
  std::vector<double> omegas;
  double total = 0.0;

  std::size_t size() const { return omegas.size(); }
  double max_abs() const;
};

struct ZeroOptions {
  /// A zero is degenerate when |beta'(z)| < morse_tol * max |beta'|.
  double morse_tol = 1e-8;
};

double eval_form(const CircleForm& form, double t);

/// Sign-change scan at max(1024, 8 m) points, bisection to width 1e-13 and
/// one Newton polish per bracket.
ZeroSet find_zeros(const CircleForm& form, const ZeroOptions& options = {});

VorticityProfile partial_vorticities(const CircleForm& form, const ZeroSet& zeros);

/// Smallest even divisor l of k with omega_i = omega_{i+l} for all i, up to
/// rel_tol * max |omega_i|; k when there is no proper rotational symmetry.
int symmetry_step(const VorticityProfile& profile, double rel_tol = 1e-9);

/// integral of beta over [t_start, t], t_start <= t <= t_start + 2 pi.
double cumulative(const CircleForm& form, double t_start, double t);

/// The t in [seg_begin, seg_end] with cumulative(form, seg_begin, t) = s.
/// seg_end < seg_begin is read as wrapping through 2 pi. beta must keep one
/// sign inside the segment.
double invert_cumulative(const CircleForm& form, double seg_begin, double seg_end, double s);

/// Solves integral_{anchor}^{x} beta = target for x in [lo, hi], where beta
/// has the sign `direction` on (lo, hi) and anchor is lo or hi. Safeguarded
/// Newton; F is advanced by integrating over each step only.
double solve_cumulative(const CircleForm& form, double anchor, double lo, double hi, double target,
                        double guess, int direction);

}  // namespace vortexloop
