#pragma once

#include <vector>

#include "vortexloop/circle_form.hpp"
#include "vortexloop/trig_series.hpp"

namespace vortexloop {

/// Orientation-preserving degree-one diffeomorphism of the circle, stored as
/// its lift gamma(t) = t + D(t) with D 2 pi-periodic. D is the band-limited
/// interpolant of M uniform samples, so gamma(t + 2 pi) = gamma(t) + 2 pi.
class CircleDiffeo {
 public:
  /// values[j] = gamma(2 pi j / M) on a lift: strictly increasing and
  /// values.back() < values.front() + 2 pi. Throws ValidationError when the
  /// interpolated map is not monotone.
  static CircleDiffeo from_samples(std::vector<double> values);

  template <class F>
  static CircleDiffeo from_function(F&& lift, int m) {
    std::vector<double> v(m);
    for (int j = 0; j < m; ++j) v[j] = lift(kTwoPi * j / m);
    return from_samples(std::move(v));
  }

  static CircleDiffeo identity(int m = 256);
  static CircleDiffeo rotation(double angle, int m = 256);

  double operator()(double t) const { return t + displacement_.value(t); }
  double derivative(double t) const { return 1.0 + displacement_.derivative(t); }
  /// The lifted preimage: t with gamma(t) = s.
  double inverse(double s) const;

  CircleDiffeo inverse_map() const;
  /// (*this) o inner, sampled on the finer of the two grids.
  CircleDiffeo compose(const CircleDiffeo& inner) const;
  CircleDiffeo power(int n) const;

  int sample_count() const { return static_cast<int>(values_.size()); }
  const std::vector<double>& values() const { return values_; }
  const TrigSeries& displacement() const { return displacement_; }
  double min_derivative() const { return min_derivative_; }

 private:
  std::vector<double> values_;
  TrigSeries displacement_;
  double displacement_lo_ = 0.0;
  double displacement_hi_ = 0.0;
  double min_derivative_ = 1.0;
};

/// Sup-norm distance between two circle maps on a uniform grid, measured
/// on the circle (differences reduced to (-pi, pi]).
double sup_distance(const CircleDiffeo& a, const CircleDiffeo& b, int grid = 4096);
double sup_distance_to_identity(const CircleDiffeo& a, int grid = 4096);

/// Everything the transport needs to know about one side.
struct FormData {
  const CircleForm* form;
  ZeroSet zeros;
  VorticityProfile profile;
};

FormData analyze_form(const CircleForm& form, const ZeroOptions& options = {});

/// Segment-by-segment measure transport: model segment i is mapped onto
/// target segment i + shift so that cumulative vorticities agree, with each
/// target segment's total rescaled to the model's. Solves from whichever
/// segment end is nearer in cumulative vorticity. Sampled on `grid` points.
CircleDiffeo cumulative_transport(const FormData& model, const FormData& target, int shift,
                                  int grid);

/// Canonical generator of the stabilizer of beta: gamma(t_i) = t_{i+l} and
/// gamma^* beta = beta. Throws NoSymmetry when l = k.
CircleDiffeo stabilizer_generator(const CircleForm& form, int ell, const ZeroOptions& options = {},
                                  int grid = 0);

}  // namespace vortexloop
