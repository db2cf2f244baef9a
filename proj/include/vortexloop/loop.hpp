#pragma once

#include <span>
#include <vector>

#include "vortexloop/circle_diffeo.hpp"
#include "vortexloop/circle_form.hpp"
#include "vortexloop/geometry.hpp"
#include "vortexloop/trig_series.hpp"

namespace vortexloop {

/// Closed, simple, positively oriented plane curve f: S^1 -> R^2 sampled at
/// s_j = 2 pi j / N. Each coordinate is the band-limited interpolant of its
/// samples. Validation (immersion, simplicity of the sample polyline,
/// counterclockwise orientation) runs once at construction.
class LoopEmbedding {
 public:
  explicit LoopEmbedding(std::vector<Point> samples);

  /// Skips validation. For intermediate states inside the library (flow time
  /// series, finite-difference stencils) whose validity is not in question.
  static LoopEmbedding unchecked(std::vector<Point> samples);

  template <class F>
  static LoopEmbedding from_function(F&& curve, int n) {
    std::vector<Point> pts(n);
    for (int j = 0; j < n; ++j) pts[j] = curve(kTwoPi * j / n);
    return LoopEmbedding(std::move(pts));
  }

  Point operator()(double s) const { return {x_.value(s), y_.value(s)}; }
  Point derivative(double s) const { return {x_.derivative(s), y_.derivative(s)}; }
  std::vector<Point> evaluate(std::span<const double> s) const;

  std::size_t size() const { return samples_.size(); }
  const std::vector<Point>& samples() const { return samples_; }
  const TrigSeries& x() const { return x_; }
  const TrigSeries& y() const { return y_; }

  LoopEmbedding resampled(int n) const;
  LoopEmbedding translated(Point offset) const;
  LoopEmbedding rotated(double angle, Point about = {}) const;
  LoopEmbedding scaled(double factor, Point about = {}) const;
  /// f o gamma sampled at n points (default: the current count).
  LoopEmbedding reparametrized(const CircleDiffeo& gamma, int n = 0) const;
  /// s -> f(-s); flips the orientation.
  LoopEmbedding reversed() const;

 private:
  struct Unchecked {};
  LoopEmbedding(std::vector<Point> samples, Unchecked);
  void validate() const;

  std::vector<Point> samples_;
  TrigSeries x_;
  TrigSeries y_;
};

/// A vortex loop (C, beta_C): the embedding together with the decoration
/// beta on the parameter circle (beta_C = f_* beta). Zeros and partial
/// vorticities are computed and validated once at construction.
class DecoratedLoop {
 public:
  DecoratedLoop(LoopEmbedding embedding, CircleForm decoration, const ZeroOptions& options = {});

  const LoopEmbedding& embedding() const { return embedding_; }
  const CircleForm& decoration() const { return decoration_; }
  const ZeroSet& zeros() const { return zeros_; }
  const VorticityProfile& profile() const { return profile_; }
  std::vector<Point> zero_images() const;

 private:
  LoopEmbedding embedding_;
  CircleForm decoration_;
  ZeroSet zeros_;
  VorticityProfile profile_;
};

struct OrbitInvariants {
  double area = 0.0;
  VorticityProfile profile;
  int step = 0;
};

/// Enclosed area of the interpolated curve, integral of (x dy - y dx) / 2,
/// evaluated exactly on the Fourier coefficients.
double enclosed_area(const LoopEmbedding& f);
/// Same quantity straight from samples, without validation.
double enclosed_area(std::span<const Point> samples);

OrbitInvariants orbit_invariants(const DecoratedLoop& loop, double rel_tol = 1e-9);

/// All j in [0, k) with |p_i - q_{i+j}| <= rel_tol * max|p| for every i.
std::vector<int> circular_match(const VorticityProfile& p, const VorticityProfile& q,
                                double rel_tol = 1e-9);

struct EquivalenceVerdict {
  bool equivalent = false;
  std::vector<int> shifts;
  double area_delta = 0.0;  // a2 - a1
};

EquivalenceVerdict compare_orbits(const DecoratedLoop& a, const DecoratedLoop& b,
                                  double rel_tol = 1e-6);
bool orbit_equivalent(const DecoratedLoop& a, const DecoratedLoop& b, double rel_tol = 1e-6);

struct IntertwinerOptions {
  double match_tol = 1e-6;
  int grid = 0;  // 0: 4 * max(N, model resolution)
  ZeroOptions zero_options;
};

/// Reparametrization psi of the parameter circle with psi_* model equal to
/// the target decoration, segment i of the model landing on segment
/// i + shift of the target.
CircleDiffeo intertwiner(const CircleForm& model, const DecoratedLoop& target, int shift,
                         const IntertwinerOptions& options = {});
CircleDiffeo intertwiner(const CircleForm& model, const CircleForm& target, int shift,
                         const IntertwinerOptions& options = {});

/// max over a uniform grid of |cumulative(model, t_i, t) -
/// cumulative(target, x_{i+shift}, psi(t))|.
double intertwiner_residual(const CircleForm& model, const CircleForm& target,
                            const CircleDiffeo& psi, int shift, int grid = 2048);

/// gamma_* beta = (beta o gamma^{-1}) (gamma^{-1})', as a sampled form.
CircleForm pushforward_form(const CircleDiffeo& gamma, const CircleForm& beta, int samples = 0);
/// gamma^* beta = (beta o gamma) gamma', as a sampled form.
CircleForm pullback_form(const CircleDiffeo& gamma, const CircleForm& beta, int samples = 0);

}  // namespace vortexloop
