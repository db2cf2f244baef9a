#include "vortexloop/loop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "vortexloop/errors.hpp"
#include "vortexloop/quadrature.hpp"

namespace vortexloop {
namespace {

std::vector<double> xs_of(std::span<const Point> pts) {
  std::vector<double> v(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) v[i] = pts[i].x;
  return v;
}

std::vector<double> ys_of(std::span<const Point> pts) {
  std::vector<double> v(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) v[i] = pts[i].y;
  return v;
}

double fourier_area(const TrigSeries& x, const TrigSeries& y) {
  const auto& ax = x.cos_coeffs();
  const auto& bx = x.sin_coeffs();
  const auto& ay = y.cos_coeffs();
  const auto& by = y.sin_coeffs();
  const std::size_t m = std::min(ax.size(), ay.size());
  double sum = 0.0;
  for (std::size_t j = 0; j < m; ++j) sum += (j + 1.0) * (ax[j] * by[j] - bx[j] * ay[j]);
  return std::numbers::pi * sum;
}

std::string profile_str(const VorticityProfile& p) {
  std::ostringstream os;
  os.precision(10);
  os << "(";
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p.omegas[i];
  os << ")";
  return os.str();
}

int even_count(int n) { return n + (n % 2); }

}  // namespace

LoopEmbedding::LoopEmbedding(std::vector<Point> samples, Unchecked)
    : samples_(std::move(samples)),
      x_(TrigSeries::interpolate(xs_of(samples_))),
      y_(TrigSeries::interpolate(ys_of(samples_))) {}

LoopEmbedding::LoopEmbedding(std::vector<Point> samples) {
  if (samples.size() < 8) throw ValidationError("a loop needs at least 8 samples");
  for (const auto& p : samples)
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw ValidationError("loop sample is not finite");
  *this = LoopEmbedding(std::move(samples), Unchecked{});
  validate();
}

LoopEmbedding LoopEmbedding::unchecked(std::vector<Point> samples) {
  return LoopEmbedding(std::move(samples), Unchecked{});
}

void LoopEmbedding::validate() const {
  const std::size_t n = samples_.size();
  double diameter = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    diameter = std::max(diameter, norm(samples_[i] - samples_[0]));
  if (!(diameter > 0.0)) throw ValidationError("loop samples are all equal");

  for (std::size_t i = 0; i < n; ++i) {
    if (samples_[i] == samples_[(i + 1) % n])
      throw ValidationError("samples " + std::to_string(i) + " and " +
                            std::to_string((i + 1) % n) + " coincide");
  }
  const auto grid = uniform_grid(static_cast<int>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (norm(derivative(grid[i])) <= 1e-9 * diameter)
      throw ValidationError("loop is not immersed at sample " + std::to_string(i));
  }
  if (const auto hit = find_self_intersection(samples_)) {
    throw ValidationError("loop polyline self-intersects (edges " + std::to_string(hit->first) +
                          " and " + std::to_string(hit->second) + ")");
  }
  if (!(shoelace_area(samples_) > 0.0))
    throw OrientationError("loop is negatively oriented (clockwise)");
}

std::vector<Point> LoopEmbedding::evaluate(std::span<const double> s) const {
  const auto xs = x_.evaluate(s);
  const auto ys = y_.evaluate(s);
  std::vector<Point> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = {xs[i], ys[i]};
  return out;
}

LoopEmbedding LoopEmbedding::resampled(int n) const {
  return LoopEmbedding(evaluate(uniform_grid(n)));
}

LoopEmbedding LoopEmbedding::translated(Point offset) const {
  auto pts = samples_;
  for (auto& p : pts) p += offset;
  return LoopEmbedding(std::move(pts));
}

LoopEmbedding LoopEmbedding::rotated(double angle, Point about) const {
  const double c = std::cos(angle), s = std::sin(angle);
  auto pts = samples_;
  for (auto& p : pts) {
    const Point d = p - about;
    p = about + Point{c * d.x - s * d.y, s * d.x + c * d.y};
  }
  return LoopEmbedding(std::move(pts));
}

LoopEmbedding LoopEmbedding::scaled(double factor, Point about) const {
  auto pts = samples_;
  for (auto& p : pts) p = about + factor * (p - about);
  return LoopEmbedding(std::move(pts));
}

LoopEmbedding LoopEmbedding::reparametrized(const CircleDiffeo& gamma, int n) const {
  if (n <= 0) n = static_cast<int>(size());
  auto grid = uniform_grid(n);
  for (auto& t : grid) t = gamma(t);
  return LoopEmbedding(evaluate(grid));
}

LoopEmbedding LoopEmbedding::reversed() const {
  const std::size_t n = samples_.size();
  std::vector<Point> pts(n);
  for (std::size_t j = 0; j < n; ++j) pts[j] = samples_[(n - j) % n];
  return LoopEmbedding(std::move(pts));
}

DecoratedLoop::DecoratedLoop(LoopEmbedding embedding, CircleForm decoration,
                             const ZeroOptions& options)
    : embedding_(std::move(embedding)), decoration_(std::move(decoration)) {
  zeros_ = find_zeros(decoration_, options);
  if (zeros_.size() < 2)
    throw MorseViolation("the decoration has no zeros; a vortex loop needs k >= 2");
  profile_ = partial_vorticities(decoration_, zeros_);
  const auto images = zero_images();
  double diameter = 0.0;
  for (const auto& p : embedding_.samples())
    diameter = std::max(diameter, norm(p - embedding_.samples().front()));
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j)
      if (norm(images[i] - images[j]) <= 1e-12 * diameter)
        throw ValidationError("zero images " + std::to_string(i) + " and " + std::to_string(j) +
                              " coincide on the curve");
}

std::vector<Point> DecoratedLoop::zero_images() const {
  return embedding_.evaluate(zeros_.zeros);
}

double enclosed_area(const LoopEmbedding& f) { return fourier_area(f.x(), f.y()); }

double enclosed_area(std::span<const Point> samples) {
  return fourier_area(TrigSeries::interpolate(xs_of(samples)),
                      TrigSeries::interpolate(ys_of(samples)));
}

OrbitInvariants orbit_invariants(const DecoratedLoop& loop, double rel_tol) {
  OrbitInvariants inv;
  inv.area = enclosed_area(loop.embedding());
  inv.profile = loop.profile();
  inv.step = symmetry_step(inv.profile, rel_tol);
  return inv;
}

std::vector<int> circular_match(const VorticityProfile& p, const VorticityProfile& q,
                                double rel_tol) {
  std::vector<int> shifts;
  const std::size_t k = p.size();
  if (k == 0 || q.size() != k) return shifts;
  const double tol = rel_tol * p.max_abs();
  for (std::size_t j = 0; j < k; ++j) {
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i)
      ok = std::abs(p.omegas[i] - q.omegas[(i + j) % k]) <= tol;
    if (ok) shifts.push_back(static_cast<int>(j));
  }
  return shifts;
}

EquivalenceVerdict compare_orbits(const DecoratedLoop& a, const DecoratedLoop& b, double rel_tol) {
  EquivalenceVerdict v;
  const double area_a = enclosed_area(a.embedding());
  const double area_b = enclosed_area(b.embedding());
  v.area_delta = area_b - area_a;
  v.shifts = circular_match(a.profile(), b.profile(), rel_tol);
  v.equivalent = std::abs(v.area_delta) <= rel_tol * area_a && !v.shifts.empty();
  return v;
}

bool orbit_equivalent(const DecoratedLoop& a, const DecoratedLoop& b, double rel_tol) {
  return compare_orbits(a, b, rel_tol).equivalent;
}

namespace {

CircleDiffeo intertwine_data(const FormData& model, const FormData& target, int shift,
                             const IntertwinerOptions& options, int grid) {
  const auto shifts = circular_match(model.profile, target.profile, options.match_tol);
  const int k = static_cast<int>(model.profile.size());
  const int wanted = k > 0 ? ((shift % k) + k) % k : shift;
  if (std::find(shifts.begin(), shifts.end(), wanted) == shifts.end()) {
    throw ProfileMismatch("model profile " + profile_str(model.profile) +
                          " does not match target profile " + profile_str(target.profile) +
                          " at shift " + std::to_string(shift));
  }
  return cumulative_transport(model, target, wanted, grid);
}

}  // namespace

CircleDiffeo intertwiner(const CircleForm& model, const DecoratedLoop& target, int shift,
                         const IntertwinerOptions& options) {
  const FormData model_data = analyze_form(model, options.zero_options);
  const FormData target_data{&target.decoration(), target.zeros(), target.profile()};
  const int grid = options.grid > 0
                       ? options.grid
                       : 4 * std::max(static_cast<int>(target.embedding().size()),
                                      model.resolution());
  return intertwine_data(model_data, target_data, shift, options, even_count(grid));
}

CircleDiffeo intertwiner(const CircleForm& model, const CircleForm& target, int shift,
                         const IntertwinerOptions& options) {
  const FormData model_data = analyze_form(model, options.zero_options);
  const FormData target_data = analyze_form(target, options.zero_options);
  const int grid = options.grid > 0
                       ? options.grid
                       : 4 * std::max({256, target.resolution(), model.resolution()});
  return intertwine_data(model_data, target_data, shift, options, even_count(grid));
}

double intertwiner_residual(const CircleForm& model, const CircleForm& target,
                            const CircleDiffeo& psi, int shift, int grid) {
  const auto m = analyze_form(model);
  const auto t = analyze_form(target);
  const auto& tz = m.zeros.zeros;
  const auto& xz = t.zeros.zeros;
  const int k = static_cast<int>(tz.size());
  if (k == 0 || static_cast<int>(xz.size()) != k) return std::numeric_limits<double>::infinity();
  shift = ((shift % k) + k) % k;
  std::vector<double> err(grid);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < grid; ++j) {
    double u = kTwoPi * j / grid;
    int i = static_cast<int>(std::upper_bound(tz.begin(), tz.end(), u) - tz.begin()) - 1;
    if (i < 0) {
      i = k - 1;
      u += kTwoPi;
    }
    const int s = (i + shift) % k;
    const double y = psi(u);
    double anchor = xz[s];
    // psi(t_i) lands on x_{i+shift} modulo 2 pi; pick the lift just below y.
    anchor += kTwoPi * std::floor((y - anchor) / kTwoPi);
    if (y - anchor > kTwoPi - 1e-9) anchor += kTwoPi;
    const double lhs = model.integral(tz[i], u);
    const double rhs = target.integral(anchor, y);
    err[j] = std::abs(lhs - rhs);
  }
  return *std::max_element(err.begin(), err.end());
}

CircleForm pushforward_form(const CircleDiffeo& gamma, const CircleForm& beta, int samples) {
  if (samples <= 0) samples = std::max({256, gamma.sample_count(), 4 * beta.resolution()});
  samples = even_count(samples);
  std::vector<double> v(samples);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < samples; ++j) {
    const double t = gamma.inverse(kTwoPi * j / samples);
    v[j] = beta(t) / gamma.derivative(t);
  }
  return CircleForm::from_samples(std::move(v));
}

CircleForm pullback_form(const CircleDiffeo& gamma, const CircleForm& beta, int samples) {
  if (samples <= 0) samples = std::max({256, gamma.sample_count(), 4 * beta.resolution()});
  samples = even_count(samples);
  std::vector<double> v(samples);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < samples; ++j) {
    const double s = kTwoPi * j / samples;
    v[j] = beta(gamma(s)) * gamma.derivative(s);
  }
  return CircleForm::from_samples(std::move(v));
}

}  // namespace vortexloop
