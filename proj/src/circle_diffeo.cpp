#include "vortexloop/circle_diffeo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "vortexloop/errors.hpp"

namespace vortexloop {

CircleDiffeo CircleDiffeo::from_samples(std::vector<double> values) {
  const std::size_t m = values.size();
  if (m < 4) throw std::invalid_argument("circle diffeomorphism needs at least 4 samples");
  for (std::size_t j = 0; j < m; ++j) {
    if (!std::isfinite(values[j])) throw ValidationError("circle map sample is not finite");
    if (j > 0 && !(values[j] > values[j - 1]))
      throw ValidationError("circle map samples are not strictly increasing at " +
                            std::to_string(j));
  }
  if (!(values.back() < values.front() + kTwoPi))
    throw ValidationError("circle map samples span more than one turn");

  CircleDiffeo g;
  std::vector<double> disp(m);
  for (std::size_t j = 0; j < m; ++j) disp[j] = values[j] - kTwoPi * j / m;
  g.displacement_ = TrigSeries::interpolate(disp).trimmed(1e-14);
  g.values_ = std::move(values);

  const int check = static_cast<int>(2 * m);
  const auto grid = uniform_grid(check);
  const auto d = g.displacement_.evaluate(grid);
  const auto dd = g.displacement_.derivative_series().evaluate(grid);
  g.displacement_lo_ = *std::min_element(d.begin(), d.end());
  g.displacement_hi_ = *std::max_element(d.begin(), d.end());
  g.min_derivative_ = 1.0 + *std::min_element(dd.begin(), dd.end());
  if (!(g.min_derivative_ > 0.0))
    throw ValidationError("interpolated circle map is not monotone (min derivative " +
                          std::to_string(g.min_derivative_) + ")");
  return g;
}

CircleDiffeo CircleDiffeo::identity(int m) { return rotation(0.0, m); }

CircleDiffeo CircleDiffeo::rotation(double angle, int m) {
  return from_function([angle](double t) { return t + angle; }, m);
}

double CircleDiffeo::inverse(double s) const {
  // gamma(t) - t lies in [lo, hi] (sampled on a fine grid, so pad a little).
  const double pad = 1e-6 * (1.0 + displacement_hi_ - displacement_lo_);
  double lo = s - displacement_hi_ - pad;
  double hi = s - displacement_lo_ + pad;
  while ((*this)(lo) > s) lo -= 0.1;
  while ((*this)(hi) < s) hi += 0.1;
  double t = std::clamp(s - displacement_.value(s), lo, hi);
  for (int iter = 0; iter < 100; ++iter) {
    const auto [d, dd] = displacement_.value_and_derivative(t);
    const double g = t + d - s;
    if (g == 0.0) break;
    if (g > 0.0)
      hi = t;
    else
      lo = t;
    double next = t - g / (1.0 + dd);
    const bool newton = next > lo && next < hi;
    if (!newton) next = 0.5 * (lo + hi);
    const double step = std::abs(next - t);
    t = next;
    if ((newton && step <= 1e-15 * (1.0 + std::abs(t))) || hi - lo <= 1e-15 * (1.0 + std::abs(t)))
      break;
  }
  return t;
}

CircleDiffeo CircleDiffeo::inverse_map() const {
  const int m = sample_count();
  std::vector<double> v(m);
#pragma omp parallel for schedule(static) if (m >= 256)
  for (int j = 0; j < m; ++j) v[j] = inverse(kTwoPi * j / m);
  return from_samples(std::move(v));
}

CircleDiffeo CircleDiffeo::compose(const CircleDiffeo& inner) const {
  const int m = std::max(sample_count(), inner.sample_count());
  std::vector<double> v(m);
#pragma omp parallel for schedule(static) if (m >= 256)
  for (int j = 0; j < m; ++j) v[j] = (*this)(inner(kTwoPi * j / m));
  return from_samples(std::move(v));
}

CircleDiffeo CircleDiffeo::power(int n) const {
  if (n < 0) return inverse_map().power(-n);
  CircleDiffeo out = identity(sample_count());
  for (int i = 0; i < n; ++i) out = compose(out);
  return out;
}

namespace {

double circular_difference(double a, double b) {
  double d = std::remainder(a - b, kTwoPi);
  if (d <= -std::numbers::pi) d += kTwoPi;
  return d;
}

}  // namespace

double sup_distance(const CircleDiffeo& a, const CircleDiffeo& b, int grid) {
  double worst = 0.0;
  for (int j = 0; j < grid; ++j) {
    const double t = kTwoPi * j / grid;
    worst = std::max(worst, std::abs(circular_difference(a(t), b(t))));
  }
  return worst;
}

double sup_distance_to_identity(const CircleDiffeo& a, int grid) {
  double worst = 0.0;
  for (int j = 0; j < grid; ++j) {
    const double t = kTwoPi * j / grid;
    worst = std::max(worst, std::abs(circular_difference(a(t), t)));
  }
  return worst;
}

FormData analyze_form(const CircleForm& form, const ZeroOptions& options) {
  FormData data{&form, find_zeros(form, options), {}};
  data.profile = partial_vorticities(form, data.zeros);
  return data;
}

CircleDiffeo cumulative_transport(const FormData& model, const FormData& target, int shift,
                                  int grid) {
  const auto& tz = model.zeros.zeros;
  const auto& xz = target.zeros.zeros;
  const int k = static_cast<int>(tz.size());
  if (k < 2 || static_cast<int>(xz.size()) != k)
    throw ProfileMismatch("transport needs matching nonempty zero sets");
  shift = ((shift % k) + k) % k;
  const CircleForm& mf = *model.form;
  const CircleForm& tf = *target.form;

  std::vector<double> image(grid);
#pragma omp parallel for schedule(dynamic, 16)
  for (int j = 0; j < grid; ++j) {
    double u = kTwoPi * j / grid;
    int i = static_cast<int>(std::upper_bound(tz.begin(), tz.end(), u) - tz.begin()) - 1;
    if (i < 0) {
      i = k - 1;
      u += kTwoPi;
    }
    const double a = tz[i];
    const double b = i + 1 < k ? tz[i + 1] : tz[0] + kTwoPi;
    const int s = (i + shift) % k;
    const double xa = xz[s];
    const double xb = s + 1 < k ? xz[s + 1] : xz[0] + kTwoPi;
    const double wm = model.profile.omegas[i];
    const double wt = target.profile.omegas[s];
    const double ratio = wt / wm;
    const int direction = wt > 0.0 ? 1 : -1;
    const double guess = xa + (u - a) / (b - a) * (xb - xa);
    const double head = mf.integral(a, u);
    if (std::abs(head) <= 0.5 * std::abs(wm)) {
      image[j] = solve_cumulative(tf, xa, xa, xb, ratio * head, guess, direction);
    } else {
      const double tail = mf.integral(u, b);
      image[j] = solve_cumulative(tf, xb, xa, xb, -ratio * tail, guess, direction);
    }
  }

  // Lift onto a single increasing branch.
  std::vector<double> lifted(grid);
  lifted[0] = image[0] - kTwoPi * std::floor(image[0] / kTwoPi);
  for (int j = 1; j < grid; ++j) {
    double v = image[j];
    v += kTwoPi * std::floor((lifted[j - 1] - v) / kTwoPi);
    while (v < lifted[j - 1]) v += kTwoPi;
    while (v >= lifted[j - 1] + kTwoPi) v -= kTwoPi;
    lifted[j] = v;
  }
  return CircleDiffeo::from_samples(std::move(lifted));
}

CircleDiffeo stabilizer_generator(const CircleForm& form, int ell, const ZeroOptions& options,
                                  int grid) {
  const auto data = analyze_form(form, options);
  const int k = static_cast<int>(data.zeros.size());
  if (ell <= 0 || k == 0 || k % ell != 0)
    throw std::invalid_argument("stabilizer_generator: step must divide the zero count");
  if (ell >= k) throw NoSymmetry("the vorticity profile has no proper rotational symmetry");
  if (grid <= 0) grid = 4 * std::max(256, form.resolution());
  return cumulative_transport(data, data, ell, grid);
}

}  // namespace vortexloop
