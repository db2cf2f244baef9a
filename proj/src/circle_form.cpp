#include "vortexloop/circle_form.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "vortexloop/errors.hpp"

namespace vortexloop {
namespace {

constexpr double kTrimTol = 1e-15;
constexpr double kBisectionWidth = 1e-13;

std::string angle_str(double t) {
  std::ostringstream os;
  os.precision(12);
  os << t;
  return os.str();
}

bool nonnegative(double v) { return v >= 0.0; }

// Refines a sign change of beta inside [lo, hi].
double refine_zero(const CircleForm& form, double lo, double hi, double f_lo) {
  const bool lo_sign = nonnegative(f_lo);
  while (hi - lo > kBisectionWidth) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (nonnegative(form(mid)) == lo_sign)
      lo = mid;
    else
      hi = mid;
  }
  double z = 0.5 * (lo + hi);
  const auto [v, d] = form.value_and_derivative(z);
  if (d != 0.0) {
    const double polished = z - v / d;
    if (std::abs(polished - z) < 1e-12) z = polished;
  }
  return z;
}

// Locates the critical point of beta inside [a, b] by bisection on beta'.
double critical_point(const TrigSeries& deriv, double a, double b, double da) {
  const bool a_sign = nonnegative(da);
  while (b - a > 1e-14) {
    const double mid = 0.5 * (a + b);
    if (nonnegative(deriv.value(mid)) == a_sign)
      a = mid;
    else
      b = mid;
  }
  return 0.5 * (a + b);
}

}  // namespace

CircleForm CircleForm::trig(double a0, std::vector<double> cos_coeffs,
                            std::vector<double> sin_coeffs) {
  return from_series(TrigSeries(a0, std::move(cos_coeffs), std::move(sin_coeffs)));
}

CircleForm CircleForm::from_series(TrigSeries series) {
  CircleForm f;
  f.kind_ = Kind::Trig;
  f.set_series(std::move(series));
  return f;
}

CircleForm CircleForm::from_samples(std::vector<double> values) {
  if (values.size() < 3) throw std::invalid_argument("sampled form needs at least 3 samples");
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("sampled form has a non-finite value");
  CircleForm f;
  f.kind_ = Kind::Samples;
  f.set_series(TrigSeries::interpolate(values).trimmed(kTrimTol));
  f.samples_ = std::move(values);
  return f;
}

CircleForm CircleForm::volume(double density) { return trig(density, {}, {}); }

void CircleForm::set_series(TrigSeries series) {
  series_ = std::move(series);
  std::vector<double> c(series_.degree()), s(series_.degree());
  for (int j = 0; j < series_.degree(); ++j) {
    c[j] = -series_.sin_coeffs()[j] / (j + 1);
    s[j] = series_.cos_coeffs()[j] / (j + 1);
  }
  primitive_ = TrigSeries(0.0, std::move(c), std::move(s));
}

double CircleForm::quadrature_integral(double a, double b) const {
  return integrate([this](double t) { return series_.value(t); }, a, b);
}

int CircleForm::resolution() const {
  if (kind_ == Kind::Samples) return static_cast<int>(samples_.size());
  return 2 * series_.degree() + 1;
}

CircleForm CircleForm::reversed() const {
  std::vector<double> c = series_.cos_coeffs();
  std::vector<double> s = series_.sin_coeffs();
  for (auto& v : c) v = -v;
  auto out = from_series(TrigSeries(-series_.a0(), std::move(c), std::move(s)));
  if (kind_ == Kind::Samples) {
    const std::size_t n = samples_.size();
    std::vector<double> r(n);
    for (std::size_t j = 0; j < n; ++j) r[j] = -samples_[(n - j) % n];
    out.kind_ = Kind::Samples;
    out.samples_ = std::move(r);
  }
  return out;
}

double VorticityProfile::max_abs() const {
  double m = 0.0;
  for (double w : omegas) m = std::max(m, std::abs(w));
  return m;
}

double eval_form(const CircleForm& form, double t) { return form(std::fmod(t, kTwoPi)); }

ZeroSet find_zeros(const CircleForm& form, const ZeroOptions& options) {
  const int n = std::max(1024, 8 * form.degree());
  const auto grid = uniform_grid(n);
  const auto values = form.series().evaluate(grid);
  const auto deriv_series = form.series().derivative_series();
  const auto derivs = deriv_series.evaluate(grid);

  double max_abs = 0.0, max_deriv = 0.0;
  for (int j = 0; j < n; ++j) {
    max_abs = std::max(max_abs, std::abs(values[j]));
    max_deriv = std::max(max_deriv, std::abs(derivs[j]));
  }
  if (max_abs == 0.0) throw MorseViolation("vorticity density is identically zero");

  auto t_at = [&](int j) { return j == n ? kTwoPi : grid[j]; };
  auto sign_change = [&](int j) {
    return nonnegative(values[j]) != nonnegative(values[(j + 1) % n]);
  };

  std::vector<double> zeros;
  for (int j = 0; j < n; ++j) {
    if (!sign_change(j)) continue;
    double z = refine_zero(form, t_at(j), t_at(j + 1), values[j]);
    if (z >= kTwoPi - kBisectionWidth) z = std::max(0.0, z - kTwoPi);
    zeros.push_back(z);
  }

  // Local minima of |beta| without a sign change: either a grazing
  // (even-order) zero or two zeros closer than the scan spacing.
  for (int j = 0; j < n; ++j) {
    const int prev = (j + n - 1) % n;
    const int next = (j + 1) % n;
    if (sign_change(prev) || sign_change(j)) continue;
    const double a = std::abs(values[j]);
    if (a > std::abs(values[prev]) || a > std::abs(values[next])) continue;
    if (a > 1e-3 * max_abs) continue;
    const double lo = grid[j] - kTwoPi / n;
    const double hi = grid[j] + kTwoPi / n;
    const double d_lo = deriv_series.value(lo);
    const double d_hi = deriv_series.value(hi);
    if (nonnegative(d_lo) == nonnegative(d_hi)) continue;
    const double c = critical_point(deriv_series, lo, hi, d_lo);
    const double v = form(c);
    if (std::abs(v) <= 1e-12 * max_abs || nonnegative(v) != nonnegative(values[j])) {
      throw MorseViolation("degenerate or unresolved zero cluster near t=" +
                           angle_str(std::fmod(c + kTwoPi, kTwoPi)) +
                           " (|beta| there is " + angle_str(std::abs(v)) + ")");
    }
  }

  std::sort(zeros.begin(), zeros.end());
  std::vector<double> unique;
  for (double z : zeros)
    if (unique.empty() || z - unique.back() > 1e-11) unique.push_back(z);
  if (unique.size() > 1 && unique.front() + kTwoPi - unique.back() <= 1e-11) unique.pop_back();

  ZeroSet out;
  out.zeros = std::move(unique);
  out.derivatives.reserve(out.zeros.size());
  for (double z : out.zeros) out.derivatives.push_back(form.derivative(z));

  if (out.zeros.size() % 2 != 0)
    throw OddZeroCount("refinement produced " + std::to_string(out.zeros.size()) + " zeros");

  for (std::size_t i = 0; i < out.size(); ++i) {
    if (std::abs(out.derivatives[i]) < options.morse_tol * max_deriv) {
      throw MorseViolation("degenerate zero at t=" + angle_str(out.zeros[i]) +
                           " with |beta'|=" + angle_str(std::abs(out.derivatives[i])) +
                           " below " + angle_str(options.morse_tol * max_deriv));
    }
  }
  const std::size_t k = out.size();
  for (std::size_t i = 0; k > 1 && i < k; ++i) {
    if (nonnegative(out.derivatives[i]) == nonnegative(out.derivatives[(i + 1) % k])) {
      throw MorseViolation("zero cluster near t=" + angle_str(out.zeros[i]) +
                           " cannot be separated at the scan resolution");
    }
  }
  return out;
}

VorticityProfile partial_vorticities(const CircleForm& form, const ZeroSet& zeros) {
  VorticityProfile profile;
  const std::size_t k = zeros.size();
  if (k == 0) {
    profile.total = form.total();
    return profile;
  }
  profile.omegas.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double a = zeros.zeros[i];
    const double b = i + 1 < k ? zeros.zeros[i + 1] : zeros.zeros[0] + kTwoPi;
    profile.omegas[i] = form.quadrature_integral(a, b);
  }
  double scale = 0.0;
  for (double w : profile.omegas) {
    scale += std::abs(w);
    profile.total += w;
  }
  for (std::size_t i = 0; i < k; ++i) {
    const double w = profile.omegas[i];
    const double next = profile.omegas[(i + 1) % k];
    if (std::abs(w) <= 1e-13 * scale)
      throw AlternationViolation("partial vorticity " + std::to_string(i) + " vanishes");
    if (k > 1 && w * next >= 0.0)
      throw AlternationViolation("partial vorticities " + std::to_string(i) + " and " +
                                 std::to_string((i + 1) % k) + " share a sign");
  }
  return profile;
}

int symmetry_step(const VorticityProfile& profile, double rel_tol) {
  const int k = static_cast<int>(profile.size());
  if (k == 0) return 0;
  const double tol = rel_tol * profile.max_abs();
  for (int ell = 2; ell < k; ell += 2) {
    if (k % ell != 0) continue;
    bool ok = true;
    for (int i = 0; i < k && ok; ++i)
      ok = std::abs(profile.omegas[i] - profile.omegas[(i + ell) % k]) <= tol;
    if (ok) return ell;
  }
  return k;
}

double cumulative(const CircleForm& form, double t_start, double t) {
  if (t < t_start - 1e-12 || t > t_start + kTwoPi + 1e-12)
    throw OutOfRange("cumulative: t must lie in [t_start, t_start + 2 pi]");
  return form.integral(t_start, t);
}

double solve_cumulative(const CircleForm& form, double anchor, double lo, double hi, double target,
                        double guess, int direction) {
  double x = std::clamp(guess, lo, hi);
  double fx = form.integral(anchor, x) - target;
  // Anchored at a zero of beta, |F| grows quadratically away from the anchor
  // and Newton on F only converges linearly; Newton on sqrt|F| does not.
  const double away = anchor == lo ? 1.0 : -1.0;
  const bool root_mode = std::abs(form(anchor)) <= 1e-3 * std::abs(form(x));
  const double root_target = std::sqrt(std::abs(target));
  for (int iter = 0; iter < 200; ++iter) {
    if (fx == 0.0) break;
    if (direction * fx > 0.0)
      hi = x;
    else
      lo = x;
    if (hi - lo <= 4e-16 * (1.0 + std::abs(x))) break;
    const double v = form(x);
    double next = x;
    bool proposed = false;
    if (root_mode) {
      const double g = std::sqrt(std::abs(fx + target));
      if (v != 0.0 && g > 0.0) {
        next = x - away * (g - root_target) * 2.0 * g / std::abs(v);
        proposed = true;
      }
    } else if (v != 0.0) {
      next = x - fx / v;
      proposed = true;
    }
    if (proposed && std::abs(next - x) <= 1e-14 * (1.0 + std::abs(x))) {
      x = std::clamp(next, lo, hi);
      break;
    }
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    fx += form.integral(x, next);
    x = next;
  }
  return x;
}

double invert_cumulative(const CircleForm& form, double seg_begin, double seg_end, double s) {
  if (seg_end <= seg_begin) seg_end += kTwoPi;
  const double omega = form.integral(seg_begin, seg_end);
  const double tol = 1e-12 * std::abs(omega) + 1e-15;
  const double lo_val = std::min(0.0, omega);
  const double hi_val = std::max(0.0, omega);
  if (s < lo_val - tol || s > hi_val + tol) {
    throw OutOfRange("invert_cumulative: s=" + angle_str(s) + " outside [" + angle_str(lo_val) +
                     ", " + angle_str(hi_val) + "]");
  }
  s = std::clamp(s, lo_val, hi_val);
  if (omega == 0.0) return seg_begin;
  const int direction = omega > 0.0 ? 1 : -1;
  const double frac = s / omega;
  const double guess = seg_begin + frac * (seg_end - seg_begin);
  if (frac <= 0.5) return solve_cumulative(form, seg_begin, seg_begin, seg_end, s, guess, direction);
  return solve_cumulative(form, seg_end, seg_begin, seg_end, -(omega - s), guess, direction);
}

}  // namespace vortexloop
