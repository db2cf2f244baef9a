#include "vortexloop/trig_series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vortexloop/kernels.hpp"
#include "vortexloop/quadrature.hpp"

namespace vortexloop {

TrigSeries::TrigSeries(double a0, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs)
    : a0_(a0), cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
  const std::size_t m = std::max(cos_.size(), sin_.size());
  cos_.resize(m, 0.0);
  sin_.resize(m, 0.0);
}

TrigSeries TrigSeries::interpolate(std::span<const double> samples) {
  if (samples.empty()) throw std::invalid_argument("TrigSeries::interpolate: no samples");
  TrigSeries out;
  out.a0_ = kernels::dft_coefficients(samples, out.cos_, out.sin_);
  return out;
}

double TrigSeries::value(double t) const {
  return kernels::trig_value(a0_, cos_, sin_, t);
}

std::pair<double, double> TrigSeries::value_and_derivative(double t) const {
  return kernels::trig_value_and_derivative(a0_, cos_, sin_, t);
}

double TrigSeries::derivative(double t) const { return value_and_derivative(t).second; }

double TrigSeries::second_derivative(double t) const {
  return derivative_series().derivative(t);
}

void TrigSeries::evaluate(std::span<const double> t, std::span<double> out) const {
  if (t.size() != out.size()) throw std::invalid_argument("TrigSeries::evaluate: size mismatch");
  kernels::evaluate_trig(a0_, cos_, sin_, t, out);
}

std::vector<double> TrigSeries::evaluate(std::span<const double> t) const {
  std::vector<double> out(t.size());
  evaluate(t, out);
  return out;
}

double TrigSeries::max_abs_coefficient() const {
  double m = std::abs(a0_);
  for (std::size_t j = 0; j < cos_.size(); ++j)
    m = std::max({m, std::abs(cos_[j]), std::abs(sin_[j])});
  return m;
}

TrigSeries TrigSeries::derivative_series() const {
  std::vector<double> c(cos_.size()), s(sin_.size());
  for (std::size_t j = 0; j < cos_.size(); ++j) {
    const double k = static_cast<double>(j + 1);
    c[j] = k * sin_[j];
    s[j] = -k * cos_[j];
  }
  return TrigSeries(0.0, std::move(c), std::move(s));
}

TrigSeries TrigSeries::trimmed(double rel_tol) const {
  const double cutoff = rel_tol * max_abs_coefficient();
  std::size_t m = cos_.size();
  while (m > 0 && std::abs(cos_[m - 1]) <= cutoff && std::abs(sin_[m - 1]) <= cutoff) --m;
  return TrigSeries(a0_, std::vector<double>(cos_.begin(), cos_.begin() + m),
                    std::vector<double>(sin_.begin(), sin_.begin() + m));
}

TrigSeries& TrigSeries::operator+=(const TrigSeries& other) {
  a0_ += other.a0_;
  const std::size_t m = std::max(cos_.size(), other.cos_.size());
  cos_.resize(m, 0.0);
  sin_.resize(m, 0.0);
  for (std::size_t j = 0; j < other.cos_.size(); ++j) {
    cos_[j] += other.cos_[j];
    sin_[j] += other.sin_[j];
  }
  return *this;
}

TrigSeries& TrigSeries::operator*=(double s) {
  a0_ *= s;
  for (auto& c : cos_) c *= s;
  for (auto& c : sin_) c *= s;
  return *this;
}

double period_integral_of_product(std::span<const TrigSeries* const> factors) {
  int degree = 0;
  for (const auto* f : factors) degree += f->degree();
  const int n = degree + 1;
  const auto grid = uniform_grid(n);
  std::vector<double> product(n, 1.0);
  std::vector<double> values(n);
  for (const auto* f : factors) {
    f->evaluate(grid, values);
    for (int j = 0; j < n; ++j) product[j] *= values[j];
  }
  double sum = 0.0;
  for (double v : product) sum += v;
  return kTwoPi * sum / n;
}

}  // namespace vortexloop
