#include "vortexloop/symplectic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "vortexloop/errors.hpp"
#include "vortexloop/quadrature.hpp"

namespace vortexloop {
namespace {

struct Components {
  TrigSeries x;
  TrigSeries y;
};

Components interpolate_field(const TangentField& u) {
  std::vector<double> xs(u.size()), ys(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    xs[i] = u[i].x;
    ys[i] = u[i].y;
  }
  return {TrigSeries::interpolate(xs), TrigSeries::interpolate(ys)};
}

double product_integral(const TrigSeries& a, const TrigSeries& b, const TrigSeries& c) {
  const std::array<const TrigSeries*, 3> f{&a, &b, &c};
  return period_integral_of_product(f);
}

double product_integral(const TrigSeries& a, const TrigSeries& b) {
  const std::array<const TrigSeries*, 2> f{&a, &b};
  return period_integral_of_product(f);
}

void check_size(const LoopEmbedding& f, const TangentField& u) {
  if (u.size() != f.size())
    throw std::invalid_argument("tangent field has " + std::to_string(u.size()) +
                                " vectors, embedding has " + std::to_string(f.size()) +
                                " samples");
}

/// Integral of u . n over the circle.
double normal_flux(const LoopEmbedding& f, const Components& u) {
  const auto dx = f.x().derivative_series();
  const auto dy = f.y().derivative_series();
  return product_integral(u.x, dy) - product_integral(u.y, dx);
}

struct Frame {
  std::vector<Point> tangent;  // f'
  std::vector<double> speed2;  // |f'|^2
};

Frame frame_on(const LoopEmbedding& f, std::span<const double> grid) {
  const auto dx = f.x().derivative_series().evaluate(grid);
  const auto dy = f.y().derivative_series().evaluate(grid);
  Frame fr;
  fr.tangent.resize(grid.size());
  fr.speed2.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    fr.tangent[i] = {dx[i], dy[i]};
    fr.speed2[i] = dx[i] * dx[i] + dy[i] * dy[i];
  }
  return fr;
}

Point normal_of(Point tangent) { return {tangent.y, -tangent.x}; }

int split_grid_for(const LoopEmbedding& f, int grid) {
  const int n = static_cast<int>(f.size());
  if (grid <= 0) return 2 * n;
  if (grid % n != 0)
    throw std::invalid_argument("split grid must be a multiple of the sample count");
  return grid;
}

SplitTangent split_raw(const LoopEmbedding& f, const TangentField& u, int q) {
  const auto grid = uniform_grid(q);
  const auto comps = interpolate_field(u);
  const auto ux = comps.x.evaluate(grid);
  const auto uy = comps.y.evaluate(grid);
  const auto fr = frame_on(f, grid);
  SplitTangent s;
  s.rho.resize(q);
  s.lambda.resize(q);
  for (int j = 0; j < q; ++j) {
    const Point uj{ux[j], uy[j]};
    s.rho[j] = dot(uj, normal_of(fr.tangent[j]));
    s.lambda[j] = dot(uj, fr.tangent[j]) / fr.speed2[j];
  }
  return s;
}

double max_norm(const TangentField& u) {
  double m = 0.0;
  for (const auto& p : u) m = std::max(m, norm(p));
  return m;
}

/// Smallest grid that is a multiple of N and integrates degree N + deg beta exactly.
int exact_split_grid(const LoopEmbedding& f, const CircleForm& beta) {
  const int n = static_cast<int>(f.size());
  const int need = n + beta.degree() + 1;
  return n * std::max(2, (need + n - 1) / n);
}

double split_omega(const SplitTangent& a, const SplitTangent& b, const CircleForm& beta) {
  return pairing(a.rho, b.lambda, beta) - pairing(b.rho, a.lambda, beta);
}

LoopEmbedding perturbed(const LoopEmbedding& f, const TangentField& u, double h) {
  auto pts = f.samples();
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] += h * u[i];
  return LoopEmbedding::unchecked(std::move(pts));
}

/// Rows: real Fourier basis on the grid, L2-normalized on [0, 2 pi].
Eigen::MatrixXd fourier_basis(int degree, bool zero_mean, std::span<const double> grid) {
  const int rows = 2 * degree + (zero_mean ? 0 : 1);
  Eigen::MatrixXd b(rows, static_cast<Eigen::Index>(grid.size()));
  const double c0 = 1.0 / std::sqrt(kTwoPi);
  const double cj = 1.0 / std::sqrt(std::numbers::pi);
  for (std::size_t q = 0; q < grid.size(); ++q) {
    int r = 0;
    if (!zero_mean) b(r++, q) = c0;
    for (int j = 1; j <= degree; ++j) {
      b(r++, q) = cj * std::cos(j * grid[q]);
      b(r++, q) = cj * std::sin(j * grid[q]);
    }
  }
  return b;
}

/// Smallest singular value of m read as a map on its columns: zero when
/// there are more columns than rows.
double column_sigma_min(const Eigen::MatrixXd& m, double* sigma_max) {
  Eigen::MatrixXd a = m;
  if (a.rows() < a.cols()) {
    const auto r = a.rows();
    a.conservativeResize(a.cols(), Eigen::NoChange);
    a.bottomRows(a.rows() - r).setZero();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& s = svd.singularValues();
  if (sigma_max) *sigma_max = s.size() ? s(0) : 0.0;
  return s.size() ? s(s.size() - 1) : 0.0;
}

}  // namespace

double constraint_violation(const LoopEmbedding& f, const TangentField& u) {
  check_size(f, u);
  const double scale = max_norm(u);
  if (scale == 0.0) return 0.0;
  const auto grid = uniform_grid(static_cast<int>(f.size()));
  const auto fr = frame_on(f, grid);
  const double speed = std::sqrt(*std::max_element(fr.speed2.begin(), fr.speed2.end()));
  const double mean = normal_flux(f, interpolate_field(u)) / kTwoPi;
  return std::abs(mean) / (scale * speed);
}

TangentField project_to_constraint(const LoopEmbedding& f, const TangentField& u,
                                   const ConstraintOptions& options) {
  const double violation = constraint_violation(f, u);
  if (violation > options.reject_above)
    throw ConstraintViolation("area constraint violated by " + std::to_string(violation) +
                              " (limit " + std::to_string(options.reject_above) + ")");
  if (violation == 0.0) return u;
  const double mean = normal_flux(f, interpolate_field(u)) / kTwoPi;
  const auto grid = uniform_grid(static_cast<int>(f.size()));
  const auto fr = frame_on(f, grid);
  TangentField out = u;
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] -= (mean / fr.speed2[j]) * normal_of(fr.tangent[j]);
  return out;
}

SplitTangent tangent_decompose(const LoopEmbedding& f, const TangentField& u, int grid,
                               const ConstraintOptions& options) {
  const int q = split_grid_for(f, grid);
  return split_raw(f, project_to_constraint(f, u, options), q);
}

TangentField tangent_compose(const LoopEmbedding& f, const SplitTangent& split) {
  const int n = static_cast<int>(f.size());
  const int q = static_cast<int>(split.rho.size());
  if (split.lambda.size() != split.rho.size() || q % n != 0)
    throw std::invalid_argument("split grid must be a multiple of the sample count");
  const int stride = q / n;
  const auto grid = uniform_grid(n);
  const auto fr = frame_on(f, grid);
  TangentField u(n);
  for (int j = 0; j < n; ++j) {
    const double rho = split.rho[j * stride];
    const double lambda = split.lambda[j * stride];
    u[j] = (rho / fr.speed2[j]) * normal_of(fr.tangent[j]) + lambda * fr.tangent[j];
  }
  return u;
}

TangentField tangent_compose(const LoopEmbedding& f, const TrigSeries& rho,
                             const TrigSeries& lambda) {
  const auto grid = uniform_grid(static_cast<int>(f.size()));
  SplitTangent s{rho.evaluate(grid), lambda.evaluate(grid)};
  return tangent_compose(f, s);
}

double pairing(const TrigSeries& rho, const TrigSeries& lambda, const CircleForm& beta) {
  return product_integral(rho, lambda, beta.series());
}

double pairing(std::span<const double> rho, std::span<const double> lambda,
               const CircleForm& beta) {
  if (rho.size() != lambda.size() || rho.empty())
    throw std::invalid_argument("pairing: rho and lambda must share a nonempty grid");
  const int q = static_cast<int>(rho.size());
  const auto b = beta.series().evaluate(uniform_grid(q));
  double sum = 0.0;
  for (int j = 0; j < q; ++j) sum += rho[j] * lambda[j] * b[j];
  return kTwoPi * sum / q;
}

PairingReport pairing_matrix(const CircleForm& beta, int n) {
  if (n < 2) throw std::invalid_argument("pairing_matrix: basis size must be at least 2");
  const int d = beta.degree();
  const int q = 4 * (n + d) + 8;
  const auto grid = uniform_grid(q);
  const auto bvals = beta.series().evaluate(grid);
  Eigen::VectorXd weight(q);
  for (int j = 0; j < q; ++j) weight(j) = bvals[j] * kTwoPi / q;

  const auto gram = [&](int rho_deg, int lambda_deg) {
    const Eigen::MatrixXd r = fourier_basis(rho_deg, true, grid);
    const Eigen::MatrixXd l = fourier_basis(lambda_deg, false, grid);
    return Eigen::MatrixXd(r * weight.asDiagonal() * l.transpose());
  };

  PairingReport rep;
  rep.lambda_side = gram(n + d, n);
  rep.rho_side = gram(n, n + d);
  double smax_l = 0.0, smax_r = 0.0;
  rep.sigma_min_lambda = column_sigma_min(rep.lambda_side, &smax_l);
  rep.sigma_min_rho = column_sigma_min(rep.rho_side.transpose(), &smax_r);
  rep.sigma_max = std::max(smax_l, smax_r);
  rep.sigma_min = std::min(rep.sigma_min_lambda, rep.sigma_min_rho);
  return rep;
}

double omega_ambient(const TangentField& u, const TangentField& v, const CircleForm& beta) {
  if (u.size() != v.size()) throw std::invalid_argument("tangent fields differ in size");
  const auto a = interpolate_field(u);
  const auto b = interpolate_field(v);
  return product_integral(a.x, b.y, beta.series()) - product_integral(a.y, b.x, beta.series());
}

double omega_eval(const LoopEmbedding& f, const TangentField& u, const TangentField& v,
                  const CircleForm& beta, const ConstraintOptions& options) {
  return omega_ambient(project_to_constraint(f, u, options), project_to_constraint(f, v, options),
                       beta);
}

double omega_split(const LoopEmbedding& f, const TangentField& u, const TangentField& v,
                   const CircleForm& beta, const ConstraintOptions& options) {
  const int q = exact_split_grid(f, beta);
  return split_omega(tangent_decompose(f, u, q, options), tangent_decompose(f, v, q, options),
                     beta);
}

PointedDecoration::PointedDecoration(std::vector<double> circulations_, std::vector<double> marked_)
    : circulations(std::move(circulations_)), marked(std::move(marked_)) {
  if (circulations.size() != marked.size())
    throw std::invalid_argument("pointed decoration: one circulation per marked parameter");
  for (std::size_t i = 0; i < marked.size(); ++i) {
    if (!(marked[i] >= 0.0 && marked[i] < kTwoPi))
      throw std::invalid_argument("marked parameters must lie in [0, 2 pi)");
    if (i > 0 && !(marked[i] > marked[i - 1]))
      throw std::invalid_argument("marked parameters must be strictly increasing");
  }
}

double pointed_omega_eval(const LoopEmbedding& f, const TangentField& u, const TangentField& v,
                          const CircleForm& beta, const PointedDecoration& pd,
                          const ConstraintOptions& options) {
  const auto pu = project_to_constraint(f, u, options);
  const auto pv = project_to_constraint(f, v, options);
  double value = omega_ambient(pu, pv, beta);
  const auto a = interpolate_field(pu);
  const auto b = interpolate_field(pv);
  for (std::size_t i = 0; i < pd.marked.size(); ++i) {
    const double t = pd.marked[i];
    value += pd.circulations[i] * cross({a.x.value(t), a.y.value(t)}, {b.x.value(t), b.y.value(t)});
  }
  return value;
}

double primitive_one_form_eval(const LoopEmbedding& f, const TangentField& u,
                               const CircleForm& beta) {
  check_size(f, u);
  const auto c = interpolate_field(u);
  return 0.5 * (product_integral(f.x(), c.y, beta.series()) -
                product_integral(f.y(), c.x, beta.series()));
}

namespace {

struct CurveQuadrature {
  std::vector<Point> points;
  std::vector<double> weights;  // beta(s_j) 2 pi / Q
};

CurveQuadrature curve_quadrature(const LoopEmbedding& f, const CircleForm& beta) {
  const int q = std::max(1024, 4 * static_cast<int>(f.size()));
  const auto grid = uniform_grid(q);
  CurveQuadrature cq{f.evaluate(grid), beta.series().evaluate(grid)};
  for (auto& w : cq.weights) w *= kTwoPi / q;
  return cq;
}

double apply(const CurveQuadrature& cq, const PlanarHamiltonian& h) {
  double sum = 0.0;
  for (std::size_t j = 0; j < cq.points.size(); ++j) {
    const double w = cq.weights[j];
    if (w != 0.0) sum += h.value(cq.points[j]) * w;
  }
  return sum;
}

}  // namespace

double momentum_map_eval(const LoopEmbedding& f, const PlanarHamiltonian& h,
                         const CircleForm& beta) {
  return apply(curve_quadrature(f, beta), h);
}

std::vector<double> momentum_map_eval(const LoopEmbedding& f,
                                      std::span<const PlanarHamiltonian> dictionary,
                                      const CircleForm& beta) {
  const auto cq = curve_quadrature(f, beta);
  std::vector<double> out(dictionary.size());
  const int m = static_cast<int>(dictionary.size());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < m; ++i) out[i] = apply(cq, dictionary[i]);
  return out;
}

double momentum_separation(const DecoratedLoop& a, const DecoratedLoop& b,
                           std::span<const PlanarHamiltonian> dictionary) {
  if (dictionary.empty()) throw std::invalid_argument("momentum_separation: empty dictionary");
  const auto ja = momentum_map_eval(a.embedding(), dictionary, a.decoration());
  const auto jb = momentum_map_eval(b.embedding(), dictionary, b.decoration());
  double sep = 0.0;
  for (std::size_t i = 0; i < ja.size(); ++i) sep = std::max(sep, std::abs(ja[i] - jb[i]));
  return sep;
}

double fd_exactness_defect(const LoopEmbedding& f, const TangentField& u, const TangentField& v,
                           const CircleForm& beta, double step) {
  check_size(f, u);
  check_size(f, v);
  const auto d = [&](const TangentField& dir, const TangentField& arg) {
    return (primitive_one_form_eval(perturbed(f, dir, step), arg, beta) -
            primitive_one_form_eval(perturbed(f, dir, -step), arg, beta)) /
           (2.0 * step);
  };
  return d(u, v) - d(v, u) - omega_ambient(u, v, beta);
}

double fd_closedness_defect(const LoopEmbedding& f, const TangentField& u, const TangentField& v,
                            const TangentField& w, const CircleForm& beta, double step) {
  check_size(f, u);
  check_size(f, v);
  check_size(f, w);
  const int q = exact_split_grid(f, beta);
  const auto omega_at = [&](const LoopEmbedding& g, const TangentField& a, const TangentField& b) {
    return split_omega(split_raw(g, a, q), split_raw(g, b, q), beta);
  };
  const auto d = [&](const TangentField& dir, const TangentField& a, const TangentField& b) {
    return (omega_at(perturbed(f, dir, step), a, b) - omega_at(perturbed(f, dir, -step), a, b)) /
           (2.0 * step);
  };
  return d(u, v, w) + d(v, w, u) + d(w, u, v);
}

}  // namespace vortexloop
