#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "vortexloop/circle_form.hpp"
#include "vortexloop/hamiltonian.hpp"
#include "vortexloop/loop.hpp"

namespace vortexloop {

/// Vector field u along an embedding, one vector per sample node s_j.
/// Between nodes each component is band-limited interpolated.
using TangentField = std::vector<Point>;

/// The split (rho, lambda) of a tangent vector in the frame
/// e1 = n / |f'|^2, e2 = f', n = (y', -x'):
///   u = rho e1 + lambda e2,  rho = u . n,  lambda = u . f' / |f'|^2.
/// omega(e1, e2) = 1, so omega(u, v) = rho_u lambda_v - rho_v lambda_u, and
/// the area constraint on u is exactly "rho has zero mean". Values live on a
/// uniform grid whose size is a multiple of the embedding's sample count.
struct SplitTangent {
  std::vector<double> rho;
  std::vector<double> lambda;
};

struct ConstraintOptions {
  double reject_above = 1e-6;
};

/// |mean of u . n| / (max|u| max|f'|): zero exactly on T_f Emb_a.
double constraint_violation(const LoopEmbedding& f, const TangentField& u);
/// Removes the mean of rho. Throws ConstraintViolation when the violation is
/// above options.reject_above.
TangentField project_to_constraint(const LoopEmbedding& f, const TangentField& u,
                                   const ConstraintOptions& options = {});

/// grid = 0 picks twice the sample count.
SplitTangent tangent_decompose(const LoopEmbedding& f, const TangentField& u, int grid = 0,
                               const ConstraintOptions& options = {});
/// Rebuilds u at the sample nodes from a split sampled on a multiple of N.
TangentField tangent_compose(const LoopEmbedding& f, const SplitTangent& split);
TangentField tangent_compose(const LoopEmbedding& f, const TrigSeries& rho,
                             const TrigSeries& lambda);

/// <rho, lambda> = integral of rho lambda beta dt. The series overload is
/// exact; the sampled overload uses the trapezoid rule on the split grid.
double pairing(const TrigSeries& rho, const TrigSeries& lambda, const CircleForm& beta);
double pairing(std::span<const double> rho, std::span<const double> lambda,
               const CircleForm& beta);

struct PairingReport {
  /// M_ij = <rho_i, lambda_j>: rho over zero-mean modes up to n + deg beta,
  /// lambda over all modes up to n (L2-normalized real Fourier bases).
  Eigen::MatrixXd lambda_side;
  /// rho over zero-mean modes up to n, lambda over all modes up to n + deg beta.
  Eigen::MatrixXd rho_side;
  double sigma_min_lambda = 0.0;
  double sigma_min_rho = 0.0;
  double sigma_max = 0.0;
  double sigma_min = 0.0;
  double relative_sigma_min() const { return sigma_max > 0.0 ? sigma_min / sigma_max : 0.0; }
};

PairingReport pairing_matrix(const CircleForm& beta, int n = 16);

/// Omega_f(u, v) = integral of omega(u, v) beta, after projecting u and v
/// onto the area constraint.
double omega_eval(const LoopEmbedding& f, const TangentField& u, const TangentField& v,
                  const CircleForm& beta, const ConstraintOptions& options = {});
/// Same integrand with no constraint handling, for ambient stencils.
double omega_ambient(const TangentField& u, const TangentField& v, const CircleForm& beta);
/// <rho_u, lambda_v> - <rho_v, lambda_u> on the split grid.
double omega_split(const LoopEmbedding& f, const TangentField& u, const TangentField& v,
                   const CircleForm& beta, const ConstraintOptions& options = {});

struct PointedDecoration {
  std::vector<double> circulations;
  std::vector<double> marked;

  PointedDecoration() = default;
  PointedDecoration(std::vector<double> circulations, std::vector<double> marked);
};

/// Omega + sum_i Gamma_i omega(u(t_i), v(t_i)).
double pointed_omega_eval(const LoopEmbedding& f, const TangentField& u, const TangentField& v,
                          const CircleForm& beta, const PointedDecoration& pd,
                          const ConstraintOptions& options = {});

/// alpha_f(u) = integral of nu_{f(t)}(u(t)) beta, nu = (x dy - y dx) / 2.
double primitive_one_form_eval(const LoopEmbedding& f, const TangentField& u,
                               const CircleForm& beta);

/// <J(f), X_h> = integral of (h o f) beta, trapezoid on max(1024, 4N) nodes.
double momentum_map_eval(const LoopEmbedding& f, const PlanarHamiltonian& h,
                         const CircleForm& beta);
std::vector<double> momentum_map_eval(const LoopEmbedding& f,
                                      std::span<const PlanarHamiltonian> dictionary,
                                      const CircleForm& beta);

/// max over the dictionary of |J(L1)(h) - J(L2)(h)|.
double momentum_separation(const DecoratedLoop& a, const DecoratedLoop& b,
                           std::span<const PlanarHamiltonian> dictionary);

/// Central-difference exterior derivatives on constant extensions, evaluated
/// on the perturbed embeddings f +- h u without constraint projection.
/// d alpha(u, v) - Omega(u, v):
double fd_exactness_defect(const LoopEmbedding& f, const TangentField& u, const TangentField& v,
                           const CircleForm& beta, double step = 1e-4);
/// d Omega(u, v, w):
double fd_closedness_defect(const LoopEmbedding& f, const TangentField& u, const TangentField& v,
                            const TangentField& w, const CircleForm& beta, double step = 1e-4);

}  // namespace vortexloop
