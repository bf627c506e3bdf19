// Copyright 2026 The Wilson Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef WILSON_LAB_ESTIMATOR_HPP
#define WILSON_LAB_ESTIMATOR_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wilson_lab/bargmann.hpp"
#include "wilson_lab/common.hpp"
#include "wilson_lab/field_sampler.hpp"
#include "wilson_lab/lie_algebra.hpp"
#include "wilson_lab/parallel.hpp"
#include "wilson_lab/quadrature.hpp"
#include "wilson_lab/random.hpp"
#include "wilson_lab/stats.hpp"
#include "wilson_lab/surface.hpp"
#include "wilson_lab/ym_functionals.hpp"

/**
 * \file
 * \brief Monte-Carlo Wilson-loop estimator, closed forms, oracle and potential.
 */

namespace wilson_lab {

/// exp(X) for skew-Hermitian X via the eigendecomposition of H = iX.
inline ComplexMatrix expm_skew(const ComplexMatrix& x) {
  const ComplexMatrix h = Complex(0.0, 1.0) * x;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
  if (eig.info() != Eigen::Success) {
    throw ToleranceError("eigendecomposition failed in the matrix exponential");
  }
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  Eigen::VectorXcd phases(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    phases(i) = std::polar(1.0, -lambda(i));
  }
  const ComplexMatrix& v = eig.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

/// exp(-t E) for the Hermitian positive semi-definite Casimir matrix E.
inline ComplexMatrix casimir_exp(const Representation& rep, double t) {
  const CasimirOperator op = casimir(rep, false);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(op.matrix);
  const Eigen::VectorXd decay = (-t * eig.eigenvalues().array()).exp();
  const ComplexMatrix& v = eig.eigenvectors();
  return v * decay.cast<Complex>().asDiagonal() * v.adjoint();
}

/// exp[(v/2) sum_alpha rho(E^alpha)^2], the Gaussian moment formula taken literally.
inline ComplexMatrix free_field_closed_form(const Representation& rep, double nu_norm_over_kappa_sq) {
  return casimir_exp(rep, 0.5 * nu_norm_over_kappa_sq);
}

/// E[Tr exp(sum G_alpha rho(E^alpha))], G_alpha ~ N(0, v), su(2) standard representation.
inline double exact_su2_free_field(double v) {
  detail::require(v >= 0.0, "variance must be non-negative");
  return 2.0 * (1.0 - 0.5 * v) * std::exp(-0.25 * v);
}

/// exp[-(area/8) E(rho)].
inline ComplexMatrix area_law_limit(const Representation& rep, double area) {
  detail::require(area >= 0.0, "area must be non-negative");
  return casimir_exp(rep, area / 8.0);
}

/// True when `rep` is the defining representation of su(2).
inline bool is_su2_standard(const LieBasis& basis, const Representation& rep) {
  if (basis.group_kind != GroupKind::su || basis.n != 2 || rep.dim_rep != 2 || rep.images.size() != 3) {
    return false;
  }
  for (std::size_t a = 0; a < 3; ++a) {
    if ((rep.images[a] - basis.generators[a]).cwiseAbs().maxCoeff() > 1e-14) {
      return false;
    }
  }
  return true;
}

struct ComplexMeanEstimate {
  Complex mean;
  double std_error = 0.0;
};

/// Plain Monte Carlo of E[Tr exp(sum G_alpha rho(E^alpha))] with G_alpha ~ N(0, v).
inline ComplexMeanEstimate free_field_mc(const Representation& rep, double v, std::size_t n_draws,
                                         std::uint64_t seed) {
  detail::require(v >= 0.0, "variance must be non-negative");
  detail::require(n_draws >= 2, "need at least two draws");
  const std::size_t lie = rep.images.size();
  std::vector<double> re(n_draws);
  std::vector<double> im(n_draws);
  const double scale = std::sqrt(v);
  parallel_for(0, n_draws, [&](std::size_t d) {
    std::vector<double> g(lie);
    CounterNormals(seed, Stream::free_field, d).fill(g.data(), lie, scale);
    const Complex tr = expm_skew(combine_images(g, rep)).trace();
    re[d] = tr.real();
    im[d] = tr.imag();
  });
  const MeanEstimate mr = mean_estimate(re);
  const MeanEstimate mi = mean_estimate(im);
  return {Complex(mr.mean, mi.mean), std::hypot(mr.std_error, mi.std_error)};
}

struct WilsonOptions {
  std::optional<int> degree;  // absent: smallest degree meeting tail_eps
  double tail_eps = 1e-6;
  std::size_t w_nodes = 512;
  std::uint64_t grid_seed = 0;
  double c_tilde = kDefaultCTilde;
  std::size_t surface_order = 0;  // 0: default_surface_order
};

struct WorkspaceDiagnostics {
  int degree = 0;
  std::size_t basis_size = 0;
  double nu_tail = 0.0;           // truncation tail at kappa max|sigma| / 2
  double grid_max_tail = 0.0;     // largest tail over w-grid nodes (reported, not enforced)
  double grid_max_norm_sq = 0.0;
  double zeta_normal_condition = 0.0;
  double d0_min_singular_value = 0.0;
};

/// Everything a Wilson-loop run needs that does not depend on the field seed.
struct WilsonProblem {
  RectSurface surface;
  double kappa;
  LieBasis basis;
  StructureConstants sc;
  std::shared_ptr<const FockWorkspace> workspace;
  NuVector nu;
  ProjectedNu projected_nu;
  double nu_kernel_norm = 0.0;
  WGrid grid;
  GridDuals duals;
  WorkspaceDiagnostics diagnostics;
};

inline WilsonProblem prepare_wilson(const RectSurface& surface, double kappa, const LieBasis& basis,
                                    const WilsonOptions& options = {}) {
  detail::require(kappa > 0.0 && std::isfinite(kappa), "kappa must be positive");
  detail::require(options.w_nodes >= 1, "w_nodes must be positive");
  const double r = max_kernel_radius(surface, kappa);
  const int degree = options.degree ? *options.degree : auto_degree(r * r, options.tail_eps, options.c_tilde);
  auto ws = std::make_shared<const FockWorkspace>(degree);

  const std::size_t order = options.surface_order == 0 ? default_surface_order(kappa, surface) : options.surface_order;
  NuOptions nu_options;
  nu_options.c_tilde = options.c_tilde;
  nu_options.tail_eps = options.tail_eps;
  NuVector nu = nu_coeffs(surface, kappa, *ws, tensor_rule(order), nu_options);
  ProjectedNu projected = project_nu(*ws, nu);
  WGrid grid = make_wgrid(options.w_nodes, options.grid_seed);
  GridDuals duals = make_grid_duals(*ws, grid, {options.c_tilde, std::nullopt});

  WorkspaceDiagnostics diag;
  diag.degree = degree;
  diag.basis_size = ws->size();
  diag.nu_tail = tail_mass(r * r, degree, options.c_tilde);
  diag.grid_max_tail = duals.max_tail;
  diag.grid_max_norm_sq = duals.max_norm_sq;
  diag.zeta_normal_condition = ws->normal_condition();
  diag.d0_min_singular_value = ws->d0_min_singular_value();

  return {surface,
          kappa,
          basis,
          structure_constants(basis),
          ws,
          std::move(nu),
          std::move(projected),
          nu_norm_kernel(surface, kappa, order, options.c_tilde),
          std::move(grid),
          std::move(duals),
          diag};
}

struct EstimateResult {
  double kappa = 0.0;
  std::size_t n_samples = 0;
  Complex trace_estimate;
  double std_error = 0.0;
  Complex free_field_estimate;  // plain mean of Tr J over the same samples
  double free_field_std_error = 0.0;
  double casimir_closed_form = 0.0;      // Tr of free_field_closed_form at the measured v
  std::optional<double> oracle_value;  // exact_su2_free_field at the measured v
  double area = 0.0;
  double v_measured = 0.0;  // |P nu|^2 / kappa^2, the variance of each g_alpha
  double v_kernel = 0.0;    // untruncated |nu|^2 / kappa^2
  double mean_density = 0.0;
  double density_std_error = 0.0;
  double nu_fourth_moment = 0.0;  // E[(-Tr X^2)^2], X = (., nu)
  double nu_fourth_moment_std_error = 0.0;
  double max_unitarity_error = 0.0;
  double max_trace_modulus = 0.0;
  Eigen::Index dim_rep = 0;
};

struct EstimateOptions {
  /// Replace every density by 1; the estimate then equals the plain mean.
  bool force_unit_density = false;
  std::size_t batches = 20;
};

inline EstimateResult wilson_mc(const WilsonProblem& problem, const Representation& rep, std::size_t n_samples,
                                std::uint64_t seed, const EstimateOptions& options = {}) {
  detail::require(n_samples >= 2, "need at least two field samples");
  detail::require(rep.images.size() == problem.basis.dim(), "representation does not match the Lie algebra");
  const WienerConfig config{problem.kappa, problem.workspace.get(), problem.basis.dim(), seed};
  BatchOptions batch;
  batch.compute_y = !options.force_unit_density;
  const auto outputs =
      evaluate_samples(config, &problem.duals, problem.sc, &problem.projected_nu, 0, n_samples, batch);

  std::vector<Complex> weighted(n_samples);
  std::vector<Complex> traces(n_samples);
  std::vector<double> density(n_samples);
  std::vector<double> fourth(n_samples);
  std::vector<double> unitarity(n_samples);
  parallel_for(0, n_samples, [&](std::size_t s) {
    const double y = options.force_unit_density ? 1.0 : outputs[s].y.y_density;
    if (!std::isfinite(y) || !(y > 0.0)) {
      throw ToleranceError("non-finite Yang-Mills density at sample " + std::to_string(s));
    }
    const ComplexMatrix x = combine_images(outputs[s].g, rep);
    const ComplexMatrix u = expm_skew(x);
    const auto id = ComplexMatrix::Identity(rep.dim_rep, rep.dim_rep);
    unitarity[s] = (u.adjoint() * u - id).cwiseAbs().maxCoeff();
    traces[s] = u.trace();
    weighted[s] = traces[s] * y;
    density[s] = y;
    const double quad = -(x * x).trace().real();
    fourth[s] = quad * quad;
  });

  EstimateResult result;
  result.kappa = problem.kappa;
  result.n_samples = n_samples;
  result.dim_rep = rep.dim_rep;
  const RatioEstimate ratio = ratio_estimate(weighted, density, options.batches);
  result.trace_estimate = ratio.value;
  result.std_error = ratio.std_error;
  std::vector<double> re(n_samples);
  std::vector<double> im(n_samples);
  for (std::size_t s = 0; s < n_samples; ++s) {
    re[s] = traces[s].real();
    im[s] = traces[s].imag();
    result.max_unitarity_error = std::max(result.max_unitarity_error, unitarity[s]);
    result.max_trace_modulus = std::max(result.max_trace_modulus, std::abs(traces[s]));
  }
  const MeanEstimate mr = mean_estimate(re);
  const MeanEstimate mi = mean_estimate(im);
  result.free_field_estimate = Complex(mr.mean, mi.mean);
  result.free_field_std_error = std::hypot(mr.std_error, mi.std_error);
  const MeanEstimate md = mean_estimate(density);
  result.mean_density = md.mean;
  result.density_std_error = md.std_error;
  const MeanEstimate m4 = mean_estimate(fourth);
  result.nu_fourth_moment = m4.mean;
  result.nu_fourth_moment_std_error = m4.std_error;

  result.v_measured = problem.projected_nu.norm_sq_over_kappa_sq;
  result.v_kernel = problem.nu_kernel_norm;
  result.area = problem.surface.area();
  result.casimir_closed_form = free_field_closed_form(rep, result.v_measured).trace().real();
  if (is_su2_standard(problem.basis, rep)) {
    result.oracle_value = exact_su2_free_field(result.v_measured);
  }
  return result;
}

struct PotentialTable {
  std::vector<std::pair<double, double>> rows;  // (R, V)
  double slope = 0.0;
  double max_fit_residual = 0.0;  // of the least-squares line through the origin
};

/// V(R) = (R/8) x Casimir scalar of the standard representation.
inline PotentialTable potential(GroupKind kind, int n, std::span<const double> r_values) {
  const LieBasis basis = build_basis(kind, n);
  const CasimirOperator op = casimir(standard_rep(basis), false);
  if (!op.scalar) {
    throw ConfigError("the potential needs a scalar Casimir operator");
  }
  PotentialTable table;
  const double exact = standard_casimir(kind, n);
  if (std::abs(*op.scalar - exact) > 1e-10 * exact) {
    throw ToleranceError("numerical Casimir scalar disagrees with the closed form");
  }
  table.slope = exact / 8.0;
  double sxx = 0.0;
  double sxy = 0.0;
  for (double r : r_values) {
    detail::require(r >= 0.0 && std::isfinite(r), "R values must be non-negative");
    const double v = table.slope * r;
    table.rows.emplace_back(r, v);
    sxx += r * r;
    sxy += r * v;
  }
  const double fit = sxx > 0.0 ? sxy / sxx : 0.0;
  for (const auto& [r, v] : table.rows) {
    table.max_fit_residual = std::max(table.max_fit_residual, std::abs(v - fit * r));
  }
  return table;
}

struct ProbeResult {
  double kappa = 0.0;
  ComplexMatrix moment;  // E[X^2 (Y - 1)], X = (., nu^{kappa, rho})
  double min_eigenvalue = 0.0;  // of the Hermitian part
  double min_eigenvalue_std_error = 0.0;
  double magnitude = 0.0;  // max-abs entry of the moment
  double magnitude_std_error = 0.0;
};

inline ProbeResult positivity_probe(const WilsonProblem& problem, const Representation& rep, std::size_t n_samples,
                                    std::uint64_t seed, std::size_t batches = 20) {
  detail::require(n_samples >= 2, "need at least two field samples");
  detail::require(rep.images.size() == problem.basis.dim(), "representation does not match the Lie algebra");
  const WienerConfig config{problem.kappa, problem.workspace.get(), problem.basis.dim(), seed};
  const auto outputs = evaluate_samples(config, &problem.duals, problem.sc, &problem.projected_nu, 0, n_samples);
  const Eigen::Index m = rep.dim_rep;
  std::vector<ComplexMatrix> terms(n_samples);
  parallel_for(0, n_samples, [&](std::size_t s) {
    const ComplexMatrix x = combine_images(outputs[s].g, rep);
    terms[s] = (x * x) * (outputs[s].y.y_density - 1.0);
  });
  auto reduce = [&](std::size_t lo, std::size_t hi) {
    ComplexMatrix acc = ComplexMatrix::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < m; ++j) {
        std::vector<Complex> entries(hi - lo);
        for (std::size_t s = lo; s < hi; ++s) {
          entries[s - lo] = terms[s](i, j);
        }
        acc(i, j) = pairwise_sum(std::span<const Complex>(entries)) / static_cast<double>(hi - lo);
      }
    }
    return acc;
  };
  auto min_eig = [](const ComplexMatrix& a) {
    const ComplexMatrix h = 0.5 * (a + a.adjoint());
    return Eigen::SelfAdjointEigenSolver<ComplexMatrix>(h, Eigen::EigenvaluesOnly).eigenvalues()(0);
  };
  ProbeResult out;
  out.kappa = problem.kappa;
  out.moment = reduce(0, n_samples);
  out.min_eigenvalue = min_eig(out.moment);
  out.magnitude = out.moment.cwiseAbs().maxCoeff();
  batches = std::clamp<std::size_t>(batches, 2, n_samples);
  std::vector<double> eig_batches(batches);
  std::vector<double> mag_batches(batches);
  for (std::size_t b = 0; b < batches; ++b) {
    const ComplexMatrix part = reduce(b * n_samples / batches, (b + 1) * n_samples / batches);
    eig_batches[b] = min_eig(part);
    mag_batches[b] = part.cwiseAbs().maxCoeff();
  }
  out.min_eigenvalue_std_error = mean_estimate(eig_batches).std_error;
  out.magnitude_std_error = mean_estimate(mag_batches).std_error;
  return out;
}

}  // namespace wilson_lab

#endif  // WILSON_LAB_ESTIMATOR_HPP
