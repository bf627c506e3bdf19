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
#ifndef WILSON_LAB_FIELD_SAMPLER_HPP
#define WILSON_LAB_FIELD_SAMPLER_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "wilson_lab/bargmann.hpp"
#include "wilson_lab/common.hpp"
#include "wilson_lab/lie_algebra.hpp"
#include "wilson_lab/random.hpp"
#include "wilson_lab/surface.hpp"

/**
 * \file
 * \brief Gaussian two-form field samples and their dual pairings.
 *
 * A sample holds real coefficients indexed [slot][alpha][basis], slots in
 * kTwoFormPairs order. The time-like slots (0, j) are expressed in range
 * coordinates of d_0 (columns of d0_range_basis()), the spatial slots in the
 * domain monomial basis. Every coefficient is N(0, 1/kappa^2).
 */

namespace wilson_lab {

struct WienerConfig {
  double kappa = 1.0;
  const FockWorkspace* workspace = nullptr;
  std::size_t lie_dim = 0;
  std::uint64_t seed = 0;

  void validate() const {
    detail::require(kappa > 0.0 && std::isfinite(kappa), "kappa must be positive");
    detail::require(workspace != nullptr, "Wiener config needs a workspace");
    detail::require(lie_dim > 0, "Lie algebra dimension must be positive");
  }
};

class FieldSample {
 public:
  FieldSample() = default;
  FieldSample(double kappa, std::size_t lie_dim, std::size_t basis_size)
      : kappa_(kappa), lie_dim_(lie_dim), basis_size_(basis_size), coeffs_(6 * lie_dim * basis_size, 0.0) {}

  [[nodiscard]] double kappa() const { return kappa_; }
  [[nodiscard]] std::size_t lie_dim() const { return lie_dim_; }
  [[nodiscard]] std::size_t basis_size() const { return basis_size_; }

  [[nodiscard]] std::span<double> data() { return coeffs_; }
  [[nodiscard]] std::span<const double> data() const { return coeffs_; }

  [[nodiscard]] Eigen::Map<Eigen::VectorXd> slot(std::size_t pair, std::size_t alpha) {
    return {coeffs_.data() + offset(pair, alpha), static_cast<Eigen::Index>(basis_size_)};
  }
  [[nodiscard]] Eigen::Map<const Eigen::VectorXd> slot(std::size_t pair, std::size_t alpha) const {
    return {coeffs_.data() + offset(pair, alpha), static_cast<Eigen::Index>(basis_size_)};
  }

  FieldSample& operator+=(const FieldSample& other) {
    detail::require(other.coeffs_.size() == coeffs_.size(), "field samples have different shapes");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      coeffs_[i] += other.coeffs_[i];
    }
    return *this;
  }

 private:
  [[nodiscard]] std::size_t offset(std::size_t pair, std::size_t alpha) const {
    detail::require(pair < 6 && alpha < lie_dim_, "field slot out of range");
    return (pair * lie_dim_ + alpha) * basis_size_;
  }

  double kappa_ = 1.0;
  std::size_t lie_dim_ = 0;
  std::size_t basis_size_ = 0;
  std::vector<double> coeffs_;
};

/// Draw `index` of the stream: a pure function of (seed, index).
inline FieldSample sample_field(const WienerConfig& config, std::uint64_t index) {
  config.validate();
  FieldSample sample(config.kappa, config.lie_dim, config.workspace->size());
  const auto out = sample.data();
  CounterNormals(config.seed, Stream::field, index).fill(out.data(), out.size(), 1.0 / config.kappa);
  return sample;
}

/**
 * Deterministic sample whose time-like slots hold d_0 x_{i,alpha} (in range
 * coordinates) for the given real polynomials; spatial slots are zero.
 * Polynomials must have degree <= D.
 */
inline FieldSample sample_from_potentials(const FockWorkspace& ws, double kappa,
                                          const std::vector<std::array<Eigen::VectorXd, 3>>& potentials) {
  FieldSample sample(kappa, potentials.size(), ws.size());
  for (std::size_t alpha = 0; alpha < potentials.size(); ++alpha) {
    for (std::size_t i = 0; i < 3; ++i) {
      const Eigen::VectorXd& x = potentials[alpha][i];
      detail::require(static_cast<std::size_t>(x.size()) == ws.size(), "potential does not match workspace");
      const CoefVector range = project_to_range(ws, apply_d(ws, 0, x.cast<Complex>()));
      sample.slot(i, alpha) = range.real();
    }
  }
  return sample;
}

struct DualOptions {
  double c_tilde = kDefaultCTilde;
  /// When set, pairings refuse points whose truncation tail exceeds this.
  std::optional<double> tail_eps;
};

namespace detail {

inline void check_sample(const FieldSample& sample, const FockWorkspace& ws) {
  require(sample.basis_size() == ws.size(), "field sample does not match the workspace");
}

inline Complex pair_real(const Eigen::Map<const Eigen::VectorXd>& b, const CoefVector& dual) {
  // sum_k b_k conj(dual_k)
  return Complex(b.dot(dual.real()), -b.dot(dual.imag()));
}

}  // namespace detail

/// Dual of xi_ab(w) in the coordinates used by slot (a, b).
inline CoefVector xi_slot_dual(const FockWorkspace& ws, int a, int b, const KernelPoint& w,
                               const DualOptions& options = {}) {
  if (options.tail_eps) {
    check_tail(ws, norm_sq(w), *options.tail_eps, options.c_tilde);
  }
  const XiDual xi = xi_coeffs(ws, a, b, w, options.c_tilde);
  CoefVector dual = static_cast<double>(xi.sign) * xi.coeffs;
  return a == 0 ? project_to_range(ws, dual) : dual;
}

/// Dual of pi_{i, alpha}(w) = psi_w zeta(w) in range coordinates.
inline CoefVector pi_dual(const FockWorkspace& ws, const KernelPoint& w, const DualOptions& options = {}) {
  if (options.tail_eps) {
    check_tail(ws, norm_sq(w), *options.tail_eps, options.c_tilde);
  }
  return psi(w, options.c_tilde) * zeta_range_coords(ws, w);
}

inline Complex pair_xi(const FieldSample& sample, const FockWorkspace& ws, int a, int b, std::size_t gamma,
                       const KernelPoint& w, const DualOptions& options = {}) {
  detail::check_sample(sample, ws);
  return detail::pair_real(sample.slot(pair_slot(a, b), gamma), xi_slot_dual(ws, a, b, w, options));
}

inline Complex pair_pi(const FieldSample& sample, const FockWorkspace& ws, int i, std::size_t alpha,
                       const KernelPoint& w, const DualOptions& options = {}) {
  detail::require(1 <= i && i <= 3, "pair_pi requires i in 1..3");
  detail::check_sample(sample, ws);
  return detail::pair_real(sample.slot(static_cast<std::size_t>(i - 1), alpha), pi_dual(ws, w, options));
}

/// nu projected onto range(d_0), one real vector per time-like slot.
struct ProjectedNu {
  double kappa = 0.0;
  std::array<Eigen::VectorXd, 3> range_coeffs;
  /// |P nu|^2 / kappa^2: the variance of each g_alpha.
  double norm_sq_over_kappa_sq = 0.0;
};

inline ProjectedNu project_nu(const FockWorkspace& ws, const NuVector& nu) {
  ProjectedNu out;
  out.kappa = nu.kappa;
  double norm = 0.0;
  for (std::size_t j = 0; j < 3; ++j) {
    detail::require(static_cast<std::size_t>(nu.per_alpha_coeffs[j].size()) == ws.size(),
                    "nu was built on a different workspace");
    out.range_coeffs[j] = project_to_range(ws, nu.per_alpha_coeffs[j]).real();
    norm += out.range_coeffs[j].squaredNorm();
  }
  out.norm_sq_over_kappa_sq = norm / (nu.kappa * nu.kappa);
  return out;
}

/// g_alpha = (B_alpha, nu^alpha): one real Gaussian per Lie index.
inline std::vector<double> nu_components(const FieldSample& sample, const ProjectedNu& nu) {
  detail::require(static_cast<std::size_t>(nu.range_coeffs[0].size()) == sample.basis_size(),
                  "nu was built on a different workspace");
  detail::require(nu.kappa == sample.kappa(), "nu and the field sample use different kappa");
  std::vector<double> g(sample.lie_dim(), 0.0);
  for (std::size_t alpha = 0; alpha < g.size(); ++alpha) {
    for (std::size_t j = 0; j < 3; ++j) {
      g[alpha] += sample.slot(j, alpha).dot(nu.range_coeffs[j]);
    }
  }
  return g;
}

/// sum_alpha g_alpha rho(E^alpha).
inline ComplexMatrix combine_images(std::span<const double> g, const Representation& rep) {
  detail::require(g.size() == rep.images.size(), "representation does not match the Lie algebra");
  ComplexMatrix out = ComplexMatrix::Zero(rep.dim_rep, rep.dim_rep);
  for (std::size_t alpha = 0; alpha < g.size(); ++alpha) {
    out += g[alpha] * rep.images[alpha];
  }
  return out;
}

inline ComplexMatrix pair_nu(const FieldSample& sample, const ProjectedNu& nu, const Representation& rep) {
  const std::vector<double> g = nu_components(sample, nu);
  return combine_images(g, rep);
}

inline ComplexMatrix pair_nu(const FieldSample& sample, const FockWorkspace& ws, const NuVector& nu,
                             const Representation& rep) {
  detail::check_sample(sample, ws);
  return pair_nu(sample, project_nu(ws, nu), rep);
}

}  // namespace wilson_lab

#endif  // WILSON_LAB_FIELD_SAMPLER_HPP
