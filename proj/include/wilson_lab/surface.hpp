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

#ifndef WILSON_LAB_SURFACE_HPP
#define WILSON_LAB_SURFACE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wilson_lab/bargmann.hpp"
#include "wilson_lab/common.hpp"
#include "wilson_lab/quadrature.hpp"

/**
 * \file
 * \brief Flat rectangles R[a, T] in R^4, their Jacobians, the area functional
 * and the Wilson-loop functional nu in coefficient and kernel form.
 */

namespace wilson_lab {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;

/// Anything with sigma(s, t) and its two partial derivatives on I^2.
template <class S>
concept ParametrizedSurface = requires(const S& surface, double s, double t) {
  { surface.point(s, t) } -> std::convertible_to<Vec4>;
  { surface.d_s(s, t) } -> std::convertible_to<Vec4>;
  { surface.d_t(s, t) } -> std::convertible_to<Vec4>;
};

/**
 * sigma(s, t) = origin + s (0, a) + t (T, 0, 0, 0). The time edge is always
 * along x^0.
 */
class RectSurface {
 public:
  RectSurface(const Vec3& a, double T, const Vec4& origin = Vec4::Zero()) : a_(a), T_(T), origin_(origin) {
    detail::require(a.norm() > 0.0, "surface edge a must be non-zero");
    detail::require(T > 0.0, "surface time extent T must be positive");
    detail::require(a.allFinite() && std::isfinite(T) && origin.allFinite(), "surface parameters must be finite");
  }

  [[nodiscard]] const Vec3& a() const { return a_; }
  [[nodiscard]] double T() const { return T_; }
  [[nodiscard]] const Vec4& origin() const { return origin_; }
  [[nodiscard]] double area() const { return a_.norm() * T_; }

  [[nodiscard]] Vec4 d_s(double, double) const { return {0.0, a_(0), a_(1), a_(2)}; }
  [[nodiscard]] Vec4 d_t(double, double) const { return {T_, 0.0, 0.0, 0.0}; }
  [[nodiscard]] Vec4 point(double s, double t) const { return origin_ + s * d_s(s, t) + t * d_t(s, t); }

  /// max |sigma| over I^2 (attained at a corner since sigma is affine).
  [[nodiscard]] double max_radius() const {
    double r = 0.0;
    for (double s : {0.0, 1.0}) {
      for (double t : {0.0, 1.0}) {
        r = std::max(r, point(s, t).norm());
      }
    }
    return r;
  }

 private:
  Vec3 a_;
  double T_;
  Vec4 origin_;
};

/// Same surface with the parameters exchanged: sigma~(s, t) = sigma(t, s).
template <ParametrizedSurface S>
class SwappedSurface {
 public:
  explicit SwappedSurface(S inner) : inner_(std::move(inner)) {}
  [[nodiscard]] Vec4 point(double s, double t) const { return inner_.point(t, s); }
  [[nodiscard]] Vec4 d_s(double s, double t) const { return inner_.d_t(t, s); }
  [[nodiscard]] Vec4 d_t(double s, double t) const { return inner_.d_s(t, s); }

 private:
  S inner_;
};

/// The six pairs a < b in the order (0,1),(0,2),(0,3),(1,2),(1,3),(2,3).
inline constexpr std::array<std::pair<int, int>, 6> kTwoFormPairs = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

inline std::size_t pair_slot(int a, int b) {
  for (std::size_t i = 0; i < kTwoFormPairs.size(); ++i) {
    if (kTwoFormPairs[i] == std::pair{a, b}) {
      return i;
    }
  }
  throw ConfigError("two-form pair must satisfy 0 <= a < b <= 3");
}

/// The pair (c, d), c < d, with {a, b, c, d} = {0, 1, 2, 3}.
inline std::pair<int, int> complementary_pair(int a, int b) {
  std::array<int, 2> rest{};
  std::size_t n = 0;
  for (int i = 0; i < 4; ++i) {
    if (i != a && i != b) {
      rest[n++] = i;
    }
  }
  return {rest[0], rest[1]};
}

struct JacobianSet {
  std::array<Eigen::Matrix2d, 6> J;

  [[nodiscard]] const Eigen::Matrix2d& operator()(int a, int b) const { return J[pair_slot(a, b)]; }
  [[nodiscard]] double abs_det(int a, int b) const { return std::abs((*this)(a, b).determinant()); }
};

template <ParametrizedSurface S>
Eigen::Matrix2d jacobian(const S& surface, double s, double t, int a, int b) {
  const Vec4 ds = surface.d_s(s, t);
  const Vec4 dt = surface.d_t(s, t);
  Eigen::Matrix2d j;
  j << ds(a), dt(a), ds(b), dt(b);
  return j;
}

template <ParametrizedSurface S>
JacobianSet jacobians(const S& surface, double s, double t) {
  JacobianSet set;
  for (std::size_t i = 0; i < kTwoFormPairs.size(); ++i) {
    set.J[i] = jacobian(surface, s, t, kTwoFormPairs[i].first, kTwoFormPairs[i].second);
  }
  return set;
}

/// |J_ab| / sqrt(det[J_ab^T J_ab + J_cd^T J_cd]); zero where |J_ab| vanishes.
template <ParametrizedSurface S>
double rho_ab(const S& surface, double s, double t, int a, int b) {
  detail::require(0 <= a && a < b && b <= 3, "rho_ab requires 0 <= a < b <= 3");
  const auto [c, d] = complementary_pair(a, b);
  const Eigen::Matrix2d jab = jacobian(surface, s, t, a, b);
  const Eigen::Matrix2d jcd = jacobian(surface, s, t, c, d);
  const double abs_det = std::abs(jab.determinant());
  if (abs_det == 0.0) {
    return 0.0;
  }
  const double denom = (jab.transpose() * jab + jcd.transpose() * jcd).determinant();
  if (!(denom > 0.0)) {
    throw ToleranceError("rho_ab: vanishing denominator with non-zero |J_ab|");
  }
  return abs_det / std::sqrt(denom);
}

/// sum_{a<b} of the integral of rho^{ab} |J_ab| over I^2.
template <ParametrizedSurface S>
double area(const S& surface, const SurfaceQuadrature& quad) {
  double total = 0.0;
  for (std::size_t q = 0; q < quad.size(); ++q) {
    const auto [s, t] = quad.nodes[q];
    for (const auto& [a, b] : kTwoFormPairs) {
      total += quad.weights[q] * rho_ab(surface, s, t, a, b) * std::abs(jacobian(surface, s, t, a, b).determinant());
    }
  }
  return total;
}

/// Per-axis Gauss-Legendre order that resolves the kernel width ~ 1/kappa.
inline std::size_t default_surface_order(double kappa, const RectSurface& surface) {
  const double extent = std::max(surface.a().norm(), surface.T());
  return std::max<std::size_t>(16, static_cast<std::size_t>(std::ceil(4.0 * kappa * extent)));
}

/// Largest |w| = kappa |sigma| / 2 that the functional nu evaluates duals at.
inline double max_kernel_radius(const RectSurface& surface, double kappa) {
  return 0.5 * kappa * surface.max_radius();
}

inline KernelPoint embed(const Vec4& x, double scale) {
  return {Complex(scale * x(0)), Complex(scale * x(1)), Complex(scale * x(2)), Complex(scale * x(3))};
}

/**
 * nu^{kappa, alpha} for one Lie index (identical across alpha): one real
 * coefficient vector per time-like slot (0, j), j = 1..3.
 */
struct NuVector {
  double kappa = 0.0;
  std::array<CoefVector, 3> per_alpha_coeffs;
  double norm_sq_over_kappa_sq = 0.0;
};

struct NuOptions {
  double c_tilde = kDefaultCTilde;
  double tail_eps = 1e-6;
  /// Compare the coefficient norm against the kernel path and fail on disagreement.
  bool verify = true;
};

inline double nu_norm_kernel(const RectSurface& surface, double kappa, std::size_t order = 0,
                      double c_tilde = kDefaultCTilde);

/**
 * (kappa^2/4) sum_q w_q sum_j |J_0j| xi_0j(kappa sigma(q)/2), the net prefactor
 * of coupling 1/kappa, the kappa on d_0, and the kappa^2/4 surface rescaling.
 */
inline NuVector nu_coeffs(const RectSurface& surface, double kappa, const FockWorkspace& ws,
                          const SurfaceQuadrature& quad, const NuOptions& options = {}) {
  detail::require(kappa > 0.0, "kappa must be positive");
  const double r = max_kernel_radius(surface, kappa);
  check_tail(ws, r * r, options.tail_eps, options.c_tilde);

  NuVector nu;
  nu.kappa = kappa;
  for (auto& slot : nu.per_alpha_coeffs) {
    slot = CoefVector::Zero(static_cast<Eigen::Index>(ws.size()));
  }
  const double prefactor = 0.25 * kappa * kappa;
  for (std::size_t q = 0; q < quad.size(); ++q) {
    const auto [s, t] = quad.nodes[q];
    const KernelPoint w = embed(surface.point(s, t), 0.5 * kappa);
    const CoefVector xi = psi(w, options.c_tilde) * chi_coeffs(ws, w);
    for (int j = 1; j <= 3; ++j) {
      const double jac = std::abs(jacobian(surface, s, t, 0, j).determinant());
      if (jac != 0.0) {
        // sign (-1)^(0 j) = +1
        nu.per_alpha_coeffs[static_cast<std::size_t>(j - 1)] += (prefactor * quad.weights[q] * jac) * xi;
      }
    }
  }
  double norm = 0.0;
  for (const auto& slot : nu.per_alpha_coeffs) {
    norm += slot.squaredNorm();
  }
  nu.norm_sq_over_kappa_sq = norm / (kappa * kappa);

  if (options.verify) {
    const double kernel = nu_norm_kernel(surface, kappa, 0, options.c_tilde);
    const double tolerance = std::max(1e-6, 10.0 * options.tail_eps);
    if (std::abs(kernel - nu.norm_sq_over_kappa_sq) > tolerance) {
      throw ToleranceError("nu coefficients disagree with the kernel norm (" + std::to_string(nu.norm_sq_over_kappa_sq) +
                           " vs " + std::to_string(kernel) + "); refine the surface quadrature");
    }
  }
  return nu;
}

/**
 * (1/kappa^2) <nu, nu> by tensorized quadrature over I^2 x I^2, using the
 * closed-form kernel <xi(u), xi(v)> = c^2 exp(-|u - v|^2 / 2) for real u, v.
 */
template <ParametrizedSurface S>
double nu_norm_kernel_generic(const S& surface, double kappa, const SurfaceQuadrature& quad,
                              double c_tilde = kDefaultCTilde) {
  const std::size_t n = quad.size();
  std::vector<Vec4> points(n);
  std::vector<std::array<double, 3>> jac(n);
  for (std::size_t q = 0; q < n; ++q) {
    const auto [s, t] = quad.nodes[q];
    points[q] = surface.point(s, t);
    for (int j = 1; j <= 3; ++j) {
      jac[q][static_cast<std::size_t>(j - 1)] = std::abs(jacobian(surface, s, t, 0, j).determinant());
    }
  }
  const double decay = kappa * kappa / 8.0;
  double total = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    double row = 0.0;
    for (std::size_t q = 0; q < n; ++q) {
      const double overlap =
          jac[p][0] * jac[q][0] + jac[p][1] * jac[q][1] + jac[p][2] * jac[q][2];
      row += quad.weights[q] * overlap * std::exp(-decay * (points[p] - points[q]).squaredNorm());
    }
    total += quad.weights[p] * row;
  }
  return kappa * kappa / 16.0 * c_tilde * c_tilde * total;
}

/**
 * Flat-rectangle specialization: (0, a) is orthogonal to the time edge, so the
 * kernel separates into two one-dimensional double integrals. `order` = 0
 * selects default_surface_order().
 */
inline double nu_norm_kernel(const RectSurface& surface, double kappa, std::size_t order, double c_tilde) {
  detail::require(kappa > 0.0, "kappa must be positive");
  if (order == 0) {
    order = default_surface_order(kappa, surface);
  }
  const GaussRule rule = gauss_legendre(order);
  auto double_integral = [&rule](double beta) {
    const double decay = beta * beta / 8.0;
    double total = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < rule.size(); ++j) {
        const double gap = rule.nodes[i] - rule.nodes[j];
        row += rule.weights[j] * std::exp(-decay * gap * gap);
      }
      total += rule.weights[i] * row;
    }
    return total;
  };
  const double a_norm = surface.a().norm();
  const double T = surface.T();
  // sum_j |J_0j|^2 = |a|^2 T^2
  return kappa * kappa / 16.0 * c_tilde * c_tilde * a_norm * a_norm * T * T * double_integral(kappa * a_norm) *
         double_integral(kappa * T);
}

/**
 * Exact flat-rectangle value of nu_norm_kernel:
 * (kappa^2/16) c^2 |a|^2 T^2 g(kappa |a|) g(kappa T), where
 * g(beta) = int int exp(-beta^2 (s - s')^2 / 8) = sqrt(pi/c) erf(sqrt(c)) - (1 - e^-c)/c, c = beta^2/8.
 */
inline double nu_norm_closed_form(double a_norm, double T, double kappa, double c_tilde = kDefaultCTilde) {
  auto g = [](double beta) {
    const double c = beta * beta / 8.0;
    if (c < 1e-6) {
      return 1.0 - c / 6.0;
    }
    return std::sqrt(kPi / c) * std::erf(std::sqrt(c)) - (1.0 - std::exp(-c)) / c;
  };
  return kappa * kappa / 16.0 * c_tilde * c_tilde * a_norm * a_norm * T * T * g(kappa * a_norm) * g(kappa * T);
}

}  // namespace wilson_lab

#endif  // WILSON_LAB_SURFACE_HPP
