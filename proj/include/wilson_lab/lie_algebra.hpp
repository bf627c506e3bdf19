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

#ifndef WILSON_LAB_LIE_ALGEBRA_HPP
#define WILSON_LAB_LIE_ALGEBRA_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wilson_lab/common.hpp"

/**
 * \file
 * \brief Orthonormal bases of su(n) and so(n), structure constants,
 * representations and quadratic Casimir operators.
 *
 * Every basis is orthonormal under the form <A, B> = -Tr[AB] and consists of
 * skew-Hermitian matrices.
 */

namespace wilson_lab {

enum class GroupKind { su, so };

inline std::string_view to_string(GroupKind kind) { return kind == GroupKind::su ? "su" : "so"; }

inline GroupKind parse_group_kind(std::string_view text) {
  if (text == "su" || text == "SU") {
    return GroupKind::su;
  }
  if (text == "so" || text == "SO") {
    return GroupKind::so;
  }
  throw ConfigError("unknown group kind '" + std::string(text) + "' (expected su or so)");
}

struct LieBasis {
  GroupKind group_kind = GroupKind::su;
  int n = 0;
  std::vector<ComplexMatrix> generators;

  [[nodiscard]] std::size_t dim() const { return generators.size(); }
  [[nodiscard]] Eigen::Index matrix_dim() const { return n; }
};

/// c(gamma, alpha, beta) = -Tr[E^gamma [E^alpha, E^beta]].
class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(std::size_t dim) : dim_(dim), values_(dim * dim * dim, 0.0) {}

  [[nodiscard]] std::size_t dim() const { return dim_; }

  [[nodiscard]] double operator()(std::size_t gamma, std::size_t alpha, std::size_t beta) const {
    return values_[(gamma * dim_ + alpha) * dim_ + beta];
  }
  double& operator()(std::size_t gamma, std::size_t alpha, std::size_t beta) {
    return values_[(gamma * dim_ + alpha) * dim_ + beta];
  }

  /// Every entry multiplied by `factor` (used by scaling checks).
  [[nodiscard]] StructureConstants scaled(double factor) const {
    StructureConstants out = *this;
    for (double& v : out.values_) {
      v *= factor;
    }
    return out;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<double> values_;
};

struct Representation {
  Eigen::Index dim_rep = 0;
  std::vector<ComplexMatrix> images;
  double c_rho = 0.0;
};

struct CasimirOperator {
  ComplexMatrix matrix;
  std::optional<double> scalar;
};

namespace detail {

inline double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline bool is_skew_hermitian(const ComplexMatrix& m, double tol) {
  return max_abs(m + m.adjoint()) < tol;
}

inline void check_basis(const LieBasis& basis) {
  const std::size_t count = basis.dim();
  for (std::size_t a = 0; a < count; ++a) {
    if (!is_skew_hermitian(basis.generators[a], 1e-12)) {
      throw ToleranceError("generator " + std::to_string(a) + " is not skew-Hermitian");
    }
    for (std::size_t b = 0; b < count; ++b) {
      const double form = -(basis.generators[a] * basis.generators[b]).trace().real();
      const double expected = a == b ? 1.0 : 0.0;
      if (std::abs(form - expected) >= 1e-12) {
        throw ToleranceError("basis is not orthonormal under -Tr[AB]");
      }
    }
  }
}

}  // namespace detail

/**
 * Generalized Gell-Mann basis of su(n): for each pair j < k a symmetric and an
 * antisymmetric off-diagonal generator, then n - 1 traceless diagonals. Each
 * Hermitian Gell-Mann matrix is multiplied by -i/sqrt(2).
 *
 * For n = 2 this yields exactly -i*sigma_{x,y,z}/sqrt(2), in that order.
 */
inline LieBasis build_su_basis(int n) {
  detail::require(n >= 2, "su(n) requires n >= 2, got " + std::to_string(n));
  const Complex minus_i_over_root2(0.0, -1.0 / std::sqrt(2.0));
  LieBasis basis{GroupKind::su, n, {}};
  basis.generators.reserve(static_cast<std::size_t>(n * n - 1));
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      ComplexMatrix sym = ComplexMatrix::Zero(n, n);
      sym(j, k) = 1.0;
      sym(k, j) = 1.0;
      basis.generators.push_back(minus_i_over_root2 * sym);

      ComplexMatrix anti = ComplexMatrix::Zero(n, n);
      anti(j, k) = Complex(0.0, -1.0);
      anti(k, j) = Complex(0.0, 1.0);
      basis.generators.push_back(minus_i_over_root2 * anti);
    }
  }
  for (int l = 1; l < n; ++l) {
    const double scale = std::sqrt(2.0 / (static_cast<double>(l) * (l + 1)));
    ComplexMatrix diag = ComplexMatrix::Zero(n, n);
    for (int m = 0; m < l; ++m) {
      diag(m, m) = scale;
    }
    diag(l, l) = -scale * l;
    basis.generators.push_back(minus_i_over_root2 * diag);
  }
  detail::check_basis(basis);
  return basis;
}

/// so(n) basis E_jk = (e_j e_k^T - e_k e_j^T)/sqrt(2), j < k, in lexicographic order.
inline LieBasis build_so_basis(int n) {
  detail::require(n >= 3, "so(n) requires n >= 3, got " + std::to_string(n));
  const double inv_root2 = 1.0 / std::sqrt(2.0);
  LieBasis basis{GroupKind::so, n, {}};
  basis.generators.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      ComplexMatrix e = ComplexMatrix::Zero(n, n);
      e(j, k) = inv_root2;
      e(k, j) = -inv_root2;
      basis.generators.push_back(e);
    }
  }
  detail::check_basis(basis);
  return basis;
}

inline LieBasis build_basis(GroupKind kind, int n) {
  return kind == GroupKind::su ? build_su_basis(n) : build_so_basis(n);
}

/// Antisymmetry in (alpha, beta) is imposed exactly: only alpha < beta is computed.
inline StructureConstants structure_constants(const LieBasis& basis) {
  const std::size_t count = basis.dim();
  StructureConstants c(count);
  for (std::size_t alpha = 0; alpha < count; ++alpha) {
    for (std::size_t beta = alpha + 1; beta < count; ++beta) {
      const ComplexMatrix bracket = basis.generators[alpha] * basis.generators[beta] -
                                    basis.generators[beta] * basis.generators[alpha];
      for (std::size_t gamma = 0; gamma < count; ++gamma) {
        const double value = -(basis.generators[gamma] * bracket).trace().real();
        c(gamma, alpha, beta) = value;
        c(gamma, beta, alpha) = -value;
      }
    }
  }
  return c;
}

/// The defining representation: rho(E^alpha) = E^alpha, C(rho) = 1.
inline Representation standard_rep(const LieBasis& basis) {
  Representation rep;
  rep.dim_rep = basis.matrix_dim();
  rep.images = basis.generators;
  rep.c_rho = 1.0;
  return rep;
}

/// rho = 0 on a 1-dimensional space; every Wilson loop is then exactly 1.
inline Representation trivial_rep(const LieBasis& basis) {
  Representation rep;
  rep.dim_rep = 1;
  rep.images.assign(basis.dim(), ComplexMatrix::Zero(1, 1));
  rep.c_rho = 0.0;
  return rep;
}

/// Checks skew-Hermiticity and Tr[rho(E^a) rho(E^b)] = C(rho) Tr[E^a E^b].
inline void check_representation(const LieBasis& basis, const Representation& rep) {
  detail::require(rep.images.size() == basis.dim(), "representation has the wrong number of images");
  for (std::size_t a = 0; a < basis.dim(); ++a) {
    if (!detail::is_skew_hermitian(rep.images[a], 1e-12)) {
      throw ToleranceError("representation image is not skew-Hermitian");
    }
    for (std::size_t b = 0; b < basis.dim(); ++b) {
      const Complex lhs = (rep.images[a] * rep.images[b]).trace();
      const Complex rhs = rep.c_rho * (basis.generators[a] * basis.generators[b]).trace();
      if (std::abs(lhs - rhs) >= 1e-10) {
        throw ToleranceError("Tr[rho rho] != C(rho) Tr[E E]");
      }
    }
  }
}

/**
 * Quadratic Casimir -sum_alpha rho(E^alpha)^2. The scalar is filled in when the
 * matrix is within 1e-10 (max norm) of a multiple of the identity; otherwise a
 * ToleranceError is thrown unless `require_scalar` is false.
 */
inline CasimirOperator casimir(const Representation& rep, bool require_scalar = true) {
  CasimirOperator op;
  op.matrix = ComplexMatrix::Zero(rep.dim_rep, rep.dim_rep);
  for (const auto& image : rep.images) {
    op.matrix -= image * image;
  }
  const double lambda = op.matrix.trace().real() / static_cast<double>(rep.dim_rep);
  const ComplexMatrix off = op.matrix - lambda * ComplexMatrix::Identity(rep.dim_rep, rep.dim_rep);
  if (detail::max_abs(off) < 1e-10) {
    op.scalar = lambda;
  } else if (require_scalar) {
    throw ToleranceError("Casimir operator is not a scalar multiple of the identity");
  }
  return op;
}

/// Closed-form Casimir scalar of the standard representation: N - 1/N for su(N), (N - 1)/2 for so(N).
inline double standard_casimir(GroupKind kind, int n) {
  return kind == GroupKind::su ? n - 1.0 / n : (n - 1.0) / 2.0;
}

}  // namespace wilson_lab

#endif  // WILSON_LAB_LIE_ALGEBRA_HPP
