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

#ifndef WILSON_LAB_BARGMANN_HPP
#define WILSON_LAB_BARGMANN_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <boost/math/special_functions/gamma.hpp>

#include "wilson_lab/common.hpp"

/**
 * \file
 * \brief Truncated Segal-Bargmann (Fock) space over C^4.
 *
 * Coefficients are taken against the orthonormal monomials
 * e_k(z) = z^k / sqrt(k!) (multi-index k, Gaussian measure
 * pi^-4 exp(-|z|^2)). In those coordinates the operator
 *
 *   d_a [z_a^p ...] = (p/2) z_a^{p-1} - (1/2) z_a^{p+1}
 *
 * acts as (annihilation - creation)/2 on axis a.
 *
 * A workspace of degree D holds the domain basis (total degree <= D) and an
 * extended basis (total degree <= D + 1) that contains it as a prefix, so
 * d_a maps the domain into the extended basis without truncation.
 */

namespace wilson_lab {

using MultiIndex = std::array<int, 4>;
using KernelPoint = std::array<Complex, 4>;

inline int total_degree(const MultiIndex& k) { return k[0] + k[1] + k[2] + k[3]; }

inline double norm_sq(const KernelPoint& w) {
  return std::norm(w[0]) + std::norm(w[1]) + std::norm(w[2]) + std::norm(w[3]);
}

inline KernelPoint conj(const KernelPoint& w) {
  return {std::conj(w[0]), std::conj(w[1]), std::conj(w[2]), std::conj(w[3])};
}

/// One block of the range of d_0: the chain z_0^r * (z_1^k1 z_2^k2 z_3^k3).
struct RangeBlock {
  MultiIndex rest;     // rest[0] is always 0
  int length = 0;      // domain chain length L = D - |rest| + 1
  std::size_t offset = 0;  // first range coordinate of this block
};

class FockWorkspace {
 public:
  explicit FockWorkspace(int degree) : degree_(degree) {
    detail::require(degree >= 0, "Fock degree must be non-negative");
    detail::require(degree <= 60, "Fock degree above 60 is not supported");
    build_bases();
    build_d_ops();
    build_range();
  }

  [[nodiscard]] int degree() const { return degree_; }
  [[nodiscard]] std::size_t size() const { return domain_size_; }
  [[nodiscard]] std::size_t extended_size() const { return basis_.size(); }

  /// Domain basis (degree <= D) is the prefix [0, size()) of this list.
  [[nodiscard]] const std::vector<MultiIndex>& extended_basis() const { return basis_; }
  [[nodiscard]] const MultiIndex& index(std::size_t i) const { return basis_[i]; }

  /// Position of k in the extended basis, or -1 when |k| > D + 1.
  [[nodiscard]] std::ptrdiff_t position(const MultiIndex& k) const {
    for (int v : k) {
      if (v < 0) {
        return -1;
      }
    }
    if (total_degree(k) > degree_ + 1) {
      return -1;
    }
    return lookup_[lookup_key(k)];
  }

  /// Matrix of d_a: extended_size() x size().
  [[nodiscard]] const Eigen::SparseMatrix<double>& d_op(int axis) const {
    detail::require(axis >= 0 && axis < 4, "axis must be in 0..3");
    return d_ops_[static_cast<std::size_t>(axis)];
  }

  /// Orthonormal basis of range(d_0), extended_size() x size().
  [[nodiscard]] const Eigen::SparseMatrix<double>& d0_range_basis() const { return range_basis_; }

  [[nodiscard]] const std::vector<RangeBlock>& range_blocks() const { return blocks_; }

  /// Thin QR factors of the 1-D d_0 chain with L domain entries (L = 1..D+1).
  [[nodiscard]] const Eigen::MatrixXd& chain_q(int length) const { return chain_q_[static_cast<std::size_t>(length)]; }
  [[nodiscard]] const Eigen::MatrixXd& chain_r(int length) const { return chain_r_[static_cast<std::size_t>(length)]; }

  /// Largest condition number of the normal equations M^T M over all chains.
  [[nodiscard]] double normal_condition() const { return normal_condition_; }
  [[nodiscard]] double d0_min_singular_value() const { return min_singular_; }

  /// Per-axis tables conj(w_a)^p / sqrt(p!) for p <= D + 1.
  [[nodiscard]] std::array<std::vector<Complex>, 4> axis_tables(const KernelPoint& w) const {
    std::array<std::vector<Complex>, 4> tables;
    for (std::size_t a = 0; a < 4; ++a) {
      auto& t = tables[a];
      t.resize(static_cast<std::size_t>(degree_) + 2);
      t[0] = 1.0;
      const Complex wbar = std::conj(w[a]);
      for (std::size_t p = 1; p < t.size(); ++p) {
        t[p] = t[p - 1] * wbar / std::sqrt(static_cast<double>(p));
      }
    }
    return tables;
  }

 private:
  [[nodiscard]] std::size_t lookup_key(const MultiIndex& k) const {
    const auto side = static_cast<std::size_t>(degree_) + 2;
    return ((static_cast<std::size_t>(k[0]) * side + static_cast<std::size_t>(k[1])) * side +
            static_cast<std::size_t>(k[2])) * side + static_cast<std::size_t>(k[3]);
  }

  void build_bases() {
    const int top = degree_ + 1;
    for (int k0 = 0; k0 <= top; ++k0) {
      for (int k1 = 0; k0 + k1 <= top; ++k1) {
        for (int k2 = 0; k0 + k1 + k2 <= top; ++k2) {
          for (int k3 = 0; k0 + k1 + k2 + k3 <= top; ++k3) {
            basis_.push_back({k0, k1, k2, k3});
          }
        }
      }
    }
    // graded lexicographic: (|k|, k0, k1, k2, k3)
    std::sort(basis_.begin(), basis_.end(), [](const MultiIndex& x, const MultiIndex& y) {
      const int dx = total_degree(x);
      const int dy = total_degree(y);
      return dx != dy ? dx < dy : x < y;
    });
    domain_size_ = static_cast<std::size_t>(
        std::count_if(basis_.begin(), basis_.end(), [this](const MultiIndex& k) { return total_degree(k) <= degree_; }));
    const auto side = static_cast<std::size_t>(degree_) + 2;
    lookup_.assign(side * side * side * side, -1);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      lookup_[lookup_key(basis_[i])] = static_cast<std::ptrdiff_t>(i);
    }
  }

  void build_d_ops() {
    const auto rows = static_cast<Eigen::Index>(basis_.size());
    const auto cols = static_cast<Eigen::Index>(domain_size_);
    for (int axis = 0; axis < 4; ++axis) {
      std::vector<Eigen::Triplet<double>> entries;
      entries.reserve(2 * domain_size_);
      for (std::size_t j = 0; j < domain_size_; ++j) {
        const MultiIndex& k = basis_[j];
        const int p = k[static_cast<std::size_t>(axis)];
        if (p > 0) {
          MultiIndex down = k;
          --down[static_cast<std::size_t>(axis)];
          entries.emplace_back(position(down), static_cast<Eigen::Index>(j), 0.5 * std::sqrt(static_cast<double>(p)));
        }
        MultiIndex up = k;
        ++up[static_cast<std::size_t>(axis)];
        entries.emplace_back(position(up), static_cast<Eigen::Index>(j), -0.5 * std::sqrt(static_cast<double>(p + 1)));
      }
      Eigen::SparseMatrix<double> m(rows, cols);
      m.setFromTriplets(entries.begin(), entries.end());
      d_ops_[static_cast<std::size_t>(axis)] = std::move(m);
    }
  }

  static Eigen::MatrixXd chain_matrix(int length) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(length + 1, length);
    for (int p = 0; p < length; ++p) {
      if (p > 0) {
        m(p - 1, p) = 0.5 * std::sqrt(static_cast<double>(p));
      }
      m(p + 1, p) = -0.5 * std::sqrt(static_cast<double>(p + 1));
    }
    return m;
  }

  void build_range() {
    const auto chains = static_cast<std::size_t>(degree_) + 2;
    chain_q_.resize(chains);
    chain_r_.resize(chains);
    min_singular_ = std::numeric_limits<double>::infinity();
    for (int length = 1; length <= degree_ + 1; ++length) {
      const Eigen::MatrixXd m = chain_matrix(length);
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
      chain_q_[static_cast<std::size_t>(length)] = qr.householderQ() * Eigen::MatrixXd::Identity(length + 1, length);
      chain_r_[static_cast<std::size_t>(length)] =
          qr.matrixQR().topRows(length).triangularView<Eigen::Upper>();
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
      const auto& sv = svd.singularValues();
      const double smin = sv(sv.size() - 1);
      min_singular_ = std::min(min_singular_, smin);
      const double cond = smin > 0.0 ? (sv(0) / smin) * (sv(0) / smin) : std::numeric_limits<double>::infinity();
      normal_condition_ = std::max(normal_condition_, cond);
    }
    if (!(normal_condition_ <= 1e12)) {
      throw ConditionError("d_0 normal equations too ill-conditioned (cond = " + std::to_string(normal_condition_) + ")");
    }

    std::size_t offset = 0;
    for (std::size_t i = 0; i < domain_size_; ++i) {
      const MultiIndex& k = basis_[i];
      if (k[0] != 0) {
        continue;
      }
      const int length = degree_ - total_degree(k) + 1;
      blocks_.push_back({k, length, offset});
      offset += static_cast<std::size_t>(length);
    }
    std::vector<Eigen::Triplet<double>> entries;
    for (const RangeBlock& block : blocks_) {
      const Eigen::MatrixXd& q = chain_q(block.length);
      for (int r = 0; r <= block.length; ++r) {
        MultiIndex k = block.rest;
        k[0] = r;
        const auto row = position(k);
        for (int c = 0; c < block.length; ++c) {
          entries.emplace_back(row, static_cast<Eigen::Index>(block.offset) + c, q(r, c));
        }
      }
    }
    range_basis_.resize(static_cast<Eigen::Index>(basis_.size()), static_cast<Eigen::Index>(domain_size_));
    range_basis_.setFromTriplets(entries.begin(), entries.end());
  }

  int degree_;
  std::size_t domain_size_ = 0;
  std::vector<MultiIndex> basis_;
  std::vector<std::ptrdiff_t> lookup_;
  std::array<Eigen::SparseMatrix<double>, 4> d_ops_;
  std::vector<Eigen::MatrixXd> chain_q_;
  std::vector<Eigen::MatrixXd> chain_r_;
  std::vector<RangeBlock> blocks_;
  Eigen::SparseMatrix<double> range_basis_;
  double normal_condition_ = 0.0;
  double min_singular_ = 0.0;
};

/// d_a applied to domain coefficients; result has extended_size() entries.
inline CoefVector apply_d(const FockWorkspace& ws, int axis, const CoefVector& f) {
  detail::require(static_cast<std::size_t>(f.size()) == ws.size(), "coefficient vector does not match workspace");
  return ws.d_op(axis).cast<Complex>() * f;
}

/// Renormalization factor c_tilde * exp(-|w|^2 / 2).
inline double psi(const KernelPoint& w, double c_tilde = kDefaultCTilde) {
  return c_tilde * std::exp(-0.5 * norm_sq(w));
}

/// Reproducing kernel exp(conj(w).z) truncated at degree D.
inline CoefVector chi_coeffs(const FockWorkspace& ws, const KernelPoint& w) {
  const auto t = ws.axis_tables(w);
  CoefVector out(static_cast<Eigen::Index>(ws.size()));
  for (std::size_t i = 0; i < ws.size(); ++i) {
    const MultiIndex& k = ws.index(i);
    out(static_cast<Eigen::Index>(i)) = t[0][static_cast<std::size_t>(k[0])] * t[1][static_cast<std::size_t>(k[1])] *
                                        t[2][static_cast<std::size_t>(k[2])] * t[3][static_cast<std::size_t>(k[3])];
  }
  return out;
}

/// Evaluates f = sum_k f_k e_k at z.
inline Complex evaluate(const FockWorkspace& ws, const CoefVector& f, const KernelPoint& z) {
  detail::require(static_cast<std::size_t>(f.size()) <= ws.extended_size(), "coefficient vector too long");
  const auto t = ws.axis_tables(conj(z));  // tables hold z^p / sqrt(p!)
  Complex acc = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const MultiIndex& k = ws.index(static_cast<std::size_t>(i));
    acc += f(i) * t[0][static_cast<std::size_t>(k[0])] * t[1][static_cast<std::size_t>(k[1])] *
           t[2][static_cast<std::size_t>(k[2])] * t[3][static_cast<std::size_t>(k[3])];
  }
  return acc;
}

/// Sesquilinear <f, g> = sum_k f_k conj(g_k).
inline Complex fock_inner(const CoefVector& f, const CoefVector& g) {
  if (f.size() != g.size()) {
    throw ConfigError("fock_inner: length mismatch (" + std::to_string(f.size()) + " vs " +
                      std::to_string(g.size()) + ")");
  }
  return g.dot(f);  // Eigen's dot conjugates its left operand
}

/// Two-form index pair a < b, plus the sign (-1)^(a*b).
inline int two_form_sign(int a, int b) { return (a * b) % 2 == 0 ? 1 : -1; }

struct XiDual {
  CoefVector coeffs;  // psi(w) * chi_w
  int sign = 1;       // (-1)^(a b); the dx^a ^ dx^b slot is carried by the caller
};

inline XiDual xi_coeffs(const FockWorkspace& ws, int a, int b, const KernelPoint& w,
                        double c_tilde = kDefaultCTilde) {
  detail::require(0 <= a && a < b && b <= 3, "xi_coeffs requires 0 <= a < b <= 3");
  return {psi(w, c_tilde) * chi_coeffs(ws, w), two_form_sign(a, b)};
}

/**
 * Coordinates of zeta(w) in d0_range_basis(): the minimum-norm solution of
 * M^T zeta = chi_w, which lies in range(M) and so equals Q R^{-T} chi_w
 * block by block.
 */
inline CoefVector zeta_range_coords(const FockWorkspace& ws, const KernelPoint& w) {
  const auto t = ws.axis_tables(w);
  const int top = ws.degree() + 1;
  std::vector<Eigen::VectorXcd> solved(static_cast<std::size_t>(top) + 1);
  for (int length = 1; length <= top; ++length) {
    Eigen::VectorXcd rhs(length);
    for (int p = 0; p < length; ++p) {
      rhs(p) = t[0][static_cast<std::size_t>(p)];
    }
    const auto lower = ws.chain_r(length).transpose().triangularView<Eigen::Lower>();
    const Eigen::VectorXd re = lower.solve(rhs.real().eval());
    const Eigen::VectorXd im = lower.solve(rhs.imag().eval());
    solved[static_cast<std::size_t>(length)] = re.cast<Complex>() + Complex(0.0, 1.0) * im.cast<Complex>();
  }
  CoefVector out(static_cast<Eigen::Index>(ws.size()));
  for (const RangeBlock& block : ws.range_blocks()) {
    const Complex rest = t[1][static_cast<std::size_t>(block.rest[1])] * t[2][static_cast<std::size_t>(block.rest[2])] *
                         t[3][static_cast<std::size_t>(block.rest[3])];
    out.segment(static_cast<Eigen::Index>(block.offset), block.length) =
        rest * solved[static_cast<std::size_t>(block.length)];
  }
  return out;
}

/// zeta(w) in extended coefficients; optionally multiplied by psi(w).
inline CoefVector zeta_coeffs(const FockWorkspace& ws, const KernelPoint& w, bool with_psi = false,
                              double c_tilde = kDefaultCTilde) {
  CoefVector out = ws.d0_range_basis().cast<Complex>() * zeta_range_coords(ws, w);
  if (with_psi) {
    out *= psi(w, c_tilde);
  }
  return out;
}

/// Orthogonal projection of domain or extended coefficients onto range(d_0), in range coordinates.
inline CoefVector project_to_range(const FockWorkspace& ws, const CoefVector& v) {
  detail::require(static_cast<std::size_t>(v.size()) == ws.size() ||
                      static_cast<std::size_t>(v.size()) == ws.extended_size(),
                  "coefficient vector does not match workspace");
  CoefVector padded = CoefVector::Zero(static_cast<Eigen::Index>(ws.extended_size()));
  padded.head(v.size()) = v;
  return ws.d0_range_basis().transpose().cast<Complex>() * padded;
}

/// Truncation-free <xi_ab(u), xi_cd(v)>.
inline Complex kernel_xi_inner(int a, int b, const KernelPoint& u, int c, int d, const KernelPoint& v,
                               double c_tilde = kDefaultCTilde) {
  if (a != c || b != d) {
    return 0.0;
  }
  Complex exponent = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    exponent += std::conj(u[i]) * v[i];
  }
  const double signs = two_form_sign(a, b) * two_form_sign(c, d);
  return signs * psi(u, c_tilde) * psi(v, c_tilde) * std::exp(exponent);
}

/// Mass of psi_w chi_w beyond degree D: c_tilde^2 P(Poisson(|w|^2) > D).
inline double tail_mass(double w_norm_sq, int degree, double c_tilde = kDefaultCTilde) {
  if (w_norm_sq <= 0.0) {
    return 0.0;
  }
  return c_tilde * c_tilde * boost::math::gamma_p(static_cast<double>(degree) + 1.0, w_norm_sq);
}

/// Smallest degree whose tail mass at |w|^2 = w_norm_sq is at most eps.
inline int auto_degree(double w_norm_sq, double eps, double c_tilde = kDefaultCTilde, int max_degree = 60) {
  detail::require(eps > 0.0, "tail tolerance must be positive");
  for (int d = 0; d <= max_degree; ++d) {
    if (tail_mass(w_norm_sq, d, c_tilde) <= eps) {
      return d;
    }
  }
  std::ostringstream msg;
  msg << "no degree <= " << max_degree << " brings the truncation tail at |w|^2 = " << w_norm_sq
      << " below " << eps << "; reduce kappa or the surface size";
  throw TailBoundError(msg.str());
}

/// Largest |w|^2 whose tail mass at `degree` stays within eps (bisection; tail is increasing in |w|^2).
inline double max_resolvable_norm_sq(int degree, double eps, double c_tilde = kDefaultCTilde) {
  detail::require(eps > 0.0, "tail tolerance must be positive");
  double lo = 0.0;
  double hi = 1.0;
  while (tail_mass(hi, degree, c_tilde) <= eps) {
    hi *= 2.0;
  }
  for (int iter = 0; iter < 200 && hi - lo > 1e-12 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (tail_mass(mid, degree, c_tilde) <= eps ? lo : hi) = mid;
  }
  return lo;
}

/// Throws TailBoundError when the workspace cannot resolve |w|^2 = w_norm_sq within eps.
inline void check_tail(const FockWorkspace& ws, double w_norm_sq, double eps, double c_tilde = kDefaultCTilde) {
  const double tail = tail_mass(w_norm_sq, ws.degree(), c_tilde);
  if (tail > eps) {
    std::ostringstream msg;
    msg << "truncation tail " << tail << " at |w|^2 = " << w_norm_sq << " exceeds " << eps << " at degree "
        << ws.degree() << "; a degree of at least " << auto_degree(w_norm_sq, eps, c_tilde)
        << " is needed (or reduce kappa, |a| or T)";
    throw TailBoundError(msg.str());
  }
}

}  // namespace wilson_lab

#endif  // WILSON_LAB_BARGMANN_HPP
