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
#ifndef WILSON_LAB_YM_FUNCTIONALS_HPP
#define WILSON_LAB_YM_FUNCTIONALS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "wilson_lab/bargmann.hpp"
#include "wilson_lab/common.hpp"
#include "wilson_lab/field_sampler.hpp"
#include "wilson_lab/lie_algebra.hpp"
#include "wilson_lab/parallel.hpp"
#include "wilson_lab/random.hpp"
#include "wilson_lab/stats.hpp"

/**
 * \file
 * \brief Interaction functionals Y1, Y2, Y3 and the density exp(-(Y1+Y2+Y3)/2).
 *
 * The w-integral against lambda_4 is a Monte-Carlo average over one shared
 * grid. With X = (B, xi_ij(w) E^gamma), P_{i,alpha}(w) = (B, pi_{i,alpha}(w))
 * and S_ij^gamma(w) = sum c_gamma^{alpha beta} P_{i,alpha}(w) P_{j,beta}(w):
 *
 *   Y1 = sum kappa X(w) S(wbar),  Y2 = sum S(w) kappa X(wbar),  Y3 = sum S(w) S(wbar)
 *
 * summed over nodes, gamma and spatial pairs i < j.
 */

namespace wilson_lab {

struct WGrid {
  std::vector<KernelPoint> nodes;
  std::vector<double> weights;
  std::uint64_t seed = 0;

  [[nodiscard]] std::size_t size() const { return nodes.size(); }
};

/// i.i.d. nodes from lambda_4: each of the 8 real coordinates is N(0, 1/2).
inline WGrid make_wgrid(std::size_t n_nodes, std::uint64_t seed) {
  detail::require(n_nodes >= 1, "the w-grid needs at least one node");
  WGrid grid;
  grid.seed = seed;
  grid.nodes.resize(n_nodes);
  grid.weights.assign(n_nodes, 1.0 / static_cast<double>(n_nodes));
  const double scale = std::sqrt(0.5);
  for (std::size_t q = 0; q < n_nodes; ++q) {
    std::array<double, 8> x{};
    CounterNormals(seed, Stream::wgrid, q).fill(x.data(), x.size(), scale);
    for (std::size_t a = 0; a < 4; ++a) {
      grid.nodes[q][a] = Complex(x[2 * a], x[2 * a + 1]);
    }
  }
  return grid;
}

struct GridDualOptions {
  double c_tilde = kDefaultCTilde;
  /// When set, building the duals refuses nodes whose truncation tail exceeds this.
  std::optional<double> tail_eps;
};

/**
 * Duals at every node w and at wbar, precomputed once. Column layout of both
 * matrices: [Re at w | Re at wbar | Im at w | Im at wbar], n columns each.
 * `pi` is in range coordinates; `xi` is psi_w chi_w in domain coordinates,
 * without the two-form sign.
 */
struct GridDuals {
  const FockWorkspace* workspace = nullptr;
  std::vector<double> weights;
  Eigen::MatrixXd pi;
  Eigen::MatrixXd xi;
  double max_tail = 0.0;
  double max_norm_sq = 0.0;

  [[nodiscard]] std::size_t nodes() const { return weights.size(); }
};

inline GridDuals make_grid_duals(const FockWorkspace& ws, const WGrid& grid, const GridDualOptions& options = {}) {
  detail::require(grid.size() >= 1 && grid.weights.size() == grid.size(), "malformed w-grid");
  GridDuals duals;
  duals.workspace = &ws;
  duals.weights = grid.weights;
  const auto n = static_cast<Eigen::Index>(grid.size());
  const auto dim = static_cast<Eigen::Index>(ws.size());
  duals.pi.resize(dim, 4 * n);
  duals.xi.resize(dim, 4 * n);
  for (const KernelPoint& w : grid.nodes) {
    const double r2 = norm_sq(w);
    duals.max_norm_sq = std::max(duals.max_norm_sq, r2);
    if (options.tail_eps) {
      check_tail(ws, r2, *options.tail_eps, options.c_tilde);
    }
  }
  duals.max_tail = tail_mass(duals.max_norm_sq, ws.degree(), options.c_tilde);
  const DualOptions plain{options.c_tilde, std::nullopt};
  parallel_for(0, grid.size(), [&](std::size_t q) {
    const auto col = static_cast<Eigen::Index>(q);
    const KernelPoint& w = grid.nodes[q];
    const KernelPoint wbar = conj(w);
    const CoefVector pw = pi_dual(ws, w, plain);
    const CoefVector pwb = pi_dual(ws, wbar, plain);
    const double scale = psi(w, options.c_tilde);
    const CoefVector xw = scale * chi_coeffs(ws, w);
    const CoefVector xwb = scale * chi_coeffs(ws, wbar);
    duals.pi.col(col) = pw.real();
    duals.pi.col(n + col) = pwb.real();
    duals.pi.col(2 * n + col) = pw.imag();
    duals.pi.col(3 * n + col) = pwb.imag();
    duals.xi.col(col) = xw.real();
    duals.xi.col(n + col) = xwb.real();
    duals.xi.col(2 * n + col) = xw.imag();
    duals.xi.col(3 * n + col) = xwb.imag();
  });
  return duals;
}

struct YValues {
  Complex y1;
  Complex y2;
  double y3 = 0.0;
  double y_density = 1.0;
  /// sum |kappa X + S|^2 - |kappa X|^2 from w-only pairings; equals y1 + y2 + y3.
  double combined = 0.0;
};

namespace detail {

struct ScEntry {
  std::size_t alpha;
  std::size_t beta;
  double value;
};

/// Per gamma, the entries of c_gamma^{alpha beta} that are not negligible.
inline std::vector<std::vector<ScEntry>> sparse_structure(const StructureConstants& sc) {
  double largest = 0.0;
  const std::size_t n = sc.dim();
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        largest = std::max(largest, std::abs(sc(g, a, b)));
      }
    }
  }
  std::vector<std::vector<ScEntry>> out(n);
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        const double v = sc(g, a, b);
        if (std::abs(v) > 1e-14 * largest) {
          out[g].push_back({a, b, v});
        }
      }
    }
  }
  return out;
}

/**
 * Y values of one sample from its pairings. `pt` and `ps` are the 3N x 4n
 * products of the time-like and spatial coefficient rows with the duals.
 */
template <class PT, class PS>
YValues y_from_pairings(const PT& pt, const PS& ps, std::span<const double> weights,
                        const std::vector<std::vector<ScEntry>>& sc, double kappa) {
  const std::size_t n = weights.size();
  const std::size_t lie = sc.size();
  std::vector<Complex> p_w(3 * lie);
  std::vector<Complex> p_wb(3 * lie);
  static constexpr std::array<std::array<int, 3>, 3> kSpatial = {{{1, 2, 1}, {1, 3, -1}, {2, 3, 1}}};
  Complex y1 = 0.0;
  Complex y2 = 0.0;
  double y3 = 0.0;
  double combined = 0.0;
  for (std::size_t q = 0; q < n; ++q) {
    for (std::size_t r = 0; r < 3 * lie; ++r) {
      const auto row = static_cast<Eigen::Index>(r);
      p_w[r] = Complex(pt(row, static_cast<Eigen::Index>(q)), -pt(row, static_cast<Eigen::Index>(2 * n + q)));
      p_wb[r] = Complex(pt(row, static_cast<Eigen::Index>(n + q)), -pt(row, static_cast<Eigen::Index>(3 * n + q)));
    }
    Complex n1 = 0.0;
    Complex n2 = 0.0;
    double n3 = 0.0;
    double nc = 0.0;
    for (std::size_t pair = 0; pair < 3; ++pair) {
      const auto i = static_cast<std::size_t>(kSpatial[pair][0] - 1);
      const auto j = static_cast<std::size_t>(kSpatial[pair][1] - 1);
      const double sign = kSpatial[pair][2];
      for (std::size_t gamma = 0; gamma < lie; ++gamma) {
        const auto row = static_cast<Eigen::Index>(pair * lie + gamma);
        const Complex x_w =
            sign * Complex(ps(row, static_cast<Eigen::Index>(q)), -ps(row, static_cast<Eigen::Index>(2 * n + q)));
        const Complex x_wb = sign * Complex(ps(row, static_cast<Eigen::Index>(n + q)),
                                            -ps(row, static_cast<Eigen::Index>(3 * n + q)));
        Complex s_w = 0.0;
        Complex s_wb = 0.0;
        for (const ScEntry& e : sc[gamma]) {
          s_w += e.value * p_w[i * lie + e.alpha] * p_w[j * lie + e.beta];
          s_wb += e.value * p_wb[i * lie + e.alpha] * p_wb[j * lie + e.beta];
        }
        n1 += kappa * x_w * s_wb;
        n2 += s_w * kappa * x_wb;
        n3 += (s_w * s_wb).real();
        nc += std::norm(kappa * x_w + s_w) - std::norm(kappa * x_w);
      }
    }
    y1 += weights[q] * n1;
    y2 += weights[q] * n2;
    y3 += weights[q] * n3;
    combined += weights[q] * nc;
  }
  YValues out;
  out.y1 = y1;
  out.y2 = y2;
  out.y3 = y3;
  out.combined = combined;
  out.y_density = std::exp(-0.5 * ((y1 + y2).real() + y3));
  return out;
}

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace detail

/// Y values of a single sample on the grid behind `duals`.
inline YValues y_terms(const FieldSample& sample, const GridDuals& duals, const StructureConstants& sc,
                       double kappa) {
  detail::require(duals.workspace != nullptr && sample.basis_size() == duals.workspace->size(),
                  "field sample does not match the grid duals");
  detail::require(sc.dim() == sample.lie_dim(), "structure constants do not match the field sample");
  const auto rows = static_cast<Eigen::Index>(3 * sample.lie_dim());
  const auto dim = static_cast<Eigen::Index>(sample.basis_size());
  const Eigen::Map<const detail::RowMatrix> bt(sample.data().data(), rows, dim);
  const Eigen::Map<const detail::RowMatrix> bs(sample.data().data() + rows * dim, rows, dim);
  const Eigen::MatrixXd pt = bt * duals.pi;
  const Eigen::MatrixXd ps = bs * duals.xi;
  return detail::y_from_pairings(pt, ps, duals.weights, detail::sparse_structure(sc), kappa);
}

/// Everything the estimators need from one field sample.
struct SampleOutput {
  YValues y;
  std::vector<double> g;  // nu components, empty when no nu is given
};

struct BatchOptions {
  bool compute_y = true;
  /// Samples per GEMM block; fixed so results do not depend on the worker count.
  std::size_t block = 64;
};

/**
 * Evaluates samples [first, first + count) of the stream in `config`.
 * `duals` may be null when compute_y is false; `nu` may be null.
 */
inline std::vector<SampleOutput> evaluate_samples(const WienerConfig& config, const GridDuals* duals,
                                                  const StructureConstants& sc, const ProjectedNu* nu,
                                                  std::uint64_t first, std::size_t count,
                                                  const BatchOptions& options = {}) {
  config.validate();
  if (options.compute_y) {
    detail::require(duals != nullptr && duals->workspace == config.workspace,
                    "grid duals were built on a different workspace");
    detail::require(sc.dim() == config.lie_dim, "structure constants do not match the Lie dimension");
  }
  const auto sparse = detail::sparse_structure(sc);
  const std::size_t block = std::max<std::size_t>(1, options.block);
  const std::size_t blocks = (count + block - 1) / block;
  std::vector<SampleOutput> out(count);
  const std::size_t lie = config.lie_dim;
  const std::size_t dim = config.workspace->size();
  parallel_for(0, blocks, [&](std::size_t b) {
    const std::size_t lo = b * block;
    const std::size_t hi = std::min(count, lo + block);
    const std::size_t m = hi - lo;
    const auto rows = static_cast<Eigen::Index>(3 * lie);
    detail::RowMatrix bt(static_cast<Eigen::Index>(m) * rows, static_cast<Eigen::Index>(dim));
    detail::RowMatrix bs(static_cast<Eigen::Index>(m) * rows, static_cast<Eigen::Index>(dim));
    for (std::size_t s = 0; s < m; ++s) {
      const FieldSample sample = sample_field(config, first + lo + s);
      if (nu != nullptr) {
        out[lo + s].g = nu_components(sample, *nu);
      }
      const std::size_t half = 3 * lie * dim;
      std::memcpy(bt.data() + s * half, sample.data().data(), half * sizeof(double));
      std::memcpy(bs.data() + s * half, sample.data().data() + half, half * sizeof(double));
    }
    if (!options.compute_y) {
      return;
    }
    const Eigen::MatrixXd pt = bt * duals->pi;
    const Eigen::MatrixXd ps = bs * duals->xi;
    for (std::size_t s = 0; s < m; ++s) {
      const auto r0 = static_cast<Eigen::Index>(s) * rows;
      out[lo + s].y = detail::y_from_pairings(pt.middleRows(r0, rows), ps.middleRows(r0, rows), duals->weights,
                                              sparse, config.kappa);
    }
  });
  return out;
}

struct MomentEstimate {
  double p = 1.0;
  double mean = 0.0;
  double std_error = 0.0;
};

/// Monte-Carlo E[Y_density^p] over samples 0..n_samples-1.
inline MomentEstimate density_moment(const WienerConfig& config, const GridDuals& duals, const StructureConstants& sc,
                                     std::size_t n_samples, double p) {
  if (!(p >= 1.0 && p < kPi)) {
    throw ConfigError("density moment order p must satisfy 1 <= p < pi");
  }
  detail::require(n_samples >= 2, "density moment needs at least two samples");
  const auto outputs = evaluate_samples(config, &duals, sc, nullptr, 0, n_samples);
  std::vector<double> values(n_samples);
  for (std::size_t s = 0; s < n_samples; ++s) {
    values[s] = std::pow(outputs[s].y.y_density, p);
  }
  const MeanEstimate m = mean_estimate(values);
  return {p, m.mean, m.std_error};
}

}  // namespace wilson_lab

#endif  // WILSON_LAB_YM_FUNCTIONALS_HPP
