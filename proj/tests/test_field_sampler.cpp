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
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "wilson_lab/field_sampler.hpp"
#include "wilson_lab/stats.hpp"

namespace wl = wilson_lab;

namespace {

struct Moments {
  double mean = 0.0;
  double var = 0.0;
};

Moments moments(const std::vector<double>& x) {
  Moments m;
  for (double v : x) {
    m.mean += v;
  }
  m.mean /= static_cast<double>(x.size());
  for (double v : x) {
    m.var += (v - m.mean) * (v - m.mean);
  }
  m.var /= static_cast<double>(x.size() - 1);
  return m;
}

// covariance estimate and its standard error under independence
std::pair<double, double> covariance(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  const Moments mx = moments(x);
  const Moments my = moments(y);
  double c = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    c += (x[i] - mx.mean) * (y[i] - my.mean);
  }
  return {c / (n - 1.0), std::sqrt(mx.var * my.var / n)};
}

double normal_cdf(double x, double sd) { return 0.5 * std::erfc(-x / (sd * std::sqrt(2.0))); }

}  // namespace

TEST(FieldSampler, Determinism) {
  const wl::FockWorkspace ws(3);
  const wl::WienerConfig config{2.0, &ws, 3, 99};
  const wl::FieldSample a = wl::sample_field(config, 17);
  const wl::FieldSample b = wl::sample_field(config, 17);
  ASSERT_EQ(a.data().size(), 6 * 3 * ws.size());
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    EXPECT_EQ(a.data()[i], b.data()[i]);
    EXPECT_TRUE(std::isfinite(a.data()[i]));
  }
  const wl::FieldSample c = wl::sample_field(config, 18);
  EXPECT_NE(a.data()[0], c.data()[0]);
  EXPECT_THROW(wl::sample_field({0.0, &ws, 3, 1}, 0), wl::ConfigError);
}

TEST(FieldSampler, CoefficientVarianceAndIndependence) {
  const wl::FockWorkspace ws(1);
  const double kappa = 2.0;
  const wl::WienerConfig config{kappa, &ws, 3, 7};
  const std::size_t n = 100000;
  std::vector<double> x(n);
  std::vector<double> y(n);
  for (std::size_t s = 0; s < n; ++s) {
    const wl::FieldSample sample = wl::sample_field(config, s);
    x[s] = sample.slot(1, 0)(2);
    y[s] = sample.slot(1, 1)(2);
  }
  const double target = 1.0 / (kappa * kappa);
  EXPECT_NEAR(moments(x).var / target, 1.0, 0.03);
  const auto [cov, se] = covariance(x, y);
  EXPECT_LT(std::abs(cov), 3.0 * se);
}

class PairingTest : public ::testing::Test {
 protected:
  static constexpr double kKappa = 2.0;
  static constexpr std::size_t kSamples = 10000;
  wl::FockWorkspace ws{8};
  wl::WienerConfig config{kKappa, &ws, 3, 2026};
};

TEST_F(PairingTest, XiPairingMomentsAndConjugation) {
  const wl::KernelPoint w = {wl::Complex(0.3, 0.2), wl::Complex(-0.4, 0.1), wl::Complex(0.2, -0.3), 0.1};
  for (auto [a, b] : {std::pair{0, 2}, std::pair{1, 3}}) {
    const wl::CoefVector dual = wl::xi_slot_dual(ws, a, b, w);
    const double expected = dual.squaredNorm() / (kKappa * kKappa);
    std::vector<double> re(kSamples);
    std::vector<double> im(kSamples);
    std::vector<double> modulus(kSamples);
    for (std::size_t s = 0; s < kSamples; ++s) {
      const wl::FieldSample sample = wl::sample_field(config, s);
      const wl::Complex p = wl::pair_xi(sample, ws, a, b, 1, w);
      re[s] = p.real();
      im[s] = p.imag();
      modulus[s] = std::norm(p);
      if (s < 20) {
        EXPECT_LT(std::abs(std::conj(p) - wl::pair_xi(sample, ws, a, b, 1, wl::conj(w))), 1e-14);
      }
    }
    EXPECT_NEAR(moments(modulus).mean / expected, 1.0, 0.05);
    const Moments mr = moments(re);
    const Moments mi = moments(im);
    EXPECT_LT(std::abs(mr.mean), 3.0 * std::sqrt(mr.var / kSamples));
    EXPECT_LT(std::abs(mi.mean), 3.0 * std::sqrt(mi.var / kSamples));
  }
}

TEST_F(PairingTest, XiPairingIsNormalAtRealPoint) {
  const wl::KernelPoint w = {0.5, -0.3, 0.2, 0.4};
  const double sd = wl::xi_slot_dual(ws, 1, 2, w).norm() / kKappa;
  std::vector<double> values(kSamples);
  for (std::size_t s = 0; s < kSamples; ++s) {
    const wl::Complex p = wl::pair_xi(wl::sample_field(config, s), ws, 1, 2, 0, w);
    EXPECT_EQ(p.imag(), 0.0);
    values[s] = p.real();
  }
  const double d = wl::ks_statistic(values, [sd](double x) { return normal_cdf(x, sd); });
  EXPECT_LT(d, wl::ks_critical_1e3(kSamples));
}

TEST_F(PairingTest, PiPairingReproducesKnownPotential) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> normal;
  std::vector<std::array<Eigen::VectorXd, 3>> potentials(3);
  for (auto& per_alpha : potentials) {
    for (auto& x : per_alpha) {
      x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ws.size()));
      for (Eigen::Index k = 0; k < x.size(); ++k) {
        x(k) = normal(rng);
      }
    }
  }
  const wl::FieldSample sample = wl::sample_from_potentials(ws, kKappa, potentials);
  for (int trial = 0; trial < 5; ++trial) {
    const wl::KernelPoint w = {wl::Complex(0.2 * trial, 0.1), wl::Complex(-0.3, 0.05 * trial), 0.4,
                               wl::Complex(0.0, -0.2)};
    for (int i = 1; i <= 3; ++i) {
      for (std::size_t alpha = 0; alpha < 3; ++alpha) {
        const wl::Complex expected =
            wl::psi(w) * wl::evaluate(ws, potentials[alpha][static_cast<std::size_t>(i - 1)].cast<wl::Complex>(), w);
        EXPECT_LT(std::abs(wl::pair_pi(sample, ws, i, alpha, w) - expected), 1e-8);
      }
    }
  }
  EXPECT_THROW(wl::pair_pi(sample, ws, 0, 0, {}), wl::ConfigError);
}

TEST_F(PairingTest, PiPairingVarianceBoundAndIndependence) {
  const wl::FockWorkspace big(30);
  const wl::WienerConfig cfg{kKappa, &big, 3, 5};
  const wl::KernelPoint w = {wl::Complex(0.9, 0.3), wl::Complex(-0.6, 0.2), wl::Complex(0.5, -0.7), 0.4};
  ASSERT_LE(wl::norm_sq(w), 4.0);
  const wl::CoefVector dual = wl::pi_dual(big, w);
  const std::size_t n = 2000;
  std::vector<double> x(n);
  std::vector<double> y(n);
  std::vector<double> modulus(n);
  for (std::size_t s = 0; s < n; ++s) {
    const wl::FieldSample sample = wl::sample_field(cfg, s);
    const wl::Complex p0 = wl::detail::pair_real(sample.slot(0, 0), dual);
    const wl::Complex p1 = wl::detail::pair_real(sample.slot(0, 1), dual);
    x[s] = p0.real();
    y[s] = p1.real();
    modulus[s] = std::norm(p0);
  }
  EXPECT_LE(dual.squaredNorm(), 40.0 / (2.0 * M_PI));
  const Moments m = moments(modulus);
  EXPECT_LE(m.mean, 40.0 / (2.0 * M_PI) / (kKappa * kKappa) + 3.0 * std::sqrt(m.var / n));
  const auto [cov, se] = covariance(x, y);
  EXPECT_LT(std::abs(cov), 3.0 * se);
}

TEST_F(PairingTest, NuPairing) {
  const wl::RectSurface r(wl::Vec3(0.2, 0.1, 0.0), 0.3);
  const wl::NuVector nu = wl::nu_coeffs(r, kKappa, ws, wl::tensor_rule(16));
  const wl::ProjectedNu pnu = wl::project_nu(ws, nu);
  EXPECT_LE(pnu.norm_sq_over_kappa_sq, nu.norm_sq_over_kappa_sq + 1e-15);
  const wl::LieBasis basis = wl::build_su_basis(2);
  const wl::Representation rep = wl::standard_rep(basis);
  std::array<std::vector<double>, 3> g;
  for (auto& v : g) {
    v.resize(kSamples);
  }
  for (std::size_t s = 0; s < kSamples; ++s) {
    const wl::FieldSample sample = wl::sample_field(config, s);
    const std::vector<double> comps = wl::nu_components(sample, pnu);
    for (std::size_t a = 0; a < 3; ++a) {
      g[a][s] = comps[a];
    }
    if (s < 10) {
      const wl::ComplexMatrix x = wl::pair_nu(sample, ws, nu, rep);
      EXPECT_LT((x + x.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
  for (std::size_t a = 0; a < 3; ++a) {
    EXPECT_NEAR(moments(g[a]).var / pnu.norm_sq_over_kappa_sq, 1.0, 0.05);
  }
  for (auto [a, b] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
    const auto [cov, se] = covariance(g[a], g[b]);
    EXPECT_LT(std::abs(cov), 3.0 * se);
  }
  const wl::FockWorkspace other(5);
  EXPECT_THROW(wl::pair_nu(wl::sample_field({kKappa, &other, 3, 1}, 0), ws, nu, rep), wl::ConfigError);
}

TEST_F(PairingTest, PairingsAreLinear) {
  const wl::FieldSample a = wl::sample_field(config, 1);
  const wl::FieldSample b = wl::sample_field(config, 2);
  wl::FieldSample sum = a;
  sum += b;
  const wl::KernelPoint w = {wl::Complex(0.2, 0.1), 0.3, wl::Complex(0.0, -0.4), 0.1};
  for (auto [x, y] : wl::kTwoFormPairs) {
    const wl::Complex lhs = wl::pair_xi(sum, ws, x, y, 2, w);
    const wl::Complex rhs = wl::pair_xi(a, ws, x, y, 2, w) + wl::pair_xi(b, ws, x, y, 2, w);
    EXPECT_LT(std::abs(lhs - rhs), 1e-14);
  }
  EXPECT_LT(std::abs(wl::pair_pi(sum, ws, 2, 1, w) - wl::pair_pi(a, ws, 2, 1, w) - wl::pair_pi(b, ws, 2, 1, w)), 1e-14);
}

TEST_F(PairingTest, TailRefusal) {
  const wl::FieldSample sample = wl::sample_field(config, 0);
  wl::DualOptions options;
  options.tail_eps = 1e-6;
  const wl::KernelPoint far = {3.0, 0.0, 0.0, 0.0};
  EXPECT_THROW(wl::pair_xi(sample, ws, 1, 2, 0, far, options), wl::TailBoundError);
  EXPECT_THROW(wl::pair_pi(sample, ws, 1, 0, far, options), wl::TailBoundError);
  EXPECT_NO_THROW(wl::pair_xi(sample, ws, 1, 2, 0, {0.1, 0.0, 0.0, 0.0}, options));
}
