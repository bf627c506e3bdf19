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

#include <gtest/gtest.h>

#include "wilson_lab/lie_algebra.hpp"

namespace wl = wilson_lab;

namespace {

// Pauli matrices, written out independently of the library's construction.
wl::ComplexMatrix pauli(int k) {
  wl::ComplexMatrix m(2, 2);
  const wl::Complex i(0.0, 1.0);
  if (k == 0) {
    m << 0, 1, 1, 0;
  } else if (k == 1) {
    m << 0, -i, i, 0;
  } else {
    m << 1, 0, 0, -1;
  }
  return m;
}

double levi_civita(int a, int b, int c) { return (a - b) * (b - c) * (c - a) / 2.0; }

double max_abs(const wl::ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

class BasisTest : public ::testing::TestWithParam<std::pair<wl::GroupKind, int>> {};

TEST_P(BasisTest, OrthonormalSkewHermitian) {
  const auto [kind, n] = GetParam();
  const wl::LieBasis basis = wl::build_basis(kind, n);
  const std::size_t expected = kind == wl::GroupKind::su ? n * n - 1 : n * (n - 1) / 2;
  ASSERT_EQ(basis.dim(), expected);
  for (std::size_t a = 0; a < basis.dim(); ++a) {
    EXPECT_LT(max_abs(basis.generators[a] + basis.generators[a].adjoint()), 1e-12);
    EXPECT_LT(std::abs(basis.generators[a].trace()), 1e-12);
    for (std::size_t b = 0; b < basis.dim(); ++b) {
      const double inner = -(basis.generators[a] * basis.generators[b]).trace().real();
      EXPECT_NEAR(inner, a == b ? 1.0 : 0.0, 1e-12);
    }
  }
}

TEST_P(BasisTest, CasimirIdentityAndCommutation) {
  const auto [kind, n] = GetParam();
  const wl::LieBasis basis = wl::build_basis(kind, n);
  wl::ComplexMatrix sum = wl::ComplexMatrix::Zero(n, n);
  for (const auto& e : basis.generators) {
    sum += e * e;
  }
  const double expected = kind == wl::GroupKind::su ? 1.0 / n - n : (1.0 - n) / 2.0;
  EXPECT_LT(max_abs(sum - expected * wl::ComplexMatrix::Identity(n, n)), 1e-10);
  const wl::CasimirOperator op = wl::casimir(wl::standard_rep(basis));
  ASSERT_TRUE(op.scalar.has_value());
  EXPECT_NEAR(*op.scalar, -expected, 1e-10);
  for (const auto& e : basis.generators) {
    EXPECT_LT(max_abs(op.matrix * e - e * op.matrix), 1e-10);
  }
}

TEST_P(BasisTest, StructureConstantsAntisymmetricAndJacobi) {
  const auto [kind, n] = GetParam();
  const wl::LieBasis basis = wl::build_basis(kind, n);
  const wl::StructureConstants c = wl::structure_constants(basis);
  const std::size_t d = basis.dim();
  for (std::size_t g = 0; g < d; ++g) {
    for (std::size_t a = 0; a < d; ++a) {
      EXPECT_EQ(c(g, a, a), 0.0);
      for (std::size_t b = 0; b < d; ++b) {
        EXPECT_EQ(c(g, a, b), -c(g, b, a));
        EXPECT_NEAR(c(g, a, b), c(a, b, g), 1e-12);
        // brute-force recomputation from the commutator
        const wl::ComplexMatrix& ea = basis.generators[a];
        const wl::ComplexMatrix& eb = basis.generators[b];
        const double direct = -(basis.generators[g] * (ea * eb - eb * ea)).trace().real();
        EXPECT_NEAR(c(g, a, b), direct, 1e-14);
      }
    }
  }
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      for (std::size_t g = 0; g < d; ++g) {
        for (std::size_t nu = 0; nu < d; ++nu) {
          double jacobi = 0.0;
          for (std::size_t mu = 0; mu < d; ++mu) {
            jacobi += c(mu, a, b) * c(nu, mu, g) + c(mu, b, g) * c(nu, mu, a) + c(mu, g, a) * c(nu, mu, b);
          }
          EXPECT_NEAR(jacobi, 0.0, 1e-10);
        }
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Groups, BasisTest,
                         ::testing::Values(std::pair{wl::GroupKind::su, 2}, std::pair{wl::GroupKind::su, 3},
                                           std::pair{wl::GroupKind::su, 4}, std::pair{wl::GroupKind::so, 3},
                                           std::pair{wl::GroupKind::so, 4}, std::pair{wl::GroupKind::so, 5}));

TEST(LieAlgebra, Su2IsPauliBasis) {
  const wl::LieBasis basis = wl::build_su_basis(2);
  const wl::Complex minus_i(0.0, -1.0);
  for (int k = 0; k < 3; ++k) {
    EXPECT_LT(max_abs(basis.generators[k] - minus_i * pauli(k) / std::sqrt(2.0)), 1e-15);
  }
}

TEST(LieAlgebra, Su2StructureConstantsAreScaledLeviCivita) {
  // oracle: commutators of -i sigma / sqrt(2) built by hand
  const wl::Complex minus_i(0.0, -1.0);
  std::vector<wl::ComplexMatrix> e;
  for (int k = 0; k < 3; ++k) {
    e.push_back(minus_i * pauli(k) / std::sqrt(2.0));
  }
  const wl::StructureConstants c = wl::structure_constants(wl::build_su_basis(2));
  for (int g = 0; g < 3; ++g) {
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        const double oracle = -(e[g] * (e[a] * e[b] - e[b] * e[a])).trace().real();
        EXPECT_NEAR(oracle, std::sqrt(2.0) * levi_civita(a, b, g), 1e-14);
        EXPECT_NEAR(c(g, a, b), std::sqrt(2.0) * levi_civita(a, b, g), 1e-12);
      }
    }
  }
}

TEST(LieAlgebra, Su3HasNonzeroBracketAndVanishingEntries) {
  const wl::StructureConstants c = wl::structure_constants(wl::build_su_basis(3));
  double total = 0.0;
  int zero_distinct = 0;
  for (std::size_t g = 0; g < 8; ++g) {
    for (std::size_t a = 0; a < 8; ++a) {
      for (std::size_t b = 0; b < 8; ++b) {
        total += c(g, a, b) * c(g, a, b);
        if (g != a && a != b && g != b && std::abs(c(g, a, b)) < 1e-12) {
          ++zero_distinct;
        }
      }
    }
  }
  EXPECT_GT(total, 0.0);
  // many entries with distinct indices vanish for su(3)
  EXPECT_GT(zero_distinct, 0);
}

TEST(LieAlgebra, Representations) {
  for (auto [kind, n] : {std::pair{wl::GroupKind::su, 2}, {wl::GroupKind::su, 3}, {wl::GroupKind::so, 4}}) {
    const wl::LieBasis basis = wl::build_basis(kind, n);
    const wl::Representation rep = wl::standard_rep(basis);
    EXPECT_EQ(rep.c_rho, 1.0);
    EXPECT_NO_THROW(wl::check_representation(basis, rep));
    const wl::Representation trivial = wl::trivial_rep(basis);
    EXPECT_NO_THROW(wl::check_representation(basis, trivial));
    EXPECT_EQ(*wl::casimir(trivial).scalar, 0.0);
  }
  EXPECT_NEAR(*wl::casimir(wl::standard_rep(wl::build_su_basis(2))).scalar, 1.5, 1e-12);
  for (auto [kind, n] : {std::pair{wl::GroupKind::su, 3}, {wl::GroupKind::su, 4}, {wl::GroupKind::so, 5}}) {
    const auto op = wl::casimir(wl::standard_rep(wl::build_basis(kind, n)));
    EXPECT_NEAR(*op.scalar, wl::standard_casimir(kind, n), 1e-12);
  }
}

TEST(LieAlgebra, NonScalarCasimirIsSignalled) {
  const wl::LieBasis basis = wl::build_su_basis(2);
  wl::Representation partial = wl::standard_rep(basis);
  partial.images[2] = wl::ComplexMatrix::Zero(2, 2);
  partial.images[2](0, 0) = wl::Complex(0.0, 1.0);
  EXPECT_THROW(wl::casimir(partial), wl::ToleranceError);
  EXPECT_FALSE(wl::casimir(partial, false).scalar.has_value());
}

TEST(LieAlgebra, RejectsInvalidSizes) {
  EXPECT_THROW(wl::build_su_basis(1), wl::ConfigError);
  EXPECT_THROW(wl::build_so_basis(2), wl::ConfigError);
  EXPECT_THROW(wl::parse_group_kind("sp"), wl::ConfigError);
  EXPECT_EQ(wl::parse_group_kind("so"), wl::GroupKind::so);
}
