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

#ifndef WILSON_LAB_COMMON_HPP
#define WILSON_LAB_COMMON_HPP

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

/**
 * \file
 * \brief Shared scalar/matrix aliases and the error hierarchy.
 */

namespace wilson_lab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using CoefVector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

/// Default renormalization constant in front of the Gaussian damping factor.
inline constexpr double kDefaultCTilde = 0.39894228040143267794;  // 1/sqrt(2*pi)

/// Invalid input or configuration (maps to CLI exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical tolerance could not be met (maps to CLI exit code 3).
class ToleranceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Truncation tail of the Fock workspace exceeds the requested bound.
class TailBoundError : public ToleranceError {
 public:
  using ToleranceError::ToleranceError;
};

/// A linear solve is too ill-conditioned to be trusted.
class ConditionError : public ToleranceError {
 public:
  using ToleranceError::ToleranceError;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) {
    throw ConfigError(message);
  }
}

}  // namespace detail
}  // namespace wilson_lab

#endif  // WILSON_LAB_COMMON_HPP
