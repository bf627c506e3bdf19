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
#ifndef WILSON_LAB_HPP
#define WILSON_LAB_HPP

#include "wilson_lab/bargmann.hpp"
#include "wilson_lab/common.hpp"
#include "wilson_lab/estimator.hpp"
#include "wilson_lab/field_sampler.hpp"
#include "wilson_lab/lie_algebra.hpp"
#include "wilson_lab/parallel.hpp"
#include "wilson_lab/quadrature.hpp"
#include "wilson_lab/random.hpp"
#include "wilson_lab/stats.hpp"
#include "wilson_lab/surface.hpp"
#include "wilson_lab/ym_functionals.hpp"

#endif  // WILSON_LAB_HPP
