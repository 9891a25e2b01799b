// Copyright 2026 The qpeb developers
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

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qpeb {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Relative singular-value cutoff used for all rank decisions.
inline constexpr double kRankTol = 1e-10;

// Per-entry Hermiticity tolerance for inputs claimed Hermitian.
inline constexpr double kHermTol = 1e-10;

// Per-entry tolerance on channel constraints (closure, Choi invariants).
inline constexpr double kChannelTol = 1e-9;

}  // namespace qpeb
