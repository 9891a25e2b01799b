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

#include <cstdint>
#include <random>

#include "qpeb/types.hpp"

namespace qpeb {

/// True iff every entry of `m` is finite (no NaN/Inf).
bool is_finite(const Matrix& m);

/// Largest entry magnitude, max_ij |m(i,j)|.
double max_abs(const Matrix& m);

/// Kronecker product, first factor major: (a ⊗ b)[(i·rb+k),(j·cb+l)] = a(i,j)·b(k,l).
/// This fixes the flattening convention used throughout: in any tensor
/// product the left factor owns the high-order index.
Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);

/// Partial trace over the first factor of an operator on C^da ⊗ C^db.
Matrix partial_trace_first(const Matrix& m, Index da, Index db);

/// Partial trace over the second factor.
Matrix partial_trace_second(const Matrix& m, Index da, Index db);

struct SvdResult {
  Matrix u;                   // orthonormal columns
  RealVector singular_values; // non-increasing
  Matrix v_dagger;
};

/// Thin SVD with singular values in descending order.
/// Rejects non-finite input.
SvdResult svd(const Matrix& m);

struct EighResult {
  RealVector eigenvalues;  // descending
  Matrix eigenvectors;     // columns, matching order
};

/// Hermitian eigendecomposition, eigenvalues descending.
/// The input is checked against `hermiticity_tol` per entry and rejected,
/// never silently symmetrized.
EighResult eigh(const Matrix& h, double hermiticity_tol = kHermTol);

/// Count of singular values exceeding tol × (largest singular value).
/// The zero matrix has rank 0. `tol` must lie in (0, 1).
Index numerical_rank(const Matrix& m, double tol = kRankTol);

/// Principal square root of a Hermitian PSD matrix; eigenvalues below zero
/// are clamped at zero before the root.
Matrix hermitian_sqrt(const Matrix& psd, double hermiticity_tol = kHermTol);

/// Deterministic stream of standard normal variates built from the raw bits
/// of a mt19937_64, so the sequence is identical across platforms.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

  double real();
  Complex standard_complex();  // independent N(0,1) real and imaginary parts

  /// Uniform double in [0, 1).
  double uniform();

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

/// Haar-distributed n×n unitary: QR of a complex Ginibre matrix with the
/// phases of the R diagonal folded back into Q. Deterministic per seed.
Matrix haar_random_unitary(Index n, std::uint64_t seed);

/// Haar-distributed unit vector in C^n.
Vector haar_random_vector(Index n, std::uint64_t seed);

/// Stable seed derivation for independent substreams (splitmix64 mix).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace qpeb
