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

#include <vector>

#include "qpeb/numerics.hpp"
#include "qpeb/types.hpp"

namespace qpeb {

// Index convention, used by every reshape in this file and downstream:
// a bipartite system A⊗B flattens with the A index major, so basis state
// |i>_A ⊗ |j>_B sits at position i·dB + j. For a Choi matrix A is the
// reference (input copy) system and B the channel output.

/// The maximally entangled unit vector (1/√d) Σ_i |ii> in C^{d²}.
Vector maximally_entangled(Index d);

/// Density operator: Hermitian, unit trace, positive semidefinite
/// (all within tolerance, checked at construction).
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix rho, double tol = kHermTol);

  Index dim() const { return mat_.rows(); }
  const Matrix& matrix() const { return mat_; }

 private:
  Matrix mat_;
};

/// A finite Kraus family {K_α}, each d_out×d_in, satisfying the closure
/// relation Σ_α K_α†K_α = I within tolerance.
class KrausSet {
 public:
  explicit KrausSet(std::vector<Matrix> operators, double tol = kChannelTol);

  Index d_in() const { return d_in_; }
  Index d_out() const { return d_out_; }
  Index size() const { return static_cast<Index>(ops_.size()); }
  const Matrix& operator[](Index alpha) const { return ops_[alpha]; }
  const std::vector<Matrix>& operators() const { return ops_; }

 private:
  Index d_in_ = 0;
  Index d_out_ = 0;
  std::vector<Matrix> ops_;
};

/// Choi state of a d→d channel: the d²×d² bipartite density operator
/// (id⊗E)(Φ_d), trace-normalized, with the A-major basis order above.
/// Construction checks Hermiticity, positivity, unit trace, and that the
/// partial trace over the output system equals I/d (trace preservation).
class ChoiMatrix {
 public:
  explicit ChoiMatrix(Matrix j, double tol = kChannelTol);

  Index d() const { return d_; }
  const Matrix& matrix() const { return mat_; }

 private:
  Index d_ = 0;
  Matrix mat_;
};

/// Stinespring isometry V: C^{d_in} → C^{d_out}⊗C^m with V†V = I.
/// Rows flatten output-major, environment minor, so the <α|_E block of V
/// is the α-th Kraus operator.
class StinespringIsometry {
 public:
  StinespringIsometry(Matrix v, Index d_out, Index env_dim,
                      double tol = kChannelTol);

  Index d_in() const { return v_.cols(); }
  Index d_out() const { return d_out_; }
  Index env_dim() const { return env_dim_; }
  const Matrix& matrix() const { return v_; }

 private:
  Matrix v_;
  Index d_out_ = 0;
  Index env_dim_ = 0;
};

/// E(ρ) = Σ_α K_α ρ K_α†.
DensityMatrix apply_kraus(const KrausSet& kraus, const DensityMatrix& rho);

/// J = Σ_α (I ⊗ K_α) Φ_d (I ⊗ K_α)†. Square channels only.
ChoiMatrix kraus_to_choi(const KrausSet& kraus);

/// Canonical Kraus operators from the eigendecomposition of J:
/// K_α[j,i] = √(d·λ_α) v_α[i·d+j] for every eigenvalue above tol × λ_max.
/// An eigenvalue below −tol × λ_max means the input is not a channel.
KrausSet choi_to_kraus(const ChoiMatrix& j, double tol = kRankTol);

/// Applies the channel through its Choi state: E(ρ) = d·tr_A[(ρ^T ⊗ I) J].
DensityMatrix choi_apply(const ChoiMatrix& j, const DensityMatrix& rho);

/// V = Σ_α K_α ⊗ |α>_E.
StinespringIsometry kraus_to_stinespring(const KrausSet& kraus);

struct CptpReport {
  bool trace_preserving = false;
  bool completely_positive = false;
  double max_violation = 0.0;

  bool pass() const { return trace_preserving && completely_positive; }
};

/// Diagnostic CPTP check on a raw Kraus family. Never throws on constraint
/// violations; those are what the report is for.
CptpReport verify_cptp(const std::vector<Matrix>& kraus_ops,
                       double tol = kChannelTol);

/// Diagnostic CPTP check on a raw d²×d² matrix presented as a Choi state.
CptpReport verify_cptp(const Matrix& choi_candidate, double tol = kChannelTol);

struct ChannelDistance {
  double trace_distance = 0.0;  // ½‖J1−J2‖₁, in [0,1]
  double fidelity = 0.0;        // (tr√(√J1 J2 √J1))², in [0,1]
};

ChannelDistance channel_distance(const ChoiMatrix& j1, const ChoiMatrix& j2);

}  // namespace qpeb
