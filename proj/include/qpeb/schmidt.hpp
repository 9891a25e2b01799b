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
#include <optional>

#include "qpeb/channels.hpp"
#include "qpeb/types.hpp"

namespace qpeb {

struct SchmidtDecomposition {
  RealVector coefficients;  // nonnegative, descending, Σc² = 1
  Matrix left_basis;        // dA × r orthonormal columns
  Matrix right_basis;       // dB × r orthonormal columns
  Index rank = 0;           // coefficients above tol × max
};

/// Schmidt decomposition of a normalized vector in C^{dA}⊗C^{dB}.
/// Phase convention: the largest-magnitude entry of each left vector is
/// real positive; the compensating phase moves to the right vector, so
/// Σ_i c_i (left_i ⊗ right_i) reconstructs v exactly.
SchmidtDecomposition schmidt_decompose(const Vector& v, Index da, Index db,
                                       double tol = kRankTol);

/// Rank of the dA×dB reshape of v, i.e. the rank of either marginal.
Index schmidt_rank(const Vector& v, Index da, Index db, double tol = kRankTol);

/// max_α rank(K_α) for the given representation: certifies the channel
/// k-partially entanglement breaking for k equal to the returned value.
Index kraus_max_rank(const KrausSet& kraus, double tol = kRankTol);

struct MinimizeConfig {
  int restarts = 32;
  int max_iters = 2000;
  double step = 0.5;         // initial geodesic step, adapted per iteration
  std::uint64_t seed = 0;
  double tol = kRankTol;     // canonical-extraction / rank tolerance
  int pad_operators = 0;     // extra zero operators to enlarge the mixing
  Matrix initial_mixing;     // optional extra starting point (m×m unitary)
};

struct RankCertificate {
  Index target_k = 0;
  bool achieved = false;
  std::optional<KrausSet> witness_kraus;  // present iff achieved
  Index max_rank_found = 0;               // over operators at the optimum
  Matrix mixing_unitary;                  // U with K'_β = Σ_α U[β,α] K_α
  double residual = 0.0;                  // Σ_β Σ_{i>k} σ_i(K'_β)² at optimum
};

/// Searches for a Kraus representation with every operator of rank ≤
/// target_k, by mixing the canonical operators with an m×m unitary
/// (all such mixings represent the same channel). Random-restart descent
/// over the unitary group; feasibility is declared when the tail objective
/// falls below 1e-12 × Σ_β‖K'_β‖²_F. A failed search is inconclusive:
/// it proves no lower bound.
RankCertificate minimize_kraus_rank(const KrausSet& kraus, Index target_k,
                                    const MinimizeConfig& config = {});

/// Smallest k for which minimize_kraus_rank achieves target_k, scanning
/// from the canonical max rank down to 1. Upper-bounds the channel's
/// Schmidt number.
Index sn_upper_search(const KrausSet& kraus, const MinimizeConfig& config = {});

/// Rigorous Schmidt-number lower bound from the maximally entangled
/// fraction F = <Φ_d|J|Φ_d>: any state of Schmidt number ≤ k has F ≤ k/d,
/// so SN(J) ≥ ceil(F·d), clipped to [1, d].
Index sn_lower_bound_fidelity(const ChoiMatrix& j);

}  // namespace qpeb
