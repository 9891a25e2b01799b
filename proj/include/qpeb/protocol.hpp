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
#include <vector>

#include "qpeb/channels.hpp"
#include "qpeb/schmidt.hpp"
#include "qpeb/types.hpp"

namespace qpeb {

// One-way LOCC realization of a channel whose Kraus operators all have rank
// at most k, from a maximally entangled resource of Schmidt rank k:
//   1. Alice applies the Kraus instrument to the input; outcome α tells her
//      which k-dimensional subspace the conditional state occupies.
//   2. She compresses into that subspace and teleports the k-level state
//      through the shared resource (generalized Bell measurement).
//   3. Bob applies the Weyl correction for outcome (m,n), then embeds the
//      subspace back with the isometry named by α.
// All classical messages flow Alice → Bob.

/// Branch probabilities below this are dropped from exact enumeration; the
/// dropped mass is recorded on the transcript.
inline constexpr double kBranchCutoff = 1e-14;

/// The resource |Φ_k> = (1/√k) Σ_{i<k} |ii>. k = 1 is the product state
/// |00>: the entanglement-breaking case consumes no entanglement.
struct ResourceState {
  Index k = 0;
  Vector vector;
};

ResourceState make_resource(Index k);

/// Generalized Pauli X^m Z^n on a k-level system, with X|j> = |j+1 mod k>
/// and Z|j> = ω^j |j>, ω = exp(2πi/k).
Matrix weyl(Index k, Index m, Index n);

/// The k² orthonormal vectors (weyl(k,m,n) ⊗ I)|Φ_k>, indexed m·k + n.
std::vector<Vector> bell_basis(Index k);

/// Isometry onto a k-dimensional subspace containing range(K_α): the first
/// k left singular vectors, completed deterministically (Gram-Schmidt
/// against standard basis vectors in index order) when rank(K_α) < k.
struct RangeIsometry {
  Index alpha = 0;
  Matrix w;  // d × k, W†W = I, (I − WW†)K_α = 0
};

RangeIsometry range_isometry(const Matrix& kraus_op, Index k,
                             double tol = kRankTol, Index alpha = 0);

/// One Kraus outcome at Alice's station: its probability, the conditional
/// state compressed to k dimensions, and the subspace isometry Bob will
/// need to undo the compression.
struct AliceOutcome {
  Index alpha = 0;
  double probability = 0.0;
  DensityMatrix compressed;  // k×k, W†KρK†W / p
  RangeIsometry isometry;
};

/// Alice's instrument: outcome α with p_α = tr(K_α ρ K_α†); outcomes with
/// p_α ≤ kBranchCutoff are omitted.
std::vector<AliceOutcome> alice_stage(const DensityMatrix& rho,
                                      const KrausSet& kraus, Index k,
                                      double tol = kRankTol);

/// The one-way classical message Bob receives for a branch.
struct ClassicalMessage {
  Index alpha = 0;  // Alice's Kraus outcome
  Index m = 0;      // teleportation outcome indices, in [0, k)
  Index n = 0;
};

struct BranchOutcome {
  ClassicalMessage message;
  double probability = 0.0;  // exact mode: exact; sampled mode: frequency
  DensityMatrix bob_output;  // d×d conditional output state
};

struct ProtocolTranscript {
  enum class Mode { kExact, kSampled };
  Mode mode = Mode::kExact;
  std::vector<BranchOutcome> outcomes;
  double dropped_probability = 0.0;
};

struct SimulationResult {
  DensityMatrix output;
  ProtocolTranscript transcript;
};

/// Exact branch enumeration of the protocol. The averaged output is checked
/// against direct Kraus application and a mismatch beyond `tol` raises a
/// VerificationError carrying the residual. Requires kraus_max_rank ≤ k.
SimulationResult simulate_locc_exact(const KrausSet& kraus, Index k,
                                     const DensityMatrix& rho,
                                     double tol = kChannelTol);

/// Monte Carlo mode: samples `shots` branches from their exact joint
/// distribution; deterministic per seed. Transcript outcomes carry
/// empirical frequencies.
SimulationResult simulate_locc_sampled(const KrausSet& kraus, Index k,
                                       const DensityMatrix& rho,
                                       std::uint64_t seed, long shots);

/// Composite Kraus operators M_{α,m,n} of the whole protocol, assembled
/// from its pieces (embedding, Bell contraction, correction, subspace
/// isometry). Each has rank ≤ k by construction.
std::vector<Matrix> protocol_kraus(const KrausSet& kraus, Index k,
                                   double tol = kRankTol);

/// Choi state of the simulated channel, built from the composite operators;
/// verified against kraus_to_choi(kraus) within `tol` before returning.
ChoiMatrix protocol_choi(const KrausSet& kraus, Index k, double tol = 1e-8);

struct TheoremReport {
  double choi_distance = 0.0;       // trace distance, protocol vs target
  Index resource_schmidt_rank = 0;  // of |Φ_k>
  Index composite_max_rank = 0;     // over the protocol Kraus operators
  bool one_way = false;
  bool pass = false;
};

/// End-to-end check that the protocol built from a rank-≤k representation
/// reproduces the channel: Choi distance below tol, resource Schmidt rank
/// exactly k, every composite operator of rank ≤ k, one-way messaging.
TheoremReport verify_theorem(const KrausSet& kraus, Index k,
                             double tol = 1e-8);

}  // namespace qpeb
