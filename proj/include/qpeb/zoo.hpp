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
#include <map>
#include <string>
#include <vector>

#include "qpeb/channels.hpp"
#include "qpeb/types.hpp"

namespace qpeb {

struct SnBounds {
  Index lower = 1;
  Index upper = 0;
  std::string note;  // provenance of the bounds
};

/// A named channel together with what is known about its Schmidt number.
/// `construction_rank` is the operator-rank bound the generator guarantees
/// by construction (for scrambled sets it refers to the pre-scramble
/// representation); it is the k the LOCC protocol provisions for.
struct ChannelSpec {
  std::string name;
  Index d = 0;
  std::map<std::string, double> params;
  KrausSet kraus;
  SnBounds known_sn_bounds;
  Index construction_rank = 0;
};

/// E(ρ) = (1−p)ρ + p·I/d, expanded in the d² Weyl operators so the
/// canonical Kraus count exercises larger mixing searches.
ChannelSpec depolarizing(Index d, double p);

/// Phase mixture {√(1−p)·I} ∪ {√(p/(d−1))·Z^j : 1 ≤ j < d}. Diagonal
/// inputs are fixed points.
ChannelSpec dephasing(Index d, double p);

/// Qubit amplitude damping: K₀ = diag(1, √(1−γ)), K₁ = √γ·|0><1|.
ChannelSpec amplitude_damping_qubit(double gamma);

/// Antisymmetric channel {(|i><j| − |j><i|)/√(d−1) : i < j}: every operator
/// has rank exactly 2. Unitary for d = 2.
ChannelSpec werner_holevo(Index d);

/// Random entanglement-breaking channel: measure in a Haar-random
/// orthonormal basis, prepare an independent Haar-random pure state per
/// outcome. All Kraus operators rank 1.
ChannelSpec measure_prepare(Index d, std::uint64_t seed);

/// Single Haar-random Kraus operator.
ChannelSpec unitary_channel(Index d, std::uint64_t seed);

/// num_kraus random operators of rank ≤ k (d×k times k×d Gaussian factors),
/// normalized into a channel by the inverse square root of Σ K†K on the
/// right, which cannot increase operator rank. With `scramble` a Haar
/// mixing unitary is applied, so the stored per-operator ranks may exceed k
/// while the channel itself stays k-partially entanglement breaking.
/// A rank-deficient normalizer triggers a resample with the next derived
/// seed, with bounded retries.
ChannelSpec random_rank_k_channel(Index d, Index k, int num_kraus,
                                  std::uint64_t seed, bool scramble);

/// Dispatch by generator name (the CLI contract): depolarizing, dephasing,
/// amplitude-damping, werner-holevo, measure-prepare, unitary,
/// random-rank-k. Unknown names or missing parameters are rejected.
ChannelSpec make_channel(const std::string& name, Index d,
                         const std::map<std::string, double>& params,
                         std::uint64_t seed);

/// The desk-scale test corpus: every generator at d ∈ {2,3,4} plus random
/// rank-k channels for each 1 ≤ k ≤ d.
std::vector<ChannelSpec> test_corpus(std::uint64_t seed = 20260810);

}  // namespace qpeb
