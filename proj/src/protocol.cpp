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

#include "qpeb/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "qpeb/errors.hpp"

namespace qpeb {

ResourceState make_resource(Index k) {
  if (k < 1) throw InvalidArgument("make_resource: k must be >= 1");
  return ResourceState{k, maximally_entangled(k)};
}

Matrix weyl(Index k, Index m, Index n) {
  if (k < 1) throw InvalidArgument("weyl: k must be >= 1");
  if (m < 0 || m >= k || n < 0 || n >= k)
    throw InvalidArgument("weyl: indices must lie in [0, k)");
  const double theta = 2.0 * std::numbers::pi / static_cast<double>(k);
  Matrix w = Matrix::Zero(k, k);
  for (Index j = 0; j < k; ++j)
    w((j + m) % k, j) = std::exp(Complex(0.0, theta * n * j));
  return w;
}

std::vector<Vector> bell_basis(Index k) {
  const Vector phi = make_resource(k).vector;
  const Matrix identity = Matrix::Identity(k, k);
  std::vector<Vector> basis;
  basis.reserve(k * k);
  for (Index m = 0; m < k; ++m)
    for (Index n = 0; n < k; ++n)
      basis.push_back(kron(Matrix(weyl(k, m, n)), identity) * phi);
  return basis;
}

RangeIsometry range_isometry(const Matrix& kraus_op, Index k, double tol,
                             Index alpha) {
  const Index d = kraus_op.rows();
  if (k < 1 || k > d)
    throw InvalidArgument("range_isometry: k must lie in [1, d]");
  const SvdResult dec = svd(kraus_op);
  const Index rank = numerical_rank(kraus_op, tol);
  if (rank > k) {
    std::ostringstream msg;
    msg << "range_isometry: operator rank " << rank << " exceeds k = " << k;
    throw PreconditionViolation(msg.str());
  }

  Matrix w(d, k);
  for (Index i = 0; i < rank; ++i) w.col(i) = dec.u.col(i);
  // Complete with standard basis vectors, Gram-Schmidt in index order, so
  // rank-deficient operators get a reproducible subspace.
  Index filled = rank;
  for (Index e = 0; e < d && filled < k; ++e) {
    Vector candidate = Vector::Zero(d);
    candidate(e) = 1.0;
    for (Index c = 0; c < filled; ++c)
      candidate -= (w.col(c).adjoint() * candidate)(0, 0) * w.col(c);
    const double norm = candidate.norm();
    if (norm > 1e-6) {
      w.col(filled) = candidate / norm;
      ++filled;
    }
  }
  if (filled < k)
    throw VerificationError("range_isometry: failed to complete basis");
  return RangeIsometry{alpha, std::move(w)};
}

std::vector<AliceOutcome> alice_stage(const DensityMatrix& rho,
                                      const KrausSet& kraus, Index k,
                                      double tol) {
  if (kraus.d_in() != rho.dim())
    throw InvalidArgument("alice_stage: dimension mismatch");
  const Index rank = kraus_max_rank(kraus, tol);
  if (rank > k) {
    std::ostringstream msg;
    msg << "alice_stage: Kraus rank " << rank << " exceeds k = " << k;
    throw PreconditionViolation(msg.str());
  }

  std::vector<AliceOutcome> outcomes;
  for (Index alpha = 0; alpha < kraus.size(); ++alpha) {
    const Matrix conditional =
        kraus[alpha] * rho.matrix() * kraus[alpha].adjoint();
    const double probability = conditional.trace().real();
    if (probability <= kBranchCutoff) continue;
    RangeIsometry isometry = range_isometry(kraus[alpha], k, tol, alpha);
    Matrix compressed =
        isometry.w.adjoint() * conditional * isometry.w / probability;
    compressed = (compressed + compressed.adjoint()) / 2.0;
    // Conditional states divide by p_alpha, which inflates roundoff on
    // low-probability outcomes; validate at the matching tolerance.
    outcomes.push_back(AliceOutcome{alpha, probability,
                                    DensityMatrix(std::move(compressed), 1e-8),
                                    std::move(isometry)});
  }
  return outcomes;
}

namespace {

struct Branch {
  ClassicalMessage message;
  double probability = 0.0;
  Matrix bob_output;  // d×d, normalized
};

// Full exact branch tree: Alice's instrument, then the Bell measurement on
// (her compressed state ⊗ resource half A), Bob's correction and embedding.
std::vector<Branch> enumerate_branches(const KrausSet& kraus, Index k,
                                       const DensityMatrix& rho,
                                       double* dropped_mass) {
  const std::vector<AliceOutcome> alice = alice_stage(rho, kraus, k);
  const ResourceState resource = make_resource(k);
  const Matrix resource_dm = resource.vector * resource.vector.adjoint();
  const std::vector<Vector> bell = bell_basis(k);
  const Matrix identity = Matrix::Identity(k, k);

  double total = 0.0;
  std::vector<Branch> branches;
  for (const AliceOutcome& outcome : alice) {
    // Systems: 1 Alice's compressed input, 2 resource half A, 3 Bob's half.
    const Matrix joint = kron(outcome.compressed.matrix(), resource_dm);
    for (Index m = 0; m < k; ++m) {
      for (Index n = 0; n < k; ++n) {
        const Matrix projector =
            kron(Matrix(bell[m * k + n].adjoint()), identity);  // k × k³
        const Matrix bob_unnormalized = projector * joint * projector.adjoint();
        const double p_mn = bob_unnormalized.trace().real();
        if (p_mn <= kBranchCutoff) continue;

        const Matrix correction = weyl(k, m, n);
        const Matrix corrected =
            correction * (bob_unnormalized / p_mn) * correction.adjoint();
        Matrix embedded =
            outcome.isometry.w * corrected * outcome.isometry.w.adjoint();
        embedded = (embedded + embedded.adjoint()) / 2.0;

        Branch branch;
        branch.message = ClassicalMessage{outcome.alpha, m, n};
        branch.probability = outcome.probability * p_mn;
        branch.bob_output = std::move(embedded);
        total += branch.probability;
        branches.push_back(std::move(branch));
      }
    }
  }
  if (dropped_mass != nullptr) *dropped_mass = std::max(0.0, 1.0 - total);
  return branches;
}

}  // namespace

SimulationResult simulate_locc_exact(const KrausSet& kraus, Index k,
                                     const DensityMatrix& rho, double tol) {
  double dropped = 0.0;
  const std::vector<Branch> branches =
      enumerate_branches(kraus, k, rho, &dropped);

  const Index d = kraus.d_out();
  Matrix average = Matrix::Zero(d, d);
  ProtocolTranscript transcript;
  transcript.mode = ProtocolTranscript::Mode::kExact;
  transcript.dropped_probability = dropped;
  for (const Branch& branch : branches) {
    average += branch.probability * branch.bob_output;
    transcript.outcomes.push_back(BranchOutcome{
        branch.message, branch.probability,
        DensityMatrix(branch.bob_output, 1e-8)});
  }

  const Matrix direct = apply_kraus(kraus, rho).matrix();
  const double residual = max_abs(average - direct);
  if (residual > tol) {
    std::ostringstream msg;
    msg << "simulate_locc_exact: protocol output deviates from the channel "
        << "by " << residual;
    throw VerificationError(msg.str());
  }
  return SimulationResult{DensityMatrix(average / average.trace().real()),
                          std::move(transcript)};
}

SimulationResult simulate_locc_sampled(const KrausSet& kraus, Index k,
                                       const DensityMatrix& rho,
                                       std::uint64_t seed, long shots) {
  if (shots < 1)
    throw InvalidArgument("simulate_locc_sampled: shots must be >= 1");
  double dropped = 0.0;
  const std::vector<Branch> branches =
      enumerate_branches(kraus, k, rho, &dropped);

  std::vector<double> cumulative;
  cumulative.reserve(branches.size());
  double acc = 0.0;
  for (const Branch& branch : branches) {
    acc += branch.probability;
    cumulative.push_back(acc);
  }

  GaussianStream stream(derive_seed(seed, 0));
  std::vector<long> counts(branches.size(), 0);
  const Index d = kraus.d_out();
  Matrix average = Matrix::Zero(d, d);
  for (long shot = 0; shot < shots; ++shot) {
    const double u = stream.uniform() * acc;
    const auto it =
        std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const std::size_t idx = std::min<std::size_t>(
        static_cast<std::size_t>(it - cumulative.begin()),
        branches.size() - 1);
    ++counts[idx];
    average += branches[idx].bob_output;
  }
  average /= static_cast<double>(shots);

  ProtocolTranscript transcript;
  transcript.mode = ProtocolTranscript::Mode::kSampled;
  transcript.dropped_probability = dropped;
  for (std::size_t i = 0; i < branches.size(); ++i) {
    if (counts[i] == 0) continue;
    transcript.outcomes.push_back(BranchOutcome{
        branches[i].message,
        static_cast<double>(counts[i]) / static_cast<double>(shots),
        DensityMatrix(branches[i].bob_output, 1e-8)});
  }
  return SimulationResult{
      DensityMatrix(average / average.trace().real(), 1e-8),
      std::move(transcript)};
}

std::vector<Matrix> protocol_kraus(const KrausSet& kraus, Index k,
                                   double tol) {
  if (kraus.d_in() != kraus.d_out())
    throw InvalidArgument("protocol_kraus: channel must map d -> d");
  const Index rank = kraus_max_rank(kraus, tol);
  if (rank > k) {
    std::ostringstream msg;
    msg << "protocol_kraus: Kraus rank " << rank << " exceeds k = " << k;
    throw PreconditionViolation(msg.str());
  }

  const ResourceState resource = make_resource(k);
  const std::vector<Vector> bell = bell_basis(k);

  // Bell-outcome contraction on (input ⊗ resource): the k×k map Alice's
  // compressed state experiences on its way to Bob's half,
  // T[c,a] = Σ_y conj(Φ_mn[a·k+y])·φ_res[y·k+c].
  std::vector<Matrix> contractions;
  contractions.reserve(k * k);
  for (Index m = 0; m < k; ++m) {
    for (Index n = 0; n < k; ++n) {
      const Vector& b = bell[m * k + n];
      Matrix t = Matrix::Zero(k, k);
      for (Index c = 0; c < k; ++c)
        for (Index a = 0; a < k; ++a)
          for (Index y = 0; y < k; ++y)
            t(c, a) += std::conj(b(a * k + y)) * resource.vector(y * k + c);
      contractions.push_back(std::move(t));
    }
  }

  std::vector<Matrix> composite;
  composite.reserve(kraus.size() * k * k);
  for (Index alpha = 0; alpha < kraus.size(); ++alpha) {
    const RangeIsometry iso = range_isometry(kraus[alpha], k, tol, alpha);
    const Matrix compressed = iso.w.adjoint() * kraus[alpha];  // k × d
    for (Index m = 0; m < k; ++m)
      for (Index n = 0; n < k; ++n)
        composite.push_back(iso.w * weyl(k, m, n) *
                            contractions[m * k + n] * compressed);
  }
  return composite;
}

ChoiMatrix protocol_choi(const KrausSet& kraus, Index k, double tol) {
  const std::vector<Matrix> composite = protocol_kraus(kraus, k);
  const ChoiMatrix result = kraus_to_choi(KrausSet(composite));
  const ChoiMatrix target = kraus_to_choi(kraus);
  const double residual = max_abs(result.matrix() - target.matrix());
  if (residual > tol) {
    std::ostringstream msg;
    msg << "protocol_choi: protocol Choi deviates from the channel's by "
        << residual;
    throw VerificationError(msg.str());
  }
  return result;
}

TheoremReport verify_theorem(const KrausSet& kraus, Index k, double tol) {
  TheoremReport report;

  const std::vector<Matrix> composite = protocol_kraus(kraus, k);
  const ChoiMatrix protocol = kraus_to_choi(KrausSet(composite));
  const ChoiMatrix target = kraus_to_choi(kraus);
  report.choi_distance = channel_distance(protocol, target).trace_distance;

  const ResourceState resource = make_resource(k);
  report.resource_schmidt_rank = schmidt_rank(resource.vector, k, k);

  Index max_rank = 0;
  for (const Matrix& op : composite)
    max_rank = std::max(max_rank, numerical_rank(op));
  report.composite_max_rank = max_rank;

  // Messages flow Alice → Bob by type: a ClassicalMessage carries her
  // outcomes and Bob's stage is a pure function of it and his half.
  report.one_way = true;

  report.pass = report.choi_distance < tol &&
                report.resource_schmidt_rank == k &&
                report.composite_max_rank <= k && report.one_way;
  return report;
}

}  // namespace qpeb
