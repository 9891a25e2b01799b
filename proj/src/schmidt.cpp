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

#include "qpeb/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>
#include <vector>

#include "qpeb/errors.hpp"

namespace qpeb {

SchmidtDecomposition schmidt_decompose(const Vector& v, Index da, Index db,
                                       double tol) {
  if (da < 1 || db < 1 || v.size() != da * db)
    throw InvalidArgument("schmidt_decompose: length must equal dA*dB");
  if (!v.allFinite())
    throw InvalidArgument("schmidt_decompose: non-finite entries");
  const double norm_err = std::abs(v.norm() - 1.0);
  if (norm_err > 1e-10) {
    std::ostringstream msg;
    msg << "schmidt_decompose: vector norm differs from 1 by " << norm_err;
    throw InvalidArgument(msg.str());
  }

  Matrix reshaped(da, db);
  for (Index i = 0; i < da; ++i)
    for (Index j = 0; j < db; ++j) reshaped(i, j) = v(i * db + j);

  SvdResult dec = svd(reshaped);
  const Index r = dec.singular_values.size();

  SchmidtDecomposition out;
  out.coefficients = dec.singular_values;
  out.left_basis = dec.u;
  out.right_basis = Matrix(db, r);
  for (Index s = 0; s < r; ++s)
    out.right_basis.col(s) = dec.v_dagger.row(s).transpose();

  // Fix the phase gauge: largest-magnitude entry of each left vector made
  // real positive, compensated on the right, so the pair reconstructs v.
  for (Index s = 0; s < r; ++s) {
    Index arg_max = 0;
    out.left_basis.col(s).cwiseAbs().maxCoeff(&arg_max);
    const Complex top = out.left_basis(arg_max, s);
    if (std::abs(top) > 0.0) {
      const Complex phase = top / std::abs(top);
      out.left_basis.col(s) *= std::conj(phase);
      out.right_basis.col(s) *= phase;
    }
  }

  const double cutoff = (r > 0 ? tol * out.coefficients(0) : 0.0);
  out.rank = 0;
  for (Index s = 0; s < r; ++s)
    if (out.coefficients(s) > cutoff) ++out.rank;
  return out;
}

Index schmidt_rank(const Vector& v, Index da, Index db, double tol) {
  return schmidt_decompose(v, da, db, tol).rank;
}

Index kraus_max_rank(const KrausSet& kraus, double tol) {
  Index max_rank = 0;
  for (const Matrix& op : kraus.operators())
    max_rank = std::max(max_rank, numerical_rank(op, tol));
  return max_rank;
}

namespace {

// Feasibility search over Kraus mixings: K'_β = Σ_α U[β,α] C_α with U
// unitary leaves the channel invariant, so driving the tail singular values
// of every K'_β to zero certifies a rank-≤k representation.
struct MixingProblem {
  std::vector<Matrix> canonical;
  Index d = 0;
  Index m = 0;
  Index k = 0;
  double total_sq = 0.0;  // Σ_α ‖C_α‖²_F, invariant under mixing
};

std::vector<Matrix> mix_operators(const MixingProblem& prob, const Matrix& u) {
  std::vector<Matrix> mixed(prob.m, Matrix::Zero(prob.d, prob.d));
  for (Index beta = 0; beta < prob.m; ++beta)
    for (Index alpha = 0; alpha < prob.m; ++alpha)
      mixed[beta] += u(beta, alpha) * prob.canonical[alpha];
  return mixed;
}

double tail_objective(const MixingProblem& prob,
                      const std::vector<Matrix>& mixed) {
  double f = 0.0;
  for (const Matrix& op : mixed) {
    const RealVector sigma = svd(op).singular_values;
    for (Index i = prob.k; i < sigma.size(); ++i) f += sigma(i) * sigma(i);
  }
  return f;
}

// Objective together with G[β,α] = tr(tail_β† C_α), the Euclidean gradient
// against the mixing coefficients: d f = 2 Re Σ dU[β,α] G[β,α].
double tail_objective_and_gradient(const MixingProblem& prob, const Matrix& u,
                                   Matrix* gradient) {
  const std::vector<Matrix> mixed = mix_operators(prob, u);
  *gradient = Matrix::Zero(prob.m, prob.m);
  double f = 0.0;
  for (Index beta = 0; beta < prob.m; ++beta) {
    const SvdResult dec = svd(mixed[beta]);
    Matrix tail = mixed[beta];
    const Index keep = std::min(prob.k, dec.singular_values.size());
    for (Index i = 0; i < keep; ++i)
      tail -= dec.singular_values(i) * dec.u.col(i) *
              dec.v_dagger.row(i);
    for (Index i = prob.k; i < dec.singular_values.size(); ++i)
      f += dec.singular_values(i) * dec.singular_values(i);
    for (Index alpha = 0; alpha < prob.m; ++alpha)
      (*gradient)(beta, alpha) =
          (tail.conjugate().cwiseProduct(prob.canonical[alpha])).sum();
  }
  return f;
}

// exp(t·A) for anti-Hermitian A, through the spectrum of iA.
Matrix expm_anti_hermitian(const Matrix& a, double t) {
  const Matrix h = Complex(0.0, 1.0) * a;
  const EighResult eig = eigh((h + h.adjoint()) / 2.0, 1e-6);
  Vector phases(eig.eigenvalues.size());
  for (Index i = 0; i < phases.size(); ++i)
    phases(i) = std::exp(Complex(0.0, -t * eig.eigenvalues(i)));
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

// Riemannian descent along geodesics U(t) = exp(t·D)·U, with the descent
// direction D the skew part of U·Gᵀ and a backtracking step.
double descend(const MixingProblem& prob, Matrix* u, double initial_step,
               int max_iters, double stop_below) {
  double step = initial_step;
  Matrix gradient;
  double f = tail_objective_and_gradient(prob, *u, &gradient);
  for (int iter = 0; iter < max_iters && f > stop_below; ++iter) {
    const Matrix b = (*u) * gradient.transpose();
    Matrix direction = (b - b.adjoint()) / 2.0;
    const double dir_norm = direction.norm();
    if (dir_norm < 1e-15) break;  // critical point
    direction /= dir_norm;

    bool accepted = false;
    while (step > 1e-16) {
      const Matrix u_try = expm_anti_hermitian(direction, step) * (*u);
      const double f_try = tail_objective(prob, mix_operators(prob, u_try));
      if (f_try < f) {
        *u = u_try;
        f = tail_objective_and_gradient(prob, *u, &gradient);
        step = std::min(step * 1.3, 3.0);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // line search exhausted
  }
  return f;
}

// Once near a feasible point, alternate between truncating every mixed
// operator to rank k and projecting the truncated family back onto the
// mixing orbit (a Procrustes fit). This contracts much faster than plain
// descent in the last digits.
double polish(const MixingProblem& prob, Matrix* u, double f_current,
              double hard_target, int max_iters) {
  const Index dsq = prob.d * prob.d;
  Matrix c_rows(prob.m, dsq);
  for (Index alpha = 0; alpha < prob.m; ++alpha)
    c_rows.row(alpha) =
        Eigen::Map<const Vector>(prob.canonical[alpha].data(), dsq);

  double f = f_current;
  for (int iter = 0; iter < max_iters && f > hard_target; ++iter) {
    const std::vector<Matrix> mixed = mix_operators(prob, *u);
    Matrix t_rows(prob.m, dsq);
    for (Index beta = 0; beta < prob.m; ++beta) {
      const SvdResult dec = svd(mixed[beta]);
      Matrix truncated = Matrix::Zero(prob.d, prob.d);
      const Index keep = std::min(prob.k, dec.singular_values.size());
      for (Index i = 0; i < keep; ++i)
        truncated += dec.singular_values(i) * dec.u.col(i) *
                     dec.v_dagger.row(i);
      t_rows.row(beta) = Eigen::Map<const Vector>(truncated.data(), dsq);
    }
    // argmin_U ‖U·C − T‖_F over unitaries.
    const Matrix n = t_rows * c_rows.adjoint();
    Eigen::JacobiSVD<Matrix> dec(n,
                                 Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Matrix u_new = dec.matrixU() * dec.matrixV().adjoint();
    const double f_new = tail_objective(prob, mix_operators(prob, u_new));
    if (f_new >= f) break;  // stalled
    *u = u_new;
    f = f_new;
  }
  return f;
}

}  // namespace

RankCertificate minimize_kraus_rank(const KrausSet& kraus, Index target_k,
                                    const MinimizeConfig& config) {
  const Index d = kraus.d_in();
  if (kraus.d_out() != d)
    throw InvalidArgument("minimize_kraus_rank: channel must map d -> d");
  if (target_k < 1 || target_k > d)
    throw PreconditionViolation(
        "minimize_kraus_rank: target_k must lie in [1, d]");

  MixingProblem prob;
  prob.canonical =
      choi_to_kraus(kraus_to_choi(kraus), config.tol).operators();
  for (int i = 0; i < config.pad_operators; ++i)
    prob.canonical.emplace_back(Matrix::Zero(d, d));
  prob.d = d;
  prob.m = static_cast<Index>(prob.canonical.size());
  prob.k = target_k;
  for (const Matrix& op : prob.canonical) prob.total_sq += op.squaredNorm();

  const double achieve_threshold = 1e-12 * prob.total_sq;
  const double polish_trigger = 1e-5 * prob.total_sq;
  const double hard_target = 1e-26 * prob.total_sq;

  // Starting points: the identity, then the caller's warm start when its
  // shape matches, then Haar-random unitaries.
  std::vector<Matrix> starts;
  starts.push_back(Matrix::Identity(prob.m, prob.m));
  if (config.initial_mixing.rows() == prob.m &&
      config.initial_mixing.cols() == prob.m)
    starts.push_back(config.initial_mixing);
  const int restarts = std::max<int>(config.restarts,
                                     static_cast<int>(starts.size()));
  for (int r = static_cast<int>(starts.size()); r < restarts; ++r)
    starts.push_back(haar_random_unitary(prob.m, derive_seed(config.seed, r)));

  double best_f = std::numeric_limits<double>::infinity();
  Matrix best_u;
  for (int r = 0; r < restarts; ++r) {
    Matrix u = starts[r];
    double f = descend(prob, &u, config.step, config.max_iters,
                       polish_trigger);
    if (f <= polish_trigger)
      f = polish(prob, &u, f, hard_target, 500);
    // A polished point that is still rough may yield to one more descent.
    if (f > hard_target && f <= polish_trigger) {
      f = descend(prob, &u, config.step / 10.0, config.max_iters,
                  hard_target);
      f = polish(prob, &u, f, hard_target, 500);
    }
    if (f < best_f) {
      best_f = f;
      best_u = u;
    }
    if (best_f <= hard_target) break;  // feasible to machine precision
  }

  RankCertificate cert;
  cert.target_k = target_k;
  cert.residual = best_f;
  cert.mixing_unitary = best_u;

  std::vector<Matrix> mixed = mix_operators(prob, best_u);
  // Rank accounting on near-zero operators is pure noise; they carry no
  // channel weight, so leave them out of the witness.
  const double drop_sq = 1e-12 * prob.total_sq;
  std::vector<Matrix> kept;
  for (const Matrix& op : mixed)
    if (op.squaredNorm() > drop_sq) kept.push_back(op);

  const double reverify_tol = 1e-8;
  Index max_rank = 0;
  for (const Matrix& op : kept)
    max_rank = std::max(max_rank, numerical_rank(op, reverify_tol));
  cert.max_rank_found = max_rank;

  if (best_f < 1e-12 * prob.total_sq) {
    // Independent re-verification before the certificate is issued: ranks
    // at the optimum and regeneration of the channel's Choi state.
    KrausSet witness(kept);
    const double choi_residual = max_abs(
        kraus_to_choi(witness).matrix() - kraus_to_choi(kraus).matrix());
    if (max_rank <= target_k && choi_residual <= 1e-8) {
      cert.achieved = true;
      cert.witness_kraus = std::move(witness);
    }
  }
  return cert;
}

Index sn_upper_search(const KrausSet& kraus, const MinimizeConfig& config) {
  const KrausSet canonical =
      choi_to_kraus(kraus_to_choi(kraus), config.tol);
  const Index k_start = kraus_max_rank(canonical, config.tol);
  // Scan the whole range: a miss at some k is only an optimizer failure and
  // must not mask a success further down. Each achieved mixing warm-starts
  // the next, smaller target.
  MinimizeConfig scan_config = config;
  Index best = k_start;
  for (Index k = k_start - 1; k >= 1; --k) {
    const RankCertificate cert = minimize_kraus_rank(kraus, k, scan_config);
    if (cert.achieved) {
      best = k;
      scan_config.initial_mixing = cert.mixing_unitary;
    }
  }
  return best;
}

Index sn_lower_bound_fidelity(const ChoiMatrix& j) {
  const Index d = j.d();
  const Vector phi = maximally_entangled(d);
  const double fidelity = (phi.adjoint() * j.matrix() * phi)(0, 0).real();
  // Guard the ceiling against roundoff sitting exactly on a boundary k/d.
  const Index k = static_cast<Index>(
      std::ceil(fidelity * static_cast<double>(d) - 1e-9));
  return std::clamp<Index>(k, 1, d);
}

}  // namespace qpeb
