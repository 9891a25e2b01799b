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

#include "qpeb/channels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "qpeb/errors.hpp"

namespace qpeb {

Vector maximally_entangled(Index d) {
  if (d < 1) throw InvalidArgument("maximally_entangled: d must be >= 1");
  Vector phi = Vector::Zero(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (Index i = 0; i < d; ++i) phi(i * d + i) = amp;
  return phi;
}

DensityMatrix::DensityMatrix(Matrix rho, double tol) : mat_(std::move(rho)) {
  if (mat_.size() == 0 || mat_.rows() != mat_.cols())
    throw InvalidArgument("DensityMatrix: matrix must be square and nonempty");
  if (!is_finite(mat_))
    throw InvalidArgument("DensityMatrix: non-finite entries");
  const double herm = max_abs(mat_ - mat_.adjoint());
  if (herm > tol) {
    std::ostringstream msg;
    msg << "DensityMatrix: not Hermitian, violation " << herm;
    throw InvalidArgument(msg.str());
  }
  const double trace_err = std::abs(mat_.trace() - Complex(1.0, 0.0));
  if (trace_err > tol) {
    std::ostringstream msg;
    msg << "DensityMatrix: trace differs from 1 by " << trace_err;
    throw InvalidArgument(msg.str());
  }
  const EighResult eig = eigh(mat_, std::max(tol, herm + 1e-15));
  const double min_eig = eig.eigenvalues(eig.eigenvalues.size() - 1);
  if (min_eig < -tol) {
    std::ostringstream msg;
    msg << "DensityMatrix: negative eigenvalue " << min_eig;
    throw InvalidArgument(msg.str());
  }
}

KrausSet::KrausSet(std::vector<Matrix> operators, double tol)
    : ops_(std::move(operators)) {
  if (ops_.empty()) throw InvalidArgument("KrausSet: needs >= 1 operator");
  d_out_ = ops_.front().rows();
  d_in_ = ops_.front().cols();
  if (d_in_ < 1 || d_out_ < 1)
    throw InvalidArgument("KrausSet: operators must be nonempty");
  for (const Matrix& op : ops_) {
    if (op.rows() != d_out_ || op.cols() != d_in_)
      throw InvalidArgument("KrausSet: inconsistent operator shapes");
    if (!is_finite(op)) throw InvalidArgument("KrausSet: non-finite entries");
  }
  Matrix closure = Matrix::Zero(d_in_, d_in_);
  for (const Matrix& op : ops_) closure += op.adjoint() * op;
  const double violation = max_abs(closure - Matrix::Identity(d_in_, d_in_));
  if (violation > tol) {
    std::ostringstream msg;
    msg << "KrausSet: closure relation violated by " << violation;
    throw InvalidArgument(msg.str());
  }
}

ChoiMatrix::ChoiMatrix(Matrix j, double tol) : mat_(std::move(j)) {
  if (mat_.size() == 0 || mat_.rows() != mat_.cols())
    throw InvalidArgument("ChoiMatrix: matrix must be square");
  const Index dsq = mat_.rows();
  d_ = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(dsq))));
  if (d_ * d_ != dsq)
    throw InvalidArgument("ChoiMatrix: side length is not a perfect square");
  if (!is_finite(mat_)) throw InvalidArgument("ChoiMatrix: non-finite entries");
  const double herm = max_abs(mat_ - mat_.adjoint());
  if (herm > tol) {
    std::ostringstream msg;
    msg << "ChoiMatrix: not Hermitian, violation " << herm;
    throw InvalidArgument(msg.str());
  }
  const double trace_err = std::abs(mat_.trace() - Complex(1.0, 0.0));
  if (trace_err > tol) {
    std::ostringstream msg;
    msg << "ChoiMatrix: trace differs from 1 by " << trace_err;
    throw InvalidArgument(msg.str());
  }
  const EighResult eig = eigh(mat_, std::max(tol, herm + 1e-15));
  const double min_eig = eig.eigenvalues(eig.eigenvalues.size() - 1);
  if (min_eig < -tol) {
    std::ostringstream msg;
    msg << "ChoiMatrix: negative eigenvalue " << min_eig;
    throw InvalidArgument(msg.str());
  }
  // Trace preservation: tracing out the output system must leave I/d.
  const Matrix marginal = partial_trace_second(mat_, d_, d_);
  const Matrix target = Matrix::Identity(d_, d_) / static_cast<double>(d_);
  const double tp = max_abs(marginal - target);
  if (tp > tol) {
    std::ostringstream msg;
    msg << "ChoiMatrix: output marginal differs from I/d by " << tp;
    throw InvalidArgument(msg.str());
  }
}

StinespringIsometry::StinespringIsometry(Matrix v, Index d_out, Index env_dim,
                                         double tol)
    : v_(std::move(v)), d_out_(d_out), env_dim_(env_dim) {
  if (d_out_ < 1 || env_dim_ < 1 || v_.rows() != d_out_ * env_dim_)
    throw InvalidArgument("StinespringIsometry: inconsistent dimensions");
  if (!is_finite(v_))
    throw InvalidArgument("StinespringIsometry: non-finite entries");
  const Matrix gram = v_.adjoint() * v_;
  const double violation =
      max_abs(gram - Matrix::Identity(v_.cols(), v_.cols()));
  if (violation > tol) {
    std::ostringstream msg;
    msg << "StinespringIsometry: V^dag V differs from I by " << violation;
    throw InvalidArgument(msg.str());
  }
}

DensityMatrix apply_kraus(const KrausSet& kraus, const DensityMatrix& rho) {
  if (kraus.d_in() != rho.dim())
    throw InvalidArgument("apply_kraus: dimension mismatch");
  Matrix out = Matrix::Zero(kraus.d_out(), kraus.d_out());
  for (const Matrix& op : kraus.operators())
    out += op * rho.matrix() * op.adjoint();
  return DensityMatrix(std::move(out));
}

ChoiMatrix kraus_to_choi(const KrausSet& kraus) {
  if (kraus.d_in() != kraus.d_out())
    throw InvalidArgument("kraus_to_choi: channel must map d -> d");
  const Index d = kraus.d_in();
  Matrix j = Matrix::Zero(d * d, d * d);
  for (const Matrix& op : kraus.operators()) {
    // (I ⊗ K)|Φ_d> reshapes to the vector w with w[i·d+j] = K[j,i]/√d.
    Vector w(d * d);
    for (Index i = 0; i < d; ++i)
      for (Index row = 0; row < d; ++row) w(i * d + row) = op(row, i);
    j += w * w.adjoint();
  }
  j /= static_cast<double>(d);
  return ChoiMatrix(std::move(j));
}

KrausSet choi_to_kraus(const ChoiMatrix& j, double tol) {
  if (tol <= 0.0 || tol >= 1.0)
    throw InvalidArgument("choi_to_kraus: tol must lie in (0, 1)");
  const Index d = j.d();
  const EighResult eig = eigh(j.matrix(), kChannelTol);
  const double max_eig = eig.eigenvalues(0);
  if (max_eig <= 0.0)
    throw InvalidArgument("choi_to_kraus: Choi matrix has no positive part");
  const double cutoff = tol * max_eig;
  std::vector<Matrix> ops;
  for (Index a = 0; a < eig.eigenvalues.size(); ++a) {
    const double lambda = eig.eigenvalues(a);
    if (lambda < -cutoff) {
      std::ostringstream msg;
      msg << "choi_to_kraus: eigenvalue " << lambda
          << " below -tol*lambda_max; not a channel";
      throw InvalidArgument(msg.str());
    }
    if (lambda <= cutoff) continue;
    const double scale = std::sqrt(static_cast<double>(d) * lambda);
    Matrix op(d, d);
    for (Index i = 0; i < d; ++i)
      for (Index row = 0; row < d; ++row)
        op(row, i) = scale * eig.eigenvectors(i * d + row, a);
    ops.push_back(std::move(op));
  }
  return KrausSet(std::move(ops));
}

DensityMatrix choi_apply(const ChoiMatrix& j, const DensityMatrix& rho) {
  const Index d = j.d();
  if (rho.dim() != d) throw InvalidArgument("choi_apply: dimension mismatch");
  const Matrix lifted =
      kron(Matrix(rho.matrix().transpose()), Matrix(Matrix::Identity(d, d))) *
      j.matrix();
  Matrix out = partial_trace_first(lifted, d, d) * static_cast<double>(d);
  return DensityMatrix(std::move(out));
}

StinespringIsometry kraus_to_stinespring(const KrausSet& kraus) {
  const Index m = kraus.size();
  const Index d_in = kraus.d_in();
  const Index d_out = kraus.d_out();
  Matrix v = Matrix::Zero(d_out * m, d_in);
  for (Index alpha = 0; alpha < m; ++alpha)
    for (Index row = 0; row < d_out; ++row)
      v.row(row * m + alpha) = kraus[alpha].row(row);
  return StinespringIsometry(std::move(v), d_out, m);
}

CptpReport verify_cptp(const std::vector<Matrix>& kraus_ops, double tol) {
  CptpReport report;
  if (kraus_ops.empty()) return report;
  const Index d_out = kraus_ops.front().rows();
  const Index d_in = kraus_ops.front().cols();
  for (const Matrix& op : kraus_ops)
    if (op.rows() != d_out || op.cols() != d_in || !is_finite(op))
      return report;
  Matrix closure = Matrix::Zero(d_in, d_in);
  for (const Matrix& op : kraus_ops) closure += op.adjoint() * op;
  const double tp_violation =
      max_abs(closure - Matrix::Identity(d_in, d_in));
  report.trace_preserving = tp_violation <= tol;
  // A Kraus family is completely positive by form.
  report.completely_positive = true;
  report.max_violation = tp_violation;
  return report;
}

CptpReport verify_cptp(const Matrix& choi_candidate, double tol) {
  CptpReport report;
  if (choi_candidate.size() == 0 ||
      choi_candidate.rows() != choi_candidate.cols() ||
      !is_finite(choi_candidate))
    return report;
  const Index dsq = choi_candidate.rows();
  const Index d =
      static_cast<Index>(std::llround(std::sqrt(static_cast<double>(dsq))));
  if (d * d != dsq) return report;

  const double herm = max_abs(choi_candidate - choi_candidate.adjoint());
  const Matrix symmetrized = (choi_candidate + choi_candidate.adjoint()) / 2.0;
  const EighResult eig = eigh(symmetrized, 1e-6);
  const double min_eig = eig.eigenvalues(eig.eigenvalues.size() - 1);
  const double cp_violation = std::max(herm, std::max(0.0, -min_eig));
  report.completely_positive = cp_violation <= tol;

  const Matrix marginal = partial_trace_second(choi_candidate, d, d);
  const double tp_violation = max_abs(
      marginal - Matrix::Identity(d, d) / static_cast<double>(d));
  const double trace_err =
      std::abs(choi_candidate.trace() - Complex(1.0, 0.0));
  report.trace_preserving = std::max(tp_violation, trace_err) <= tol;

  report.max_violation =
      std::max({cp_violation, tp_violation, trace_err});
  return report;
}

ChannelDistance channel_distance(const ChoiMatrix& j1, const ChoiMatrix& j2) {
  if (j1.d() != j2.d())
    throw InvalidArgument("channel_distance: dimension mismatch");
  ChannelDistance out;

  const Matrix diff = j1.matrix() - j2.matrix();
  const EighResult diff_eig = eigh(diff, kChannelTol);
  out.trace_distance = 0.5 * diff_eig.eigenvalues.cwiseAbs().sum();
  out.trace_distance = std::clamp(out.trace_distance, 0.0, 1.0);

  const Matrix root = hermitian_sqrt(j1.matrix(), kChannelTol);
  const Matrix inner = root * j2.matrix() * root;
  // inner is PSD up to roundoff; clamp its spectrum at zero.
  const EighResult inner_eig = eigh((inner + inner.adjoint()) / 2.0, 1e-8);
  double sqrt_sum = 0.0;
  for (Index i = 0; i < inner_eig.eigenvalues.size(); ++i)
    sqrt_sum += std::sqrt(std::max(inner_eig.eigenvalues(i), 0.0));
  out.fidelity = std::clamp(sqrt_sum * sqrt_sum, 0.0, 1.0);
  return out;
}

}  // namespace qpeb
