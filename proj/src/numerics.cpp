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

#include "qpeb/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qpeb/errors.hpp"

namespace qpeb {

bool is_finite(const Matrix& m) {
  return m.allFinite();
}

double max_abs(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Matrix partial_trace_first(const Matrix& m, Index da, Index db) {
  if (m.rows() != da * db || m.cols() != da * db)
    throw InvalidArgument("partial_trace_first: dimension mismatch");
  Matrix out = Matrix::Zero(db, db);
  for (Index i = 0; i < da; ++i)
    out += m.block(i * db, i * db, db, db);
  return out;
}

Matrix partial_trace_second(const Matrix& m, Index da, Index db) {
  if (m.rows() != da * db || m.cols() != da * db)
    throw InvalidArgument("partial_trace_second: dimension mismatch");
  Matrix out = Matrix::Zero(da, da);
  for (Index i = 0; i < da; ++i)
    for (Index j = 0; j < da; ++j)
      out(i, j) = m.block(i * db, j * db, db, db).trace();
  return out;
}

SvdResult svd(const Matrix& m) {
  if (m.size() == 0) throw InvalidArgument("svd: empty matrix");
  if (!is_finite(m)) throw InvalidArgument("svd: non-finite entries");
  Eigen::JacobiSVD<Matrix> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return SvdResult{solver.matrixU(), solver.singularValues(),
                   solver.matrixV().adjoint()};
}

EighResult eigh(const Matrix& h, double hermiticity_tol) {
  if (h.size() == 0) throw InvalidArgument("eigh: empty matrix");
  if (h.rows() != h.cols()) throw InvalidArgument("eigh: matrix not square");
  if (!is_finite(h)) throw InvalidArgument("eigh: non-finite entries");
  const double herm_violation = max_abs(h - h.adjoint());
  if (herm_violation > hermiticity_tol) {
    std::ostringstream msg;
    msg << "eigh: input not Hermitian, max |H - H^dag| = " << herm_violation;
    throw InvalidArgument(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw InvalidArgument("eigh: eigensolver failed to converge");
  // Eigen returns ascending order; flip to descending.
  const Index n = h.rows();
  EighResult out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = Matrix(n, n);
  for (Index i = 0; i < n; ++i)
    out.eigenvectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  return out;
}

Index numerical_rank(const Matrix& m, double tol) {
  if (tol <= 0.0 || tol >= 1.0)
    throw InvalidArgument("numerical_rank: tol must lie in (0, 1)");
  const RealVector sigma = svd(m).singular_values;
  if (sigma.size() == 0) return 0;
  const double cutoff = tol * sigma(0);
  Index rank = 0;
  for (Index i = 0; i < sigma.size(); ++i)
    if (sigma(i) > cutoff) ++rank;
  return rank;
}

Matrix hermitian_sqrt(const Matrix& psd, double hermiticity_tol) {
  const EighResult eig = eigh(psd, hermiticity_tol);
  RealVector roots(eig.eigenvalues.size());
  for (Index i = 0; i < roots.size(); ++i)
    roots(i) = std::sqrt(std::max(eig.eigenvalues(i), 0.0));
  return eig.eigenvectors * roots.asDiagonal() *
         eig.eigenvectors.adjoint();
}

namespace {

// 53 uniform bits from one engine draw; the mt19937_64 sequence is fixed by
// the standard, so results are identical everywhere.
double uniform_from_bits(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace

double GaussianStream::uniform() {
  return uniform_from_bits(engine_);
}

double GaussianStream::real() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  // Box-Muller on deterministic uniforms.
  double u1 = uniform_from_bits(engine_);
  while (u1 <= 0.0) u1 = uniform_from_bits(engine_);
  const double u2 = uniform_from_bits(engine_);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_ = radius * std::sin(angle);
  has_cached_ = true;
  return radius * std::cos(angle);
}

Complex GaussianStream::standard_complex() {
  const double re = real();
  const double im = real();
  return Complex(re, im);
}

Matrix haar_random_unitary(Index n, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("haar_random_unitary: n must be >= 1");
  GaussianStream stream(seed);
  Matrix ginibre(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      ginibre(i, j) = stream.standard_complex();
  Eigen::HouseholderQR<Matrix> qr(ginibre);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fold the R diagonal phases into Q so the distribution is exactly Haar.
  for (Index j = 0; j < n; ++j) {
    const Complex diag = r(j, j);
    const double mag = std::abs(diag);
    q.col(j) *= (mag > 0.0) ? diag / mag : Complex(1.0, 0.0);
  }
  return q;
}

Vector haar_random_vector(Index n, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("haar_random_vector: n must be >= 1");
  GaussianStream stream(seed);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = stream.standard_complex();
  const double norm = v.norm();
  if (norm == 0.0) return haar_random_vector(n, derive_seed(seed, 1));
  return v / norm;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  // splitmix64 finalizer over the combined words.
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace qpeb
