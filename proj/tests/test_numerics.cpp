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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qpeb/errors.hpp"
#include "qpeb/numerics.hpp"

using namespace qpeb;

namespace {

Matrix random_gaussian(Index rows, Index cols, std::uint64_t seed) {
  GaussianStream stream(seed);
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = stream.standard_complex();
  return m;
}

Matrix random_hermitian(Index n, std::uint64_t seed) {
  const Matrix g = random_gaussian(n, n, seed);
  return (g + g.adjoint()) / 2.0;
}

}  // namespace

TEST_CASE("svd of the 2x2 identity") {
  const SvdResult dec = svd(Matrix::Identity(2, 2));
  CHECK(dec.singular_values(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(dec.singular_values(1) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("svd of diag(3, 0)") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 3.0;
  const SvdResult dec = svd(m);
  CHECK(dec.singular_values(0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(dec.singular_values(1) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("svd reconstructs a random 4x3 matrix") {
  const Matrix m = random_gaussian(4, 3, 11);
  const SvdResult dec = svd(m);
  const Matrix rebuilt =
      dec.u * dec.singular_values.asDiagonal().toDenseMatrix().cast<Complex>() *
      dec.v_dagger;
  CHECK(max_abs(rebuilt - m) < 1e-12 * dec.singular_values(0));
  for (Index i = 0; i + 1 < dec.singular_values.size(); ++i)
    CHECK(dec.singular_values(i) >= dec.singular_values(i + 1));
  CHECK(max_abs(dec.u.adjoint() * dec.u - Matrix::Identity(3, 3)) < 1e-12);
}

TEST_CASE("svd rejects non-finite input") {
  Matrix m = Matrix::Identity(2, 2);
  m(0, 1) = Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(svd(m), InvalidArgument);
}

TEST_CASE("eigh of diag(2, 1)") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 2.0;
  m(1, 1) = 1.0;
  const EighResult eig = eigh(m);
  CHECK(eig.eigenvalues(0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(eig.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("eigh of the flip matrix") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  const EighResult eig = eigh(m);
  CHECK(eig.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(eig.eigenvalues(1) == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("eigh residual and orthonormality on a random Hermitian 9x9") {
  const Matrix h = random_hermitian(9, 5);
  const EighResult eig = eigh(h);
  const double scale = std::abs(eig.eigenvalues(0));
  for (Index i = 0; i < 9; ++i) {
    const Vector residual =
        h * eig.eigenvectors.col(i) -
        eig.eigenvalues(i) * eig.eigenvectors.col(i);
    CHECK(residual.cwiseAbs().maxCoeff() < 1e-10 * scale);
  }
  CHECK(max_abs(eig.eigenvectors.adjoint() * eig.eigenvectors -
                Matrix::Identity(9, 9)) < 1e-10);
}

TEST_CASE("eigh rejects a non-Hermitian matrix") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(eigh(m), InvalidArgument);
}

TEST_CASE("eigh on PSD input keeps the spectrum nonnegative") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Matrix g = random_gaussian(6, 6, 300 + seed);
    const Matrix psd = g * g.adjoint();
    const EighResult eig = eigh(psd, 1e-8);
    CHECK(eig.eigenvalues(5) >= -1e-10 * eig.eigenvalues(0));
  }
}

TEST_CASE("numerical rank basics") {
  CHECK(numerical_rank(Matrix::Zero(3, 3)) == 0);

  Matrix outer = Matrix::Zero(2, 2);  // |0><1|
  outer(0, 1) = 1.0;
  CHECK(numerical_rank(outer) == 1);

  Matrix damping = Matrix::Zero(2, 2);  // diag(1, sqrt(1-gamma)), gamma = 0.5
  damping(0, 0) = 1.0;
  damping(1, 1) = std::sqrt(0.5);
  CHECK(numerical_rank(damping) == 2);
}

TEST_CASE("numerical rank rejects tolerances outside (0, 1)") {
  CHECK_THROWS_AS(numerical_rank(Matrix::Identity(2, 2), 0.0),
                  InvalidArgument);
  CHECK_THROWS_AS(numerical_rank(Matrix::Identity(2, 2), 1.0),
                  InvalidArgument);
}

TEST_CASE("svd reconstructs across shapes") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const Index rows = 1 + static_cast<Index>(seed % 4);
    const Index cols = 1 + static_cast<Index>((seed / 4) % 3) * 2;
    const Matrix m = random_gaussian(rows, cols, 800 + seed);
    const SvdResult dec = svd(m);
    const Matrix rebuilt =
        dec.u *
        dec.singular_values.asDiagonal().toDenseMatrix().cast<Complex>() *
        dec.v_dagger;
    CHECK(max_abs(rebuilt - m) <= 1e-12 * std::max(dec.singular_values(0), 1.0));
    for (Index i = 0; i + 1 < dec.singular_values.size(); ++i)
      CHECK(dec.singular_values(i) >= dec.singular_values(i + 1));
  }
}

TEST_CASE("numerical rank is unitarily invariant") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Matrix m = random_gaussian(4, 4, 400 + seed);
    m.col(3) = m.col(0) + m.col(1);  // force rank 3
    const Matrix u = haar_random_unitary(4, 500 + seed);
    const Matrix v = haar_random_unitary(4, 600 + seed);
    const Index rank = numerical_rank(m);
    CHECK(rank == 3);
    CHECK(numerical_rank(u * m) == rank);
    CHECK(numerical_rank(m * v) == rank);
    CHECK(numerical_rank(u * m * v) == rank);
  }
}

TEST_CASE("haar unitary: n = 1 gives a unit-modulus scalar") {
  const Matrix u = haar_random_unitary(1, 7);
  CHECK(std::abs(std::abs(u(0, 0)) - 1.0) < 1e-14);
}

TEST_CASE("haar unitary is deterministic per seed") {
  const Matrix a = haar_random_unitary(4, 123);
  const Matrix b = haar_random_unitary(4, 123);
  CHECK(max_abs(a - b) == 0.0);
  const Matrix c = haar_random_unitary(4, 124);
  CHECK(max_abs(a - c) > 1e-3);
}

TEST_CASE("haar unitary stays unitary over 1000 samples") {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const Matrix u = haar_random_unitary(4, seed);
    for (Index j = 0; j < 4; ++j)
      CHECK(std::abs(u.col(j).norm() - 1.0) < 1e-10);
    CHECK(max_abs(u.adjoint() * u - Matrix::Identity(4, 4)) < 1e-10);
  }
}

TEST_CASE("haar unitary rejects n = 0") {
  CHECK_THROWS_AS(haar_random_unitary(0, 1), InvalidArgument);
}

TEST_CASE("partial traces against a hand-built tensor product") {
  const Matrix a = random_hermitian(2, 71);
  const Matrix b = random_hermitian(3, 72);
  const Matrix prod = kron(a, b);
  CHECK(max_abs(partial_trace_first(prod, 2, 3) - a.trace() * b) < 1e-13);
  CHECK(max_abs(partial_trace_second(prod, 2, 3) - b.trace() * a) < 1e-13);
}

TEST_CASE("hermitian_sqrt squares back") {
  const Matrix g = random_gaussian(4, 4, 81);
  const Matrix psd = g * g.adjoint();
  const Matrix root = hermitian_sqrt(psd, 1e-8);
  CHECK(max_abs(root * root - psd) < 1e-10 * max_abs(psd));
}
