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

#include "qpeb/zoo.hpp"

#include <cmath>
#include <utility>

#include "qpeb/errors.hpp"
#include "qpeb/protocol.hpp"

namespace qpeb {

namespace {

double require_param(const std::map<std::string, double>& params,
                     const std::string& key) {
  const auto it = params.find(key);
  if (it == params.end())
    throw InvalidArgument("make_channel: missing parameter '" + key + "'");
  return it->second;
}

}  // namespace

ChannelSpec depolarizing(Index d, double p) {
  if (d < 1) throw InvalidArgument("depolarizing: d must be >= 1");
  if (p < 0.0 || p > 1.0)
    throw InvalidArgument("depolarizing: p must lie in [0, 1]");

  std::vector<Matrix> ops;
  if (p == 0.0) {
    ops.push_back(Matrix::Identity(d, d));
  } else {
    const double dd = static_cast<double>(d);
    ops.push_back(std::sqrt(1.0 - p + p / (dd * dd)) *
                  Matrix::Identity(d, d));
    const double weight = std::sqrt(p) / dd;
    for (Index m = 0; m < d; ++m)
      for (Index n = 0; n < d; ++n)
        if (m != 0 || n != 0) ops.push_back(weight * weyl(d, m, n));
  }

  SnBounds bounds{1, d, "interpolates identity and twirl"};
  if (p == 0.0) bounds = {d, d, "identity channel"};
  if (p == 1.0) bounds = {1, 1, "uniform Weyl twirl is measure-and-prepare"};
  return ChannelSpec{"depolarizing", d,        {{"p", p}},
                     KrausSet(std::move(ops)), bounds, d};
}

ChannelSpec dephasing(Index d, double p) {
  if (d < 2) throw InvalidArgument("dephasing: d must be >= 2");
  if (p < 0.0 || p > 1.0)
    throw InvalidArgument("dephasing: p must lie in [0, 1]");

  std::vector<Matrix> ops;
  ops.push_back(std::sqrt(1.0 - p) * Matrix::Identity(d, d));
  const double weight = std::sqrt(p / static_cast<double>(d - 1));
  for (Index j = 1; j < d; ++j) ops.push_back(weight * weyl(d, 0, j));

  const SnBounds bounds =
      (p == 0.0) ? SnBounds{d, d, "identity channel"}
                 : SnBounds{1, d, "phase mixture, diagonal fixed points"};
  return ChannelSpec{"dephasing", d,        {{"p", p}},
                     KrausSet(std::move(ops)), bounds, d};
}

ChannelSpec amplitude_damping_qubit(double gamma) {
  if (gamma < 0.0 || gamma > 1.0)
    throw InvalidArgument("amplitude_damping_qubit: gamma must lie in [0, 1]");
  Matrix k0 = Matrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - gamma);
  Matrix k1 = Matrix::Zero(2, 2);
  k1(0, 1) = std::sqrt(gamma);

  SnBounds bounds{1, 2, "K0 has rank 2"};
  if (gamma == 0.0) bounds = {2, 2, "identity channel"};
  if (gamma == 1.0) bounds = {1, 1, "prepares |0>"};
  const Index rank = (gamma < 1.0) ? 2 : 1;
  return ChannelSpec{"amplitude-damping",
                     2,
                     {{"gamma", gamma}},
                     KrausSet({std::move(k0), std::move(k1)}),
                     bounds,
                     rank};
}

ChannelSpec werner_holevo(Index d) {
  if (d < 2) throw InvalidArgument("werner_holevo: d must be >= 2");
  const double weight = 1.0 / std::sqrt(static_cast<double>(d - 1));
  std::vector<Matrix> ops;
  for (Index i = 0; i < d; ++i) {
    for (Index j = i + 1; j < d; ++j) {
      Matrix op = Matrix::Zero(d, d);
      op(i, j) = weight;
      op(j, i) = -weight;
      ops.push_back(std::move(op));
    }
  }

  const SnBounds bounds =
      (d == 2) ? SnBounds{2, 2, "single antisymmetric unitary"}
               : SnBounds{2, 2,
                          "Choi is the antisymmetric Werner state: rank-2 "
                          "basis decomposition, entangled"};
  return ChannelSpec{"werner-holevo", d, {}, KrausSet(std::move(ops)),
                     bounds, 2};
}

ChannelSpec measure_prepare(Index d, std::uint64_t seed) {
  if (d < 1) throw InvalidArgument("measure_prepare: d must be >= 1");
  const Matrix basis = haar_random_unitary(d, derive_seed(seed, 0));
  std::vector<Matrix> ops;
  for (Index i = 0; i < d; ++i) {
    const Vector prepared = haar_random_vector(d, derive_seed(seed, 1 + i));
    ops.push_back(prepared * basis.col(i).adjoint());
  }
  return ChannelSpec{"measure-prepare",
                     d,
                     {{"seed", static_cast<double>(seed)}},
                     KrausSet(std::move(ops)),
                     SnBounds{1, 1, "measure-and-prepare form"},
                     1};
}

ChannelSpec unitary_channel(Index d, std::uint64_t seed) {
  if (d < 1) throw InvalidArgument("unitary_channel: d must be >= 1");
  return ChannelSpec{
      "unitary",
      d,
      {{"seed", static_cast<double>(seed)}},
      KrausSet({haar_random_unitary(d, seed)}),
      SnBounds{d, d, "unitary channels have Schmidt number d"},
      d};
}

ChannelSpec random_rank_k_channel(Index d, Index k, int num_kraus,
                                  std::uint64_t seed, bool scramble) {
  if (d < 1 || k < 1 || k > d)
    throw InvalidArgument("random_rank_k_channel: need 1 <= k <= d");
  if (num_kraus < 1)
    throw InvalidArgument("random_rank_k_channel: num_kraus must be >= 1");

  constexpr int kMaxRetries = 16;
  std::vector<Matrix> ops;
  bool normalized = false;
  for (int attempt = 0; attempt < kMaxRetries && !normalized; ++attempt) {
    GaussianStream stream(derive_seed(seed, attempt));
    std::vector<Matrix> raw;
    raw.reserve(num_kraus);
    for (int a = 0; a < num_kraus; ++a) {
      Matrix left(d, k);
      Matrix right(k, d);
      for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < k; ++j) left(i, j) = stream.standard_complex();
      for (Index i = 0; i < k; ++i)
        for (Index j = 0; j < d; ++j) right(i, j) = stream.standard_complex();
      raw.push_back(left * right);
    }
    Matrix gram = Matrix::Zero(d, d);
    for (const Matrix& op : raw) gram += op.adjoint() * op;
    const EighResult eig = eigh(gram, 1e-8);
    const double min_eig = eig.eigenvalues(eig.eigenvalues.size() - 1);
    if (min_eig <= 1e-10 * eig.eigenvalues(0)) continue;  // resample
    RealVector inv_roots(eig.eigenvalues.size());
    for (Index i = 0; i < inv_roots.size(); ++i)
      inv_roots(i) = 1.0 / std::sqrt(eig.eigenvalues(i));
    // Right-multiplying by gram^{-1/2} cannot increase operator rank.
    const Matrix normalizer = eig.eigenvectors * inv_roots.asDiagonal() *
                              eig.eigenvectors.adjoint();
    ops.clear();
    for (const Matrix& op : raw) ops.push_back(op * normalizer);
    normalized = true;
  }
  if (!normalized)
    throw InvalidArgument(
        "random_rank_k_channel: normalizer stayed singular; "
        "num_kraus*k likely below d");

  if (scramble) {
    const Matrix mixer = haar_random_unitary(
        static_cast<Index>(num_kraus), derive_seed(seed, 101));
    std::vector<Matrix> mixed(ops.size(), Matrix::Zero(d, d));
    for (std::size_t beta = 0; beta < ops.size(); ++beta)
      for (std::size_t alpha = 0; alpha < ops.size(); ++alpha)
        mixed[beta] += mixer(static_cast<Index>(beta),
                             static_cast<Index>(alpha)) *
                       ops[alpha];
    ops = std::move(mixed);
  }

  return ChannelSpec{"random-rank-k",
                     d,
                     {{"k", static_cast<double>(k)},
                      {"num_kraus", static_cast<double>(num_kraus)},
                      {"seed", static_cast<double>(seed)},
                      {"scramble", scramble ? 1.0 : 0.0}},
                     KrausSet(std::move(ops)),
                     SnBounds{1, k, "built from rank-<=k factors"},
                     k};
}

ChannelSpec make_channel(const std::string& name, Index d,
                         const std::map<std::string, double>& params,
                         std::uint64_t seed) {
  if (name == "depolarizing")
    return depolarizing(d, require_param(params, "p"));
  if (name == "dephasing") return dephasing(d, require_param(params, "p"));
  if (name == "amplitude-damping") {
    if (d != 0 && d != 2)
      throw InvalidArgument("make_channel: amplitude-damping is qubit-only");
    return amplitude_damping_qubit(require_param(params, "gamma"));
  }
  if (name == "werner-holevo") return werner_holevo(d);
  if (name == "measure-prepare") return measure_prepare(d, seed);
  if (name == "unitary") return unitary_channel(d, seed);
  if (name == "random-rank-k") {
    const Index k = static_cast<Index>(require_param(params, "k"));
    const int num = static_cast<int>(
        params.count("num_kraus") ? params.at("num_kraus") : 4.0);
    const bool scramble =
        params.count("scramble") ? params.at("scramble") != 0.0 : false;
    return random_rank_k_channel(d, k, num, seed, scramble);
  }
  throw InvalidArgument("make_channel: unknown generator '" + name + "'");
}

std::vector<ChannelSpec> test_corpus(std::uint64_t seed) {
  std::vector<ChannelSpec> corpus;
  for (Index d = 2; d <= 4; ++d) {
    corpus.push_back(depolarizing(d, 0.5));
    corpus.push_back(depolarizing(d, 1.0));
    corpus.push_back(dephasing(d, 0.3));
    corpus.push_back(werner_holevo(d));
    corpus.push_back(measure_prepare(d, derive_seed(seed, 10 + d)));
    corpus.push_back(unitary_channel(d, derive_seed(seed, 20 + d)));
    for (Index k = 1; k <= d; ++k) {
      const int num_kraus =
          static_cast<int>(std::max<Index>(3, (d + k - 1) / k));
      corpus.push_back(random_rank_k_channel(
          d, k, num_kraus, derive_seed(seed, 100 + 10 * d + k), false));
    }
    corpus.push_back(random_rank_k_channel(d, (d + 1) / 2, 3,
                                           derive_seed(seed, 200 + d), true));
  }
  corpus.push_back(dephasing(2, 0.75));
  corpus.push_back(amplitude_damping_qubit(0.5));
  corpus.push_back(amplitude_damping_qubit(0.1));
  return corpus;
}

}  // namespace qpeb
