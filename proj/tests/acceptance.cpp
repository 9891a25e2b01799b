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

// End-to-end acceptance runner. Each criterion prints a single PASS/FAIL
// line; the process exits nonzero iff any criterion fails.

#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qpeb/channels.hpp"
#include "qpeb/errors.hpp"
#include "qpeb/protocol.hpp"
#include "qpeb/schmidt.hpp"
#include "qpeb/zoo.hpp"

using namespace qpeb;

namespace {

constexpr std::uint64_t kCorpusSeed = 20260810;

DensityMatrix random_density(Index d, std::uint64_t seed) {
  GaussianStream stream(seed);
  Matrix g(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) g(i, j) = stream.standard_complex();
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho));
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& what) {
    pass = false;
    if (detail.tellp() > 0) detail << "; ";
    detail << what;
  }
};

// 1. Every corpus channel simulates exactly: protocol output vs direct
//    application on 10 random inputs, protocol Choi vs channel Choi.
// 2. In the same runs, composite operators stay at rank <= k and the
//    resource has Schmidt rank exactly k.
void criterion_1_2(Outcome* c1, Outcome* c2) {
  const std::vector<ChannelSpec> corpus = test_corpus(kCorpusSeed);
  if (corpus.size() < 30) {
    c1->fail("corpus smaller than 30 channels");
    return;
  }
  std::uint64_t input_seed = 1;
  for (const ChannelSpec& spec : corpus) {
    const Index k = kraus_max_rank(spec.kraus);
    double worst_residual = 0.0;
    try {
      for (int trial = 0; trial < 10; ++trial) {
        const DensityMatrix rho = random_density(spec.d, input_seed++);
        const SimulationResult sim = simulate_locc_exact(spec.kraus, k, rho);
        const Matrix direct = apply_kraus(spec.kraus, rho).matrix();
        worst_residual = std::max(
            worst_residual, max_abs(sim.output.matrix() - direct));
      }
      if (worst_residual > 1e-9)
        c1->fail(spec.name + ": simulation residual " +
                 std::to_string(worst_residual));

      const ChoiMatrix protocol = protocol_choi(spec.kraus, k);
      const double distance =
          channel_distance(protocol, kraus_to_choi(spec.kraus))
              .trace_distance;
      if (distance > 1e-8)
        c1->fail(spec.name + ": protocol Choi distance " +
                 std::to_string(distance));

      for (const Matrix& op : protocol_kraus(spec.kraus, k))
        if (numerical_rank(op) > k) {
          c2->fail(spec.name + ": composite rank above k");
          break;
        }
      if (schmidt_rank(make_resource(k).vector, k, k) != k)
        c2->fail(spec.name + ": resource Schmidt rank differs from k");
    } catch (const Error& err) {
      c1->fail(spec.name + ": " + err.what());
    }
  }
}

// 3. Table chain on every corpus channel, k = the rank its construction
//    guarantees: a rank-<=k witness exists (minimization), the witness
//    simulates the channel, and the protocol Choi respects the fidelity
//    bound.
void criterion_3(Outcome* out) {
  const std::vector<ChannelSpec> corpus = test_corpus(kCorpusSeed);
  std::uint64_t input_seed = 50000;
  for (const ChannelSpec& spec : corpus) {
    const Index k = spec.construction_rank;
    try {
      MinimizeConfig config;
      config.seed = derive_seed(kCorpusSeed, 3000 + input_seed);
      const RankCertificate cert = minimize_kraus_rank(spec.kraus, k, config);
      if (!cert.achieved) {
        out->fail(spec.name + " d=" + std::to_string(spec.d) +
                  ": no rank-" + std::to_string(k) + " witness found");
        continue;
      }
      if (cert.max_rank_found > k) {
        out->fail(spec.name + ": witness rank exceeds k");
        continue;
      }

      const KrausSet& witness = *cert.witness_kraus;
      const DensityMatrix rho = random_density(spec.d, input_seed++);
      const SimulationResult sim = simulate_locc_exact(witness, k, rho);
      const Matrix direct = apply_kraus(spec.kraus, rho).matrix();
      if (max_abs(sim.output.matrix() - direct) > 1e-9) {
        out->fail(spec.name + ": witness simulation mismatch");
        continue;
      }

      const Index lower = sn_lower_bound_fidelity(protocol_choi(witness, k));
      if (lower > k)
        out->fail(spec.name + ": fidelity bound exceeds the resource rank");
    } catch (const Error& err) {
      out->fail(spec.name + ": " + err.what());
    }
  }
}

// 4. Construct-then-scramble: the descending search recovers the planted
//    rank on at least 19 of 20 instances, and every certificate survives
//    independent re-verification at 1e-8.
void criterion_4(Outcome* out) {
  int recovered = 0;
  const int total = 20;
  for (int instance = 0; instance < total; ++instance) {
    const Index planted = 1 + (instance % 2);
    const int num_kraus = 3 + (instance % 3);
    const ChannelSpec spec = random_rank_k_channel(
        3, planted, num_kraus, derive_seed(kCorpusSeed, 4000 + instance),
        true);

    MinimizeConfig config;
    config.seed = derive_seed(kCorpusSeed, 4100 + instance);
    if (sn_upper_search(spec.kraus, config) == planted) ++recovered;

    const RankCertificate cert =
        minimize_kraus_rank(spec.kraus, planted, config);
    if (!cert.achieved) continue;  // counted against recovery above
    for (const Matrix& op : cert.witness_kraus->operators())
      if (numerical_rank(op, 1e-8) > planted)
        out->fail("instance " + std::to_string(instance) +
                  ": witness operator rank above planted k");
    const double choi_residual =
        max_abs(kraus_to_choi(*cert.witness_kraus).matrix() -
                kraus_to_choi(spec.kraus).matrix());
    if (choi_residual > 1e-8)
      out->fail("instance " + std::to_string(instance) +
                ": witness Choi off by " + std::to_string(choi_residual));
  }
  out->detail << "recovered " << recovered << "/" << total;
  if (recovered < 19)
    out->fail("recovery rate below 95%");
}

// 5. For unitary channels at k = d every single branch reproduces the
//    conjugated input, not only the branch average.
void criterion_5(Outcome* out) {
  for (Index d = 2; d <= 4; ++d) {
    for (int rep = 0; rep < 5; ++rep) {
      const Matrix u =
          haar_random_unitary(d, derive_seed(kCorpusSeed, 500 + 10 * d + rep));
      const KrausSet channel({u});
      const DensityMatrix rho =
          random_density(d, derive_seed(kCorpusSeed, 600 + 10 * d + rep));
      const Matrix expected = u * rho.matrix() * u.adjoint();
      const SimulationResult sim = simulate_locc_exact(channel, d, rho);
      for (const BranchOutcome& branch : sim.transcript.outcomes)
        if (max_abs(branch.bob_output.matrix() - expected) > 1e-10) {
          out->fail("d=" + std::to_string(d) + " rep=" +
                    std::to_string(rep) + ": branch deviates");
          break;
        }
    }
  }
}

// 6. Entanglement-breaking channels run on the k = 1 product resource and
//    their protocol Choi stays below the separable fidelity ceiling.
void criterion_6(Outcome* out) {
  for (Index d = 2; d <= 4; ++d) {
    const ChannelSpec spec =
        measure_prepare(d, derive_seed(kCorpusSeed, 10 + d));
    const ResourceState resource = make_resource(1);
    if (schmidt_rank(resource.vector, 1, 1) != 1)
      out->fail("product resource is not rank 1");
    const DensityMatrix rho =
        random_density(d, derive_seed(kCorpusSeed, 700 + d));
    try {
      const SimulationResult sim = simulate_locc_exact(spec.kraus, 1, rho);
      const Matrix direct = apply_kraus(spec.kraus, rho).matrix();
      if (max_abs(sim.output.matrix() - direct) > 1e-9)
        out->fail("d=" + std::to_string(d) + ": EB simulation mismatch");

      const ChoiMatrix protocol = protocol_choi(spec.kraus, 1);
      const Vector phi = maximally_entangled(d);
      const double fidelity =
          (phi.adjoint() * protocol.matrix() * phi)(0, 0).real();
      if (fidelity > 1.0 / static_cast<double>(d) + 1e-9)
        out->fail("d=" + std::to_string(d) + ": fidelity above 1/d");
    } catch (const Error& err) {
      out->fail(std::string("EB case: ") + err.what());
    }
  }
}

// 7. Representation algebra across the corpus: Kraus/Choi round trip and
//    agreement of the two application routes (which also pins the
//    transpose convention of the inverse map).
void criterion_7(Outcome* out) {
  std::uint64_t input_seed = 90000;
  for (const ChannelSpec& spec : test_corpus(kCorpusSeed)) {
    const ChoiMatrix j = kraus_to_choi(spec.kraus);
    const ChoiMatrix rebuilt = kraus_to_choi(choi_to_kraus(j));
    if (max_abs(rebuilt.matrix() - j.matrix()) > 1e-9)
      out->fail(spec.name + ": round trip drift");

    for (int trial = 0; trial < 3; ++trial) {
      const DensityMatrix rho = random_density(spec.d, input_seed++);
      const Matrix via_choi = choi_apply(j, rho).matrix();
      const Matrix via_kraus = apply_kraus(spec.kraus, rho).matrix();
      if (max_abs(via_choi - via_kraus) > 1e-9) {
        out->fail(spec.name + ": application routes disagree");
        break;
      }
    }
  }
}

// 8. Sampled mode statistics: full depolarizing at 10^4 shots lands within
//    five standard errors of I/2 entrywise in at least 19 of 20 seeds.
void criterion_8(Outcome* out) {
  const ChannelSpec depol = depolarizing(2, 1.0);
  const Index k = kraus_max_rank(depol.kraus);
  const DensityMatrix rho = random_density(2, 424242);
  const Matrix target = Matrix::Identity(2, 2) / 2.0;

  int within = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SimulationResult sim =
        simulate_locc_sampled(depol.kraus, k, rho, seed, 10000);
    // Entrywise standard error from the sampled branch ensemble.
    Matrix variance = Matrix::Zero(2, 2);
    for (const BranchOutcome& branch : sim.transcript.outcomes)
      variance += branch.probability *
                  (branch.bob_output.matrix() - sim.output.matrix())
                      .cwiseAbs2();
    bool seed_ok = true;
    for (Index i = 0; i < 2; ++i)
      for (Index j = 0; j < 2; ++j) {
        const double se = std::sqrt(variance(i, j).real() / 10000.0);
        if (std::abs(sim.output.matrix()(i, j) - target(i, j)) >
            5.0 * se + 1e-12)
          seed_ok = false;
      }
    if (seed_ok) ++within;
  }
  out->detail << within << "/20 seeds within 5 standard errors";
  if (within < 19) out->fail("too many seeds outside the error bars");
}

int report(int id, const std::string& name, const Outcome& outcome,
           double seconds) {
  std::cout << (outcome.pass ? "[PASS]" : "[FAIL]") << " criterion " << id
            << ": " << name;
  const std::string detail = outcome.detail.str();
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << " [" << std::fixed << std::setprecision(1) << seconds << "s]"
            << std::endl;
  return outcome.pass ? 0 : 1;
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  int failures = 0;

  const auto timed = [&](int id, const std::string& name, auto&& body) {
    Outcome outcome;
    const auto start = clock::now();
    body(&outcome);
    const double seconds =
        std::chrono::duration<double>(clock::now() - start).count();
    failures += report(id, name, outcome, seconds);
  };

  {
    Outcome c1, c2;
    const auto start = clock::now();
    criterion_1_2(&c1, &c2);
    const double seconds =
        std::chrono::duration<double>(clock::now() - start).count();
    failures += report(1, "exact LOCC simulation matches the channel", c1,
                       seconds);
    failures += report(2, "composite ranks and resource rank stay at k", c2,
                       0.0);
  }

  timed(3, "rank witness, simulation, and fidelity bound chain",
        [](Outcome* out) { criterion_3(out); });
  timed(4, "descending search recovers planted ranks",
        [](Outcome* out) { criterion_4(out); });
  timed(5, "every teleportation branch reproduces the unitary",
        [](Outcome* out) { criterion_5(out); });
  timed(6, "entanglement-breaking channels need no entanglement",
        [](Outcome* out) { criterion_6(out); });
  timed(7, "representation algebra is self-consistent",
        [](Outcome* out) { criterion_7(out); });
  timed(8, "sampled mode converges at the statistical rate",
        [](Outcome* out) { criterion_8(out); });

  if (failures == 0)
    std::cout << "all acceptance criteria passed" << std::endl;
  else
    std::cout << failures << " acceptance criteria failed" << std::endl;
  return failures == 0 ? 0 : 1;
}
