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

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qpeb/channels.hpp"
#include "qpeb/errors.hpp"
#include "qpeb/protocol.hpp"
#include "qpeb/schmidt.hpp"
#include "qpeb/serialize.hpp"
#include "qpeb/zoo.hpp"

namespace {

using json = nlohmann::json;
using qpeb::Index;
using qpeb::Matrix;

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitInputError = 2;
constexpr int kExitPrecondition = 3;

// Default tolerance for file validation and verification commands;
// overridable per invocation with --tol or globally with QPEB_TOL.
double default_tol() {
  if (const char* env = std::getenv("QPEB_TOL")) {
    char* end = nullptr;
    const double value = std::strtod(env, &end);
    if (end != env && value > 0.0 && value < 1.0) return value;
    std::cerr << "warning: ignoring invalid QPEB_TOL='" << env << "'\n";
  }
  return 1e-9;
}

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

void emit(json report, const Stopwatch& watch) {
  report["timing_ms"] = watch.ms();
  std::cout << report.dump(2) << std::endl;
}

std::map<std::string, double> parse_params(
    const std::vector<std::string>& raw) {
  std::map<std::string, double> params;
  for (const std::string& item : raw) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw qpeb::InvalidArgument("--param expects key=value, got '" + item +
                                  "'");
    char* end = nullptr;
    const std::string value_str = item.substr(eq + 1);
    const double value = std::strtod(value_str.c_str(), &end);
    if (end == value_str.c_str() || *end != '\0')
      throw qpeb::InvalidArgument("--param value must be numeric in '" +
                                  item + "'");
    params[item.substr(0, eq)] = value;
  }
  return params;
}

qpeb::DensityMatrix resolve_input_state(const std::string& input, Index d) {
  if (input == "maximally-mixed")
    return qpeb::DensityMatrix(Matrix::Identity(d, d) /
                               static_cast<double>(d));
  if (input.rfind("random:", 0) == 0) {
    const std::uint64_t seed = std::strtoull(input.c_str() + 7, nullptr, 10);
    qpeb::GaussianStream stream(qpeb::derive_seed(seed, 0xD5));
    Matrix g(d, d);
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) g(i, j) = stream.standard_complex();
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return qpeb::DensityMatrix(std::move(rho));
  }
  // Anything else is a path to a density matrix stored as rows of [re, im]
  // pairs, either bare or under a "matrix" key.
  std::ifstream in(input);
  if (!in) throw qpeb::InvalidArgument("cannot open input state: " + input);
  json parsed;
  try {
    parsed = json::parse(in);
  } catch (const json::parse_error& err) {
    throw qpeb::InvalidArgument("input state: JSON parse error: " +
                                std::string(err.what()));
  }
  const json& payload = parsed.is_object() && parsed.contains("matrix")
                            ? parsed["matrix"]
                            : parsed;
  const Matrix rho = qpeb::matrix_from_json(payload, "matrix");
  if (rho.rows() != d)
    throw qpeb::InvalidArgument(
        "input state dimension disagrees with the channel");
  return qpeb::DensityMatrix(rho);
}

json transcript_to_json(const qpeb::ProtocolTranscript& transcript) {
  json out;
  out["mode"] = transcript.mode == qpeb::ProtocolTranscript::Mode::kExact
                    ? "exact"
                    : "sampled";
  out["dropped_probability"] = transcript.dropped_probability;
  json outcomes = json::array();
  for (const qpeb::BranchOutcome& branch : transcript.outcomes) {
    json entry;
    entry["alpha"] = branch.message.alpha;
    entry["m"] = branch.message.m;
    entry["n"] = branch.message.n;
    entry["probability"] = branch.probability;
    entry["bob_output"] = qpeb::matrix_to_json(branch.bob_output.matrix());
    outcomes.push_back(std::move(entry));
  }
  out["outcomes"] = std::move(outcomes);
  return out;
}

void write_or_print(const qpeb::ChannelFile& file, const std::string& out,
                    const json& report, const Stopwatch& watch) {
  if (out.empty()) {
    std::cout << qpeb::channel_file_to_json(file).dump(2) << std::endl;
  } else {
    qpeb::save_channel_file(file, out);
    emit(report, watch);
  }
}

int run_convert(const std::string& in_path, const std::string& to,
                const std::string& out_path, double tol) {
  Stopwatch watch;
  const qpeb::ChannelFile file = qpeb::load_channel_file(in_path);
  qpeb::ChannelFile converted;
  if (to == "kraus") {
    converted = qpeb::to_channel_file(qpeb::file_to_kraus(file, tol));
  } else if (to == "choi") {
    converted = qpeb::to_channel_file(qpeb::file_to_choi(file, tol));
  } else if (to == "stinespring") {
    converted = qpeb::to_channel_file(
        qpeb::kraus_to_stinespring(qpeb::file_to_kraus(file, tol)));
  } else {
    throw qpeb::InvalidArgument("convert: unknown target '" + to + "'");
  }
  converted.metadata = file.metadata;

  json report;
  report["command"] = "convert";
  report["input"] = in_path;
  report["to"] = to;
  report["output"] = out_path;
  report["tolerance"] = tol;
  report["pass"] = true;
  write_or_print(converted, out_path, report, watch);
  return kExitPass;
}

int run_verify(const std::string& in_path, double tol) {
  Stopwatch watch;
  const qpeb::ChannelFile file = qpeb::load_channel_file(in_path);
  qpeb::CptpReport cptp;
  if (file.representation == "choi") {
    cptp = qpeb::verify_cptp(file.matrix_data, tol);
  } else if (file.representation == "kraus") {
    cptp = qpeb::verify_cptp(file.kraus_data, tol);
  } else {
    // Stinespring: closure of the extracted blocks is the isometry check.
    std::vector<Matrix> ops;
    const Index m = file.env_dim;
    const Index d_out = file.matrix_data.rows() / m;
    for (Index alpha = 0; alpha < m; ++alpha) {
      Matrix op(d_out, file.matrix_data.cols());
      for (Index row = 0; row < d_out; ++row)
        op.row(row) = file.matrix_data.row(row * m + alpha);
      ops.push_back(std::move(op));
    }
    cptp = qpeb::verify_cptp(ops, tol);
  }

  json report;
  report["command"] = "verify";
  report["input"] = in_path;
  report["tolerance"] = tol;
  report["results"] = {{"trace_preserving", cptp.trace_preserving},
                       {"completely_positive", cptp.completely_positive},
                       {"max_violation", cptp.max_violation}};
  report["pass"] = cptp.pass();
  emit(report, watch);
  return cptp.pass() ? kExitPass : kExitVerifyFail;
}

int run_schmidt(const std::string& in_path, std::optional<Index> target_k,
                const qpeb::MinimizeConfig& config,
                const std::string& witness_out, double tol) {
  Stopwatch watch;
  const qpeb::KrausSet kraus =
      qpeb::file_to_kraus(qpeb::load_channel_file(in_path), tol);

  const qpeb::KrausSet canonical =
      qpeb::choi_to_kraus(qpeb::kraus_to_choi(kraus), config.tol);
  const Index canonical_max_rank =
      qpeb::kraus_max_rank(canonical, config.tol);
  const Index upper = qpeb::sn_upper_search(kraus, config);
  const Index lower =
      qpeb::sn_lower_bound_fidelity(qpeb::kraus_to_choi(kraus));

  json report;
  report["command"] = "schmidt";
  report["input"] = in_path;
  report["tolerance"] = tol;
  report["rank_tolerance"] = config.tol;
  report["seed"] = config.seed;
  report["restarts"] = config.restarts;
  json results;
  results["canonical_max_rank"] = canonical_max_rank;
  results["sn_upper"] = upper;
  results["sn_lower"] = lower;

  bool pass = lower <= upper;
  if (target_k.has_value()) {
    const qpeb::RankCertificate cert =
        qpeb::minimize_kraus_rank(kraus, *target_k, config);
    json certificate;
    certificate["target_k"] = cert.target_k;
    certificate["achieved"] = cert.achieved;
    certificate["max_rank_found"] = cert.max_rank_found;
    certificate["residual"] = cert.residual;
    if (cert.achieved && !witness_out.empty()) {
      qpeb::save_channel_file(qpeb::to_channel_file(*cert.witness_kraus),
                              witness_out);
      certificate["witness_file"] = witness_out;
    }
    results["certificate"] = std::move(certificate);
    pass = pass && cert.achieved;
  }
  report["results"] = std::move(results);
  report["pass"] = pass;
  emit(report, watch);
  return pass ? kExitPass : kExitVerifyFail;
}

int run_simulate(const std::string& in_path, std::optional<Index> k_opt,
                 const std::string& input, const std::string& mode,
                 long shots, std::uint64_t seed,
                 const std::string& transcript_path, double tol) {
  Stopwatch watch;
  const qpeb::KrausSet kraus =
      qpeb::file_to_kraus(qpeb::load_channel_file(in_path), tol);
  const Index k = k_opt.value_or(qpeb::kraus_max_rank(kraus));
  const qpeb::DensityMatrix rho = resolve_input_state(input, kraus.d_in());
  const Matrix direct = qpeb::apply_kraus(kraus, rho).matrix();

  json report;
  report["command"] = "simulate";
  report["input"] = in_path;
  report["state"] = input;
  report["k"] = k;
  report["mode"] = mode;
  report["tolerance"] = tol;
  report["seed"] = seed;

  bool pass = false;
  json results;
  if (mode == "exact") {
    const qpeb::SimulationResult sim =
        qpeb::simulate_locc_exact(kraus, k, rho, tol);
    const double residual = qpeb::max_abs(sim.output.matrix() - direct);
    results["residual"] = residual;
    results["branches"] = sim.transcript.outcomes.size();
    results["dropped_probability"] = sim.transcript.dropped_probability;
    pass = residual <= tol;
    if (!transcript_path.empty()) {
      std::ofstream out(transcript_path);
      if (!out)
        throw qpeb::InvalidArgument("cannot write transcript: " +
                                    transcript_path);
      out << transcript_to_json(sim.transcript).dump(2) << '\n';
      results["transcript_file"] = transcript_path;
    }
  } else if (mode == "sample") {
    const qpeb::SimulationResult sim =
        qpeb::simulate_locc_sampled(kraus, k, rho, seed, shots);
    const double deviation = qpeb::max_abs(sim.output.matrix() - direct);

    // Entrywise standard error from the branch ensemble.
    const Index d = direct.rows();
    Matrix second_moment = Matrix::Zero(d, d);
    for (const qpeb::BranchOutcome& branch : sim.transcript.outcomes)
      second_moment +=
          branch.probability *
          (branch.bob_output.matrix() - sim.output.matrix()).cwiseAbs2();
    const double max_se = std::sqrt(second_moment.real().maxCoeff() /
                                    static_cast<double>(shots));

    results["shots"] = shots;
    results["deviation"] = deviation;
    results["max_standard_error"] = max_se;
    pass = deviation <= 5.0 * max_se + 1e-12;
    if (!transcript_path.empty()) {
      std::ofstream out(transcript_path);
      if (!out)
        throw qpeb::InvalidArgument("cannot write transcript: " +
                                    transcript_path);
      out << transcript_to_json(sim.transcript).dump(2) << '\n';
      results["transcript_file"] = transcript_path;
    }
  } else {
    throw qpeb::InvalidArgument("simulate: unknown mode '" + mode + "'");
  }

  report["results"] = std::move(results);
  report["pass"] = pass;
  emit(report, watch);
  return pass ? kExitPass : kExitVerifyFail;
}

int run_verify_theorem(const std::string& in_path, std::optional<Index> k_opt,
                       double tol) {
  Stopwatch watch;
  const qpeb::KrausSet kraus =
      qpeb::file_to_kraus(qpeb::load_channel_file(in_path), default_tol());
  const Index k = k_opt.value_or(qpeb::kraus_max_rank(kraus));
  const qpeb::TheoremReport theorem = qpeb::verify_theorem(kraus, k, tol);

  json report;
  report["command"] = "verify-theorem";
  report["input"] = in_path;
  report["k"] = k;
  report["tolerance"] = tol;
  report["results"] = {
      {"choi_distance", theorem.choi_distance},
      {"resource_schmidt_rank", theorem.resource_schmidt_rank},
      {"composite_max_rank", theorem.composite_max_rank},
      {"one_way", theorem.one_way}};
  // The three equivalent views of a k-PEB channel, each as a checked leg:
  // a rank-<=k representation exists, it runs as one-way LOCC on a rank-k
  // resource, and the protocol's own operators certify rank <= k again.
  report["results"]["chain"] = {
      {"rank_k_representation_simulates_channel",
       theorem.choi_distance < tol},
      {"one_way_locc_from_rank_k_resource",
       theorem.one_way && theorem.resource_schmidt_rank == k},
      {"protocol_operators_certify_rank_k",
       theorem.composite_max_rank <= k}};
  report["pass"] = theorem.pass;
  emit(report, watch);
  return theorem.pass ? kExitPass : kExitVerifyFail;
}

int run_zoo(const std::string& name, Index d,
            const std::vector<std::string>& raw_params, std::uint64_t seed,
            const std::string& out_path) {
  Stopwatch watch;
  const std::map<std::string, double> params = parse_params(raw_params);
  const qpeb::ChannelSpec spec = qpeb::make_channel(name, d, params, seed);

  qpeb::ChannelFile file = qpeb::to_channel_file(spec.kraus);
  file.metadata["generator"] = spec.name;
  file.metadata["seed"] = seed;
  file.metadata["known_sn_lower"] = spec.known_sn_bounds.lower;
  file.metadata["known_sn_upper"] = spec.known_sn_bounds.upper;
  file.metadata["bounds_note"] = spec.known_sn_bounds.note;
  file.metadata["construction_rank"] = spec.construction_rank;
  for (const auto& [key, value] : spec.params) file.metadata[key] = value;

  json report;
  report["command"] = "zoo";
  report["generator"] = name;
  report["d"] = spec.d;
  report["seed"] = seed;
  report["output"] = out_path;
  report["pass"] = true;
  write_or_print(file, out_path, report, watch);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qpeb: quantum channel representations, Schmidt-number analysis, and "
      "one-way LOCC simulation"};
  app.require_subcommand(1);
  const double tol_default = default_tol();

  std::string convert_in, convert_to, convert_out;
  double convert_tol = tol_default;
  CLI::App* convert = app.add_subcommand(
      "convert", "Convert a channel file between representations");
  convert->add_option("channel", convert_in, "channel file")->required();
  convert->add_option("--to", convert_to, "kraus | choi | stinespring")
      ->required();
  convert->add_option("-o,--output", convert_out,
                      "output path (default stdout)");
  convert->add_option("--tol", convert_tol, "validation tolerance");

  std::string verify_in;
  double verify_tol = tol_default;
  CLI::App* verify =
      app.add_subcommand("verify", "CPTP diagnostic on a channel file");
  verify->add_option("channel", verify_in, "channel file")->required();
  verify->add_option("--tol", verify_tol, "violation tolerance");

  std::string schmidt_in, schmidt_witness;
  double schmidt_tol = tol_default;
  Index schmidt_k = -1;
  qpeb::MinimizeConfig schmidt_config;
  CLI::App* schmidt = app.add_subcommand(
      "schmidt", "Schmidt-number bounds and rank certificates");
  schmidt->add_option("channel", schmidt_in, "channel file")->required();
  schmidt->add_option("--k", schmidt_k, "target rank for a certificate");
  schmidt->add_option("--restarts", schmidt_config.restarts,
                      "optimizer restarts");
  schmidt->add_option("--max-iters", schmidt_config.max_iters,
                      "iterations per restart");
  schmidt->add_option("--seed", schmidt_config.seed, "optimizer seed");
  schmidt->add_option("--pad", schmidt_config.pad_operators,
                      "extra zero operators enlarging the mixing");
  schmidt->add_option("--witness-out", schmidt_witness,
                      "write the achieved witness here");
  schmidt->add_option("--tol", schmidt_tol, "validation tolerance");

  std::string sim_in, sim_state = "maximally-mixed", sim_mode = "exact",
              sim_transcript;
  Index sim_k = -1;
  long sim_shots = 10000;
  std::uint64_t sim_seed = 0;
  double sim_tol = tol_default;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Run the one-way LOCC protocol for a channel");
  simulate->add_option("channel", sim_in, "channel file")->required();
  simulate->add_option("--k", sim_k,
                       "resource Schmidt rank (default: Kraus max rank of "
                       "the representation)");
  simulate->add_option("--input", sim_state,
                       "maximally-mixed | random:SEED | state file");
  simulate->add_option("--mode", sim_mode, "exact | sample");
  simulate->add_option("--shots", sim_shots, "samples in sample mode");
  simulate->add_option("--seed", sim_seed, "sampling seed");
  simulate->add_option("--transcript", sim_transcript,
                       "dump the protocol transcript here");
  simulate->add_option("--tol", sim_tol, "match tolerance");

  std::string theorem_in;
  Index theorem_k = -1;
  double theorem_tol = 1e-8;
  CLI::App* theorem = app.add_subcommand(
      "verify-theorem",
      "Check the protocol reproduces the channel from a rank-k resource");
  theorem->add_option("channel", theorem_in, "channel file")->required();
  theorem->add_option("--k", theorem_k, "resource Schmidt rank");
  theorem->add_option("--tol", theorem_tol, "Choi distance tolerance");

  std::string zoo_name, zoo_out;
  Index zoo_d = 0;
  std::uint64_t zoo_seed = 0;
  std::vector<std::string> zoo_params;
  CLI::App* zoo =
      app.add_subcommand("zoo", "Materialize a named generator channel");
  zoo->add_option("name", zoo_name,
                  "depolarizing | dephasing | amplitude-damping | "
                  "werner-holevo | measure-prepare | unitary | random-rank-k")
      ->required();
  zoo->add_option("--d", zoo_d, "qudit dimension");
  zoo->add_option("--param", zoo_params, "key=value, repeatable");
  zoo->add_option("--seed", zoo_seed, "generator seed");
  zoo->add_option("-o,--output", zoo_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return kExitInputError;
  }

  try {
    if (convert->parsed())
      return run_convert(convert_in, convert_to, convert_out, convert_tol);
    if (verify->parsed()) return run_verify(verify_in, verify_tol);
    if (schmidt->parsed()) {
      const std::optional<Index> target =
          schmidt_k >= 0 ? std::optional<Index>(schmidt_k) : std::nullopt;
      return run_schmidt(schmidt_in, target, schmidt_config, schmidt_witness,
                         schmidt_tol);
    }
    if (simulate->parsed()) {
      const std::optional<Index> k =
          sim_k >= 0 ? std::optional<Index>(sim_k) : std::nullopt;
      return run_simulate(sim_in, k, sim_state, sim_mode, sim_shots, sim_seed,
                          sim_transcript, sim_tol);
    }
    if (theorem->parsed()) {
      const std::optional<Index> k =
          theorem_k >= 0 ? std::optional<Index>(theorem_k) : std::nullopt;
      return run_verify_theorem(theorem_in, k, theorem_tol);
    }
    if (zoo->parsed())
      return run_zoo(zoo_name, zoo_d, zoo_params, zoo_seed, zoo_out);
  } catch (const qpeb::PreconditionViolation& err) {
    std::cerr << "precondition violation: " << err.what() << '\n';
    return kExitPrecondition;
  } catch (const qpeb::VerificationError& err) {
    std::cerr << "verification error: " << err.what() << '\n';
    return kExitVerifyFail;
  } catch (const qpeb::InvalidArgument& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}
