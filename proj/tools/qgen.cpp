// Copyright 2026 The qgen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Command-line front end: builds parity generators, verifies them, samples
// and tabulates output distributions, enumerates hypothesis nets, runs the
// log-loss learner, and closes the loop back to parity prediction.
//
// Exit codes: 0 success, 1 verification/learning failure, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "qgen/evaluator.hpp"
#include "qgen/gates.hpp"
#include "qgen/generator.hpp"
#include "qgen/io.hpp"
#include "qgen/learn.hpp"
#include "qgen/net.hpp"
#include "qgen/parity.hpp"
#include "qgen/reduce.hpp"
#include "qgen/types.hpp"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::set<int> parse_subset(const std::string& text) {
  std::set<int> s;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t sep = text.find(',', pos);
    if (sep == std::string::npos) sep = text.size();
    const std::string token = text.substr(pos, sep - pos);
    if (!token.empty()) s.insert(std::stoi(token));
    pos = sep + 1;
  }
  return s;
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    qgen::write_file_atomically(out_path, content);
  }
}

std::vector<qgen::MeasurementPartition> default_partitions(int width) {
  if (width > 2) {
    throw qgen::Error(qgen::Errc::invalid_spec,
                      "supply --meas explicitly for width > 2 (the default sweep of all "
                      "partitions is limited to 4 basis states)");
  }
  const int k = 1 << width;
  std::vector<qgen::MeasurementPartition> partitions;
  for (int bits = 1; bits < (1 << k) - 1; ++bits) {
    qgen::MeasurementPartition partition;
    for (int i = 0; i < k; ++i) {
      partition.push_back(static_cast<std::uint8_t>((bits >> i) & 1));
    }
    partitions.push_back(std::move(partition));
  }
  return partitions;
}

qgen::MeasurementPartition parse_partition(const std::string& text) {
  qgen::MeasurementPartition partition;
  for (std::size_t pos = 0; pos < text.size(); ++pos) {
    if (text[pos] == ',') continue;
    if (text[pos] != '0' && text[pos] != '1') {
      throw qgen::Error(qgen::Errc::invalid_spec, "--meas values must be 0 or 1");
    }
    partition.push_back(static_cast<std::uint8_t>(text[pos] - '0'));
  }
  return partition;
}

struct Common {
  std::string out;
  int threads = 1;
};

int run_build(const qgen::ParitySpec& spec, const Common& common) {
  const qgen::QuantumGenerator qg = qgen::build_parity_qg(spec);
  emit(qgen::generator_to_json(qg) + "\n", common.out);
  return kExitSuccess;
}

int run_verify(const std::string& gen_path, std::optional<qgen::ParitySpec> spec,
               const Common& common) {
  nlohmann::json report;
  bool pass = false;
  if (spec) {
    const qgen::VerificationReport r = qgen::verify_construction(*spec, common.threads);
    report["unitarity_residual"] = r.unitarity_residual;
    report["tv_distance"] = r.tv_distance;
    report["block_residual"] = r.block_residual;
    report["pass"] = r.pass;
    pass = r.pass;
  } else {
    const qgen::QuantumGenerator qg = qgen::load_generator(gen_path);
    try {
      qgen::validate(qg);
      report["pass"] = true;
      pass = true;
    } catch (const qgen::Error& e) {
      report["pass"] = false;
      report["error"] = std::string(qgen::errc_name(e.code()));
      report["message"] = e.what();
      pass = false;
    }
  }
  emit(report.dump(2) + "\n", common.out);
  return pass ? kExitSuccess : kExitFailure;
}

int run_reduce(const qgen::Evaluator& evaluator, const qgen::ParitySpec& spec, double eps,
               qgen::RecoveryMode mode, int trials, std::uint64_t seed, const Common& common) {
  const qgen::OutputDistribution reference = qgen::reference_noisy_parity(spec);
  const double kl = qgen::kl_divergence(qgen::Evaluator::from_table(reference), evaluator);
  const double threshold = qgen::kl_threshold(eps, spec.eta);

  const qgen::ParityPredictor predictor = qgen::predictor_from_evaluator(evaluator);
  const double error_rate =
      spec.n <= 20 ? qgen::prediction_error(predictor, spec, qgen::ErrorMode::exhaustive)
                   : qgen::prediction_error(predictor, spec, qgen::ErrorMode::sampled, trials,
                                            seed);
  const std::set<int> recovered =
      qgen::recover_set(predictor, spec.n, mode, trials, seed);
  const bool match = recovered == spec.s;

  nlohmann::json report;
  report["kl_measured"] = kl;
  report["threshold"] = threshold;
  report["error_rate"] = error_rate;
  report["recovered_S"] = std::vector<int>(recovered.begin(), recovered.end());
  report["match"] = match;
  emit(report.dump(2) + "\n", common.out);
  return match && error_rate <= eps ? kExitSuccess : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-state quantum generator laboratory"};
  app.require_subcommand(1);

  // shared option storage; each subcommand binds the flags it uses
  std::string s_text, gen_path, eval_path, dist_path, net_path, in_path, out_path;
  std::string trace_path, table_path, p_path, q_path, spec_path, mode_text = "exact";
  std::vector<std::string> meas_texts;
  int n = 0, len = 0, width = 1, depth = 3, grid = 4, trials = 400, threads = 1;
  std::uint64_t seed = 0, count = 1, max_entries = 2'000'000;
  double eta = 0.25, eps1 = 0.0, eps0 = 0.2, eps = 0.1;
  bool nats = false;

  auto* cmd_build = app.add_subcommand("build", "construct a noisy-parity generator");
  cmd_build->add_option("--n", n, "input bits");
  cmd_build->add_option("--S", s_text, "parity set, comma separated");
  cmd_build->add_option("--eta", eta, "noise rate in (0, 1/2)");
  cmd_build->add_option("--spec", spec_path, "parity spec JSON instead of flags");
  cmd_build->add_option("--out", out_path, "output path (stdout when omitted)");

  auto* cmd_verify = app.add_subcommand("verify", "validate a generator or verify a spec");
  cmd_verify->add_option("--gen", gen_path, "generator JSON to validate");
  cmd_verify->add_option("--n", n, "input bits");
  cmd_verify->add_option("--S", s_text, "parity set");
  cmd_verify->add_option("--eta", eta, "noise rate");
  cmd_verify->add_option("--spec", spec_path, "parity spec JSON instead of flags");
  cmd_verify->add_option("--out", out_path, "report path");
  cmd_verify->add_option("--threads", threads, "worker threads");

  auto* cmd_dist = app.add_subcommand("dist", "exact output distribution table");
  cmd_dist->add_option("--gen", gen_path, "generator JSON")->required();
  cmd_dist->add_option("--len", len, "symbol count")->required();
  cmd_dist->add_option("--out", out_path, "table path");
  cmd_dist->add_option("--threads", threads, "worker threads");

  auto* cmd_sample = app.add_subcommand("sample", "draw output strings");
  cmd_sample->add_option("--gen", gen_path, "generator JSON")->required();
  cmd_sample->add_option("--len", len, "symbol count")->required();
  cmd_sample->add_option("--samples", count, "number of strings")->required();
  cmd_sample->add_option("--seed", seed, "RNG seed (required: runs must be reproducible)")
      ->required();
  cmd_sample->add_option("--out", out_path, "output path");

  auto* cmd_perturb = app.add_subcommand("perturb", "clamp stepwise conditionals");
  cmd_perturb->add_option("--gen", gen_path, "generator JSON");
  cmd_perturb->add_option("--len", len, "symbol count (with --gen)");
  cmd_perturb->add_option("--dist", dist_path, "distribution table input");
  cmd_perturb->add_option("--eps1", eps1, "clamp level in (0, 1/2)")->required();
  cmd_perturb->add_option("--out", out_path, "table path");

  auto* cmd_kl = app.add_subcommand("kl", "KL divergence between two tables");
  cmd_kl->add_option("--p", p_path, "first table (true distribution)")->required();
  cmd_kl->add_option("--q", q_path, "second table")->required();
  cmd_kl->add_flag("--nats", nats, "report in nats instead of bits");

  auto* cmd_net = app.add_subcommand("net", "enumerate a hypothesis net");
  cmd_net->add_option("--width", width, "qubit count");
  cmd_net->add_option("--depth", depth, "max gates per circuit");
  cmd_net->add_option("--grid", grid, "state exponent bound");
  cmd_net->add_option("--eps0", eps0, "state grid ratio parameter");
  cmd_net->add_option("--len", len, "symbol count used for dedup")->required();
  cmd_net->add_option("--meas", meas_texts, "partition, e.g. 0,1 (repeatable)");
  cmd_net->add_option("--max-entries", max_entries, "raw enumeration cap");
  cmd_net->add_option("--out", out_path, "manifest path");

  auto* cmd_learn = app.add_subcommand("learn", "empirical log-loss minimizer over a net");
  cmd_learn->add_option("--net", net_path, "net manifest")->required();
  cmd_learn->add_option("--in", in_path, "samples file, one bitstring per line")->required();
  cmd_learn->add_option("--eps1", eps1, "clamp level in (0, 1/2)")->required();
  cmd_learn->add_option("--out", out_path, "result JSON path");
  cmd_learn->add_option("--trace", trace_path, "per-entry loss CSV path");
  cmd_learn->add_option("--table", table_path, "selected perturbed table path");
  cmd_learn->add_option("--threads", threads, "worker threads for net scoring");

  auto* cmd_reduce = app.add_subcommand("reduce", "evaluator to parity predictor");
  cmd_reduce->add_option("--eval", eval_path, "evaluator table over n+1 symbols");
  cmd_reduce->add_option("--gen", gen_path, "generator JSON as the evaluator source");
  cmd_reduce->add_option("--n", n, "input bits");
  cmd_reduce->add_option("--S", s_text, "true parity set");
  cmd_reduce->add_option("--eta", eta, "noise rate");
  cmd_reduce->add_option("--spec", spec_path, "parity spec JSON instead of flags");
  cmd_reduce->add_option("--eps", eps, "target prediction error");
  cmd_reduce->add_option("--mode", mode_text, "exact | voting")
      ->check(CLI::IsMember({"exact", "voting"}));
  cmd_reduce->add_option("--trials", trials, "probes per bit in voting mode");
  cmd_reduce->add_option("--seed", seed, "RNG seed (required in voting mode)");
  cmd_reduce->add_option("--out", out_path, "report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitSuccess : kExitUsage;
  }

  try {
    Common common{out_path, threads};

    auto spec_from_options = [&](const CLI::App* cmd) -> qgen::ParitySpec {
      if (!spec_path.empty()) return qgen::load_parity_spec(spec_path);
      if (cmd->count("--n") == 0 || cmd->count("--S") == 0 || cmd->count("--eta") == 0) {
        throw qgen::Error(qgen::Errc::invalid_spec,
                          "supply --spec or all of --n, --S, --eta");
      }
      return {n, parse_subset(s_text), eta};
    };

    if (cmd_build->parsed()) {
      return run_build(spec_from_options(cmd_build), common);
    }

    if (cmd_verify->parsed()) {
      std::optional<qgen::ParitySpec> spec;
      if (!spec_path.empty() || cmd_verify->count("--n") > 0) {
        spec = spec_from_options(cmd_verify);
      } else if (gen_path.empty()) {
        std::cerr << "error: verify needs either --gen, --spec, or --n/--S/--eta\n";
        return kExitUsage;
      }
      return run_verify(gen_path, spec, common);
    }

    if (cmd_dist->parsed()) {
      const qgen::QuantumGenerator qg = qgen::load_generator(gen_path);
      qgen::validate(qg);
      qgen::EnumOptions options;
      options.threads = threads;
      emit(qgen::distribution_to_text(qgen::exact_distribution(qg, len, options)), out_path);
      return kExitSuccess;
    }

    if (cmd_sample->parsed()) {
      const qgen::QuantumGenerator qg = qgen::load_generator(gen_path);
      qgen::validate(qg);
      std::mt19937_64 rng(seed);
      std::string lines;
      for (std::uint64_t i = 0; i < count; ++i) {
        lines += qgen::sample(qg, len, rng);
        lines += '\n';
      }
      emit(lines, out_path);
      return kExitSuccess;
    }

    if (cmd_perturb->parsed()) {
      qgen::Evaluator base = [&] {
        if (!dist_path.empty()) {
          return qgen::Evaluator::from_table(qgen::load_distribution(dist_path));
        }
        if (gen_path.empty() || len < 1) {
          throw qgen::Error(qgen::Errc::invalid_spec,
                            "perturb needs --dist or --gen together with --len");
        }
        const qgen::QuantumGenerator qg = qgen::load_generator(gen_path);
        qgen::validate(qg);
        return qgen::Evaluator::from_generator(qg, len);
      }();
      emit(qgen::distribution_to_text(qgen::perturb(base, eps1).to_table()), out_path);
      return kExitSuccess;
    }

    if (cmd_kl->parsed()) {
      const double kl = qgen::kl_divergence(
          qgen::load_distribution(p_path), qgen::load_distribution(q_path),
          nats ? qgen::LogBase::nats : qgen::LogBase::bits);
      std::cout << qgen::format_probability(kl) << "\n";
      return kExitSuccess;
    }

    if (cmd_net->parsed()) {
      qgen::NetParams params;
      params.width = width;
      params.max_gates = depth;
      params.state_grid = grid;
      params.eps0 = eps0;
      params.dedup_length = len;
      params.max_raw_entries = max_entries;
      if (meas_texts.empty()) {
        params.measurements = default_partitions(width);
      } else {
        for (const std::string& text : meas_texts) {
          params.measurements.push_back(parse_partition(text));
        }
      }
      const std::vector<qgen::NetEntry> net = qgen::enumerate_net(params);
      std::ostringstream manifest;
      qgen::save_net(manifest, net);
      emit(manifest.str(), out_path);
      return kExitSuccess;
    }

    if (cmd_learn->parsed()) {
      const qgen::Samples samples = qgen::load_samples(in_path);
      std::ifstream net_in(net_path);
      if (!net_in) {
        throw qgen::Error(qgen::Errc::io_error, "cannot open '" + net_path + "'");
      }
      const std::vector<qgen::NetEntry> net = qgen::load_net(net_in);
      const qgen::LearnResult result = qgen::learn(samples, net, eps1, threads);

      const qgen::NetEntry& chosen = net[result.selected_index];
      std::ostringstream entry_line;
      qgen::save_net(entry_line, {chosen});

      nlohmann::json out;
      out["selected_index"] = result.selected_index;
      out["eps1"] = result.eps1;
      out["loss"] = result.losses[static_cast<Eigen::Index>(result.selected_index)];
      out["entry"] = entry_line.str();
      emit(out.dump(2) + "\n", out_path);

      if (!trace_path.empty()) {
        std::string csv = "entry_index,loss\n";
        for (Eigen::Index i = 0; i < result.losses.size(); ++i) {
          csv += std::to_string(i) + "," + qgen::format_probability(result.losses[i]) + "\n";
        }
        qgen::write_file_atomically(trace_path, csv);
      }
      if (!table_path.empty()) {
        qgen::save_distribution(table_path, result.evaluator.to_table());
      }
      return kExitSuccess;
    }

    if (cmd_reduce->parsed()) {
      const qgen::RecoveryMode mode =
          mode_text == "voting" ? qgen::RecoveryMode::voting : qgen::RecoveryMode::exact;
      const qgen::ParitySpec spec = spec_from_options(cmd_reduce);
      qgen::validate(spec);
      if ((mode == qgen::RecoveryMode::voting || spec.n > 20) &&
          cmd_reduce->count("--seed") == 0) {
        std::cerr << "error: --seed is required for stochastic reduction modes\n";
        return kExitUsage;
      }
      qgen::Evaluator evaluator = [&] {
        if (!eval_path.empty()) {
          return qgen::Evaluator::from_table(qgen::load_distribution(eval_path));
        }
        if (gen_path.empty()) {
          throw qgen::Error(qgen::Errc::invalid_spec, "reduce needs --eval or --gen");
        }
        const qgen::QuantumGenerator qg = qgen::load_generator(gen_path);
        qgen::validate(qg);
        return qgen::Evaluator::from_table(qgen::exact_distribution(qg, spec.n + 1));
      }();
      return run_reduce(evaluator, spec, eps, mode, trials, seed, common);
    }

    std::cerr << "error: no subcommand\n";
    return kExitUsage;
  } catch (const qgen::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == qgen::Errc::verification_failed ? kExitFailure : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
