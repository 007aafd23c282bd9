// Copyright 2026 The qseal Authors.
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

// qseal: command-line front end for sealing, reading, verifying, attacking
// and simulating. Each protocol role runs as its own invocation and hands
// state to the next one through JSON files.
//
// Exit status: 0 success or Intact, 2 Broken, 1 usage or I/O error.

#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qseal/adversary.h"
#include "qseal/montecarlo.h"
#include "qseal/protocol.h"
#include "qseal/serialization.h"

namespace {

using nlohmann::json;
using qseal::Phase;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitBroken = 2;

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error("failed writing " + path);
}

std::vector<int> parse_bits(const std::string& text) {
  std::vector<int> bits;
  for (char c : text) {
    if (c != '0' && c != '1') throw CLI::ValidationError("--bits", "expected a string of 0/1");
    bits.push_back(c - '0');
  }
  if (bits.empty()) throw CLI::ValidationError("--bits", "message is empty");
  return bits;
}

std::string bits_string(const std::vector<int>& bits) {
  std::string s;
  for (int b : bits) s.push_back(b ? '1' : '0');
  return s;
}

std::vector<std::size_t> parse_indices(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::logic_error&) {
      throw CLI::ValidationError("--indices", "bad index '" + item + "'");
    }
  }
  return out;
}

struct Common {
  std::optional<std::uint64_t> seed;
  std::uint64_t trial = 0;
  std::string format = "table";

  std::uint64_t resolved_seed() {
    if (!seed) {
      std::random_device rd;
      seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
      std::cerr << "qseal: using seed " << *seed << "\n";
    }
    return *seed;
  }
  qseal::CounterRng stream(Phase phase) {
    return qseal::phase_stream(resolved_seed(), trial, phase);
  }
  bool json_output() const { return format == "json"; }
};

void add_common(CLI::App* cmd, Common& common, bool stochastic) {
  if (stochastic) {
    cmd->add_option("--seed", common.seed, "Random seed (logged when omitted)");
    cmd->add_option("--trial", common.trial,
                    "Trial index; matches trial i of a simulate run with the same seed");
  }
  cmd->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"json", "table"}));
}

json report_json(const qseal::VerificationReport& r) {
  return {{"qubits_checked", r.qubits_checked},
          {"mismatches", r.mismatches},
          {"verdict", std::string(qseal::verdict_name(r.verdict))}};
}

int emit_report(const Common& common, const char* who, const qseal::VerificationReport& r) {
  if (common.json_output()) {
    std::cout << report_json(r).dump(2) << "\n";
  } else {
    std::cout << who << ": checked " << r.qubits_checked << " qubits, " << r.mismatches
              << (std::string_view(who) == "bob" ? " SWAP-test failures" : " mismatches")
              << ", verdict " << qseal::verdict_name(r.verdict) << "\n";
  }
  return r.verdict == qseal::Verdict::Broken ? kExitBroken : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum seal simulator: encode, read, verify, attack and simulate"};
  app.require_subcommand(1);
  Common common;

  // encode
  std::string bits_text;
  std::string sealed_path = "sealed.json";
  std::string record_path = "alice_record.json";
  auto* encode_cmd = app.add_subcommand("encode", "Seal a message into public quantum memory");
  encode_cmd->add_option("--bits", bits_text, "Message bits, e.g. 0110")->required();
  encode_cmd->add_option("--out", sealed_path, "Public sealed-message file");
  encode_cmd->add_option("--record", record_path, "Alice's private record file");
  add_common(encode_cmd, common, true);

  // read
  std::string in_path = "sealed.json";
  std::optional<std::string> out_path;
  auto* read_cmd = app.add_subcommand("read", "Read the message in the announced basis");
  read_cmd->add_option("--in", in_path, "Sealed-message file");
  read_cmd->add_option("--out", out_path, "Where to write the collapsed memory (default: --in)");
  add_common(read_cmd, common, true);

  // verify-alice
  auto* alice_cmd = app.add_subcommand("verify-alice", "Alice checks every qubit");
  alice_cmd->add_option("--in", in_path, "Sealed-message file");
  alice_cmd->add_option("--record", record_path, "Alice's private record file");
  alice_cmd->add_option("--out", out_path, "Optionally write the post-check memory");
  add_common(alice_cmd, common, true);

  // grant
  std::string reader_id = "bob";
  std::optional<std::string> indices_text;
  std::optional<double> fraction;
  std::string grant_path = "grant.json";
  auto* grant_cmd = app.add_subcommand("grant", "Alice issues fresh copies to a reader");
  grant_cmd->add_option("--record", record_path, "Alice's private record file");
  grant_cmd->add_option("--reader", reader_id, "Reader identifier");
  auto* indices_opt = grant_cmd->add_option("--indices", indices_text, "Comma-separated indices");
  grant_cmd->add_option("--fraction", fraction, "Sample this fraction of qubits instead")
      ->excludes(indices_opt)
      ->check(CLI::Range(0.0, 1.0));
  grant_cmd->add_option("--out", grant_path, "Grant file");
  add_common(grant_cmd, common, true);

  // verify-bob
  auto* bob_cmd = app.add_subcommand("verify-bob", "A reader SWAP-tests the grant copies");
  bob_cmd->add_option("--grant", grant_path, "Grant file");
  bob_cmd->add_option("--in", in_path, "Sealed-message file");
  bob_cmd->add_option("--out", out_path, "Optionally write the post-test memory");
  add_common(bob_cmd, common, true);

  // attack
  std::string strategy_text = "single-qubit";
  auto* attack_cmd = app.add_subcommand("attack", "Read the message with an attack strategy");
  attack_cmd->add_option("--strategy", strategy_text, "single-qubit | partial | collective")
      ->check(CLI::IsMember({"single-qubit", "partial", "collective"}));
  attack_cmd->add_option("--in", in_path, "Sealed-message file");
  attack_cmd->add_option("--out", out_path, "Where to write the memory (default: --in)");
  add_common(attack_cmd, common, true);

  // simulate
  std::optional<std::string> config_path;
  std::optional<std::size_t> sim_bits;
  std::optional<std::string> sim_message;
  std::optional<std::string> sim_strategy;
  std::optional<std::size_t> sim_trials;
  std::optional<double> sim_fraction;
  std::optional<std::string> sim_indices;
  std::size_t threads = 1;
  bool per_trial = false;
  std::optional<std::string> report_path;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo detection statistics");
  sim_cmd->add_option("--config", config_path, "TrialConfig JSON file; flags override it");
  auto* sim_bits_opt = sim_cmd->add_option("--bits", sim_bits, "Random message length");
  sim_cmd->add_option("--message", sim_message, "Fixed message bits")->excludes(sim_bits_opt);
  sim_cmd->add_option("--strategy", sim_strategy, "none | single-qubit | partial | collective");
  sim_cmd->add_option("--trials", sim_trials, "Number of trials");
  auto* sim_indices_opt =
      sim_cmd->add_option("--grant-indices", sim_indices, "Fixed comma-separated grant indices");
  sim_cmd->add_option("--grant-fraction", sim_fraction, "Per-trial sampled grant fraction")
      ->excludes(sim_indices_opt);
  sim_cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");
  sim_cmd->add_flag("--per-trial", per_trial, "Include per-trial records in JSON output");
  sim_cmd->add_option("--out", report_path, "Also write the JSON report here");
  sim_cmd->add_option("--seed", common.seed, "Random seed (logged when omitted)");
  sim_cmd->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"json", "table"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*encode_cmd) {
      const std::vector<int> bits = parse_bits(bits_text);
      qseal::CounterRng rng = common.stream(Phase::kEncode);
      const qseal::Seal seal = qseal::encode(bits, rng);
      write_json(sealed_path, qseal::public_seal_to_json(seal.record.reading_basis,
                                                         seal.record.num_bits(), seal.memory));
      write_json(record_path, qseal::record_to_json(seal.record));
      if (common.json_output()) {
        std::cout << json{{"num_bits", seal.record.num_bits()},
                          {"num_qubits", seal.record.num_qubits()},
                          {"sealed", sealed_path},
                          {"record", record_path}}
                         .dump(2)
                  << "\n";
      } else {
        std::cout << "sealed " << seal.record.num_bits() << " bits into "
                  << seal.record.num_qubits() << " qubits: " << sealed_path << " (public), "
                  << record_path << " (private)\n";
      }
      return kExitOk;
    }

    if (*read_cmd || *attack_cmd) {
      qseal::PublicSeal seal = qseal::public_seal_from_json(read_json(in_path));
      qseal::CounterRng rng = common.stream(Phase::kAttack);
      json out;
      if (*read_cmd) {
        const auto result = qseal::public_read(seal.memory, seal.reading_basis, rng);
        out = {{"bits", bits_string(result.bits)}, {"transcript", bits_string(result.transcript)}};
      } else {
        const auto attack =
            qseal::run_attack(qseal::parse_strategy(strategy_text), seal.memory, rng);
        out = {{"strategy", strategy_text},
               {"bits", bits_string(attack.recovered_bits)},
               {"qubits_touched", attack.qubits_touched.size()}};
        if (attack.max_disturbance) out["max_disturbance"] = *attack.max_disturbance;
      }
      write_json(out_path.value_or(in_path),
                 qseal::public_seal_to_json(seal.reading_basis, seal.num_bits, seal.memory));
      if (common.json_output()) {
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << out["bits"].get<std::string>() << "\n";
      }
      return kExitOk;
    }

    if (*alice_cmd) {
      qseal::PublicSeal seal = qseal::public_seal_from_json(read_json(in_path));
      const qseal::SealedMessage record = qseal::record_from_json(read_json(record_path));
      qseal::CounterRng rng = common.stream(Phase::kAlice);
      const auto report = qseal::alice_verify(seal.memory, record, rng);
      if (out_path) {
        write_json(*out_path,
                   qseal::public_seal_to_json(seal.reading_basis, seal.num_bits, seal.memory));
      }
      return emit_report(common, "alice", report);
    }

    if (*grant_cmd) {
      const qseal::SealedMessage record = qseal::record_from_json(read_json(record_path));
      std::vector<std::size_t> indices;
      if (indices_text) {
        indices = parse_indices(*indices_text);
      } else {
        qseal::CounterRng rng = common.stream(Phase::kGrant);
        indices = qseal::sample_grant_indices(
            record, fraction.value_or(qseal::kDefaultGrantFraction), rng);
      }
      const auto grant = qseal::grant_subset(record, reader_id, indices);
      write_json(grant_path, qseal::grant_to_json(grant));
      if (common.json_output()) {
        std::cout << json{{"reader_id", reader_id}, {"indices", indices}, {"grant", grant_path}}
                         .dump(2)
                  << "\n";
      } else {
        std::cout << "granted " << indices.size() << " qubit copies to " << reader_id << ": "
                  << grant_path << "\n";
      }
      return kExitOk;
    }

    if (*bob_cmd) {
      qseal::PublicSeal seal = qseal::public_seal_from_json(read_json(in_path));
      const qseal::SubsetGrant grant = qseal::grant_from_json(read_json(grant_path));
      qseal::CounterRng rng = common.stream(Phase::kBob);
      const auto report = qseal::bob_verify(grant, seal.memory, rng);
      if (out_path) {
        write_json(*out_path,
                   qseal::public_seal_to_json(seal.reading_basis, seal.num_bits, seal.memory));
      }
      return emit_report(common, "bob", report);
    }

    if (*sim_cmd) {
      qseal::TrialConfig config;
      if (config_path) config = qseal::trial_config_from_json(read_json(*config_path));
      if (sim_bits) config.message = *sim_bits;
      if (sim_message) config.message = parse_bits(*sim_message);
      if (sim_strategy) config.strategy = qseal::parse_strategy(*sim_strategy);
      if (sim_trials) config.trials = *sim_trials;
      if (sim_fraction) config.grant = *sim_fraction;
      if (sim_indices) config.grant = parse_indices(*sim_indices);
      if (common.seed || !config_path) config.seed = common.resolved_seed();

      const qseal::TrialReport report = qseal::run_trials(config, threads);
      const json j = qseal::report_to_json(report, per_trial);
      if (report_path) write_json(*report_path, j);
      if (common.json_output()) {
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << qseal::format_table(report);
      }
      return kExitOk;
    }
  } catch (const CLI::Error& e) {
    std::cerr << "qseal: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "qseal: error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
