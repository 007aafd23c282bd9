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

#include "qseal/serialization.h"

#include <vector>

namespace qseal {

using nlohmann::json;

namespace {

void check_version(const json& j, const char* what) {
  if (!j.is_object()) throw FormatError(std::string(what) + ": expected a JSON object");
  if (!j.contains("version")) throw FormatError(std::string(what) + ": missing version");
  const int version = j.at("version").get<int>();
  if (version != kFormatVersion) {
    throw FormatError(std::string(what) + ": unsupported version " + std::to_string(version) +
                      " (expected " + std::to_string(kFormatVersion) + ")");
  }
}

// Wraps nlohmann type errors so callers see one exception type.
template <typename F>
auto parsing(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  } catch (const std::out_of_range& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  }
}

std::string bits_to_string(const std::vector<int>& bits) {
  std::string s;
  for (int b : bits) s.push_back(b ? '1' : '0');
  return s;
}

std::vector<int> bits_from_string(const std::string& s) {
  std::vector<int> bits;
  for (char c : s) {
    if (c != '0' && c != '1') throw std::invalid_argument("message must be a string of 0/1");
    bits.push_back(c - '0');
  }
  return bits;
}

json interval_to_json(Interval ci) { return json::array({ci.low, ci.high}); }

}  // namespace

json amplitudes_to_json(const StateRegister& reg) {
  json out = json::array();
  for (const Complex& a : reg.amplitudes()) out.push_back(json::array({a.real(), a.imag()}));
  return out;
}

StateRegister amplitudes_from_json(const json& j) {
  return parsing("amplitudes", [&] {
    if (!j.is_array()) throw std::invalid_argument("expected an array of [re, im] pairs");
    std::vector<Complex> amps;
    for (const json& pair : j) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
        throw std::invalid_argument("each amplitude must be a [re, im] number pair");
      }
      amps.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return StateRegister::from_amplitudes(amps, kLoadNormTolerance);
  });
}

json public_seal_to_json(Basis reading_basis, std::size_t num_bits, const QuantumMemory& memory) {
  json nodes = json::array();
  for (const auto& node : memory.nodes()) {
    json labels = json::array();
    for (const auto& label : node.labels) labels.push_back(label ? json(*label) : json(nullptr));
    nodes.push_back({{"qubit_indices", labels}, {"amplitudes", amplitudes_to_json(node.state)}});
  }
  return {{"version", kFormatVersion},
          {"reading_basis", std::string(basis_name(reading_basis))},
          {"num_bits", num_bits},
          {"memory", nodes}};
}

PublicSeal public_seal_from_json(const json& j) {
  return parsing("sealed message", [&] {
    check_version(j, "sealed message");
    PublicSeal seal;
    seal.reading_basis = parse_basis(j.at("reading_basis").get<std::string>());
    seal.num_bits = j.at("num_bits").get<std::size_t>();
    std::vector<QuantumMemory::Node> nodes;
    for (const json& entry : j.at("memory")) {
      QuantumMemory::Node node;
      node.state = amplitudes_from_json(entry.at("amplitudes"));
      for (const json& label : entry.at("qubit_indices")) {
        node.labels.push_back(label.is_null() ? QuantumMemory::Label{}
                                              : QuantumMemory::Label{label.get<std::size_t>()});
      }
      nodes.push_back(std::move(node));
    }
    seal.memory = QuantumMemory::from_nodes(std::move(nodes), seal.num_bits * kQubitsPerBit);
    return seal;
  });
}

json record_to_json(const SealedMessage& sealed) {
  json blocks = json::array();
  for (const auto& b : sealed.blocks) {
    blocks.push_back({{"message_bit", b.message_bit},
                      {"control_position", b.control_position},
                      {"control_basis", std::string(basis_name(b.control_spec.basis))},
                      {"control_bit", b.control_spec.bit}});
  }
  return {{"version", kFormatVersion},
          {"reading_basis", std::string(basis_name(sealed.reading_basis))},
          {"num_bits", sealed.num_bits()},
          {"blocks", blocks}};
}

SealedMessage record_from_json(const json& j) {
  return parsing("seal record", [&] {
    check_version(j, "seal record");
    std::vector<int> bits;
    std::vector<ControlChoice> controls;
    for (const json& b : j.at("blocks")) {
      bits.push_back(b.at("message_bit").get<int>());
      controls.push_back(ControlChoice{
          b.at("control_position").get<std::size_t>(),
          QubitSpec{parse_basis(b.at("control_basis").get<std::string>()),
                    b.at("control_bit").get<int>()}});
    }
    if (j.contains("num_bits") && j.at("num_bits").get<std::size_t>() != bits.size()) {
      throw std::invalid_argument("num_bits does not match block count");
    }
    SealedMessage sealed = encode_with_controls(bits, controls).record;
    sealed.reading_basis = parse_basis(j.at("reading_basis").get<std::string>());
    return sealed;
  });
}

json grant_to_json(const SubsetGrant& grant) {
  json entries = json::array();
  for (const auto& e : grant.entries) {
    entries.push_back({{"index", e.index}, {"amplitudes", amplitudes_to_json(e.copy)}});
  }
  return {{"version", kFormatVersion}, {"reader_id", grant.reader_id}, {"entries", entries}};
}

SubsetGrant grant_from_json(const json& j) {
  return parsing("grant", [&] {
    check_version(j, "grant");
    SubsetGrant grant;
    grant.reader_id = j.at("reader_id").get<std::string>();
    for (const json& e : j.at("entries")) {
      StateRegister copy = amplitudes_from_json(e.at("amplitudes"));
      if (copy.num_qubits() != 1) throw std::invalid_argument("grant copies must be 1 qubit");
      grant.entries.push_back(GrantEntry{e.at("index").get<std::size_t>(), copy});
    }
    return grant;
  });
}

json trial_config_to_json(const TrialConfig& config) {
  json j;
  if (const auto* count = std::get_if<std::size_t>(&config.message)) {
    j["message"] = *count;
  } else {
    j["message"] = bits_to_string(std::get<std::vector<int>>(config.message));
  }
  j["strategy"] = std::string(strategy_name(config.strategy));
  if (const auto* fraction = std::get_if<double>(&config.grant)) {
    j["grant"] = {{"fraction", *fraction}};
  } else {
    j["grant"] = {{"indices", std::get<std::vector<std::size_t>>(config.grant)}};
  }
  j["trials"] = config.trials;
  j["seed"] = config.seed;
  return j;
}

TrialConfig trial_config_from_json(const json& j) {
  return parsing("trial config", [&] {
    if (!j.is_object()) throw std::invalid_argument("expected a JSON object");
    TrialConfig config;
    if (j.contains("message")) {
      const json& m = j.at("message");
      if (m.is_string()) {
        config.message = bits_from_string(m.get<std::string>());
      } else {
        config.message = m.get<std::size_t>();
      }
    }
    if (j.contains("strategy")) config.strategy = parse_strategy(j.at("strategy").get<std::string>());
    if (j.contains("grant")) {
      const json& g = j.at("grant");
      if (g.contains("indices")) {
        config.grant = g.at("indices").get<std::vector<std::size_t>>();
      } else {
        config.grant = g.at("fraction").get<double>();
      }
    }
    if (j.contains("trials")) config.trials = j.at("trials").get<std::size_t>();
    if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
    config.validate();
    return config;
  });
}

json report_to_json(const TrialReport& report, bool include_per_trial) {
  const Aggregates& a = report.aggregates;
  json aggregates = {
      {"trials", a.trials},
      {"messages_recovered", a.messages_recovered},
      {"alice_detections", a.alice_detections},
      {"bob_detections", a.bob_detections},
      {"alice_detection_rate", a.alice_detection_rate},
      {"bob_detection_rate", a.bob_detection_rate},
      {"alice_wilson_95", interval_to_json(a.alice_interval)},
      {"bob_wilson_95", interval_to_json(a.bob_interval)},
      {"mean_control_copies", a.mean_control_copies},
      {"max_disturbance", a.max_disturbance},
      {"predicted_alice_detection_rate", a.predicted.alice},
      {"predicted_bob_detection_rate", a.predicted.bob ? json(*a.predicted.bob) : json(nullptr)},
  };
  json out = {{"config", trial_config_to_json(report.config)}, {"aggregates", aggregates}};
  if (include_per_trial) {
    json trials = json::array();
    for (const TrialRecord& r : report.per_trial) {
      trials.push_back({{"message_ok", r.message_ok},
                        {"alice_mismatches", r.alice_mismatches},
                        {"alice_verdict", std::string(verdict_name(r.alice_verdict))},
                        {"bob_failures", r.bob_failures},
                        {"bob_verdict", std::string(verdict_name(r.bob_verdict))},
                        {"grant_size", r.grant_size},
                        {"control_copies", r.control_copies}});
    }
    out["per_trial"] = std::move(trials);
  }
  return out;
}

}  // namespace qseal
