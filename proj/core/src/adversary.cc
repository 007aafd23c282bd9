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

#include "qseal/adversary.h"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "qseal/protocol.h"

namespace qseal {

namespace {

void check_triplets(const QuantumMemory& memory) {
  if (memory.num_qubits() == 0 || memory.num_qubits() % kQubitsPerBit != 0) {
    throw std::invalid_argument("attack: memory is not a sequence of triplets");
  }
}

}  // namespace

std::string_view strategy_name(Strategy strategy) {
  switch (strategy) {
    case Strategy::None:
      return "none";
    case Strategy::SingleQubit:
      return "single-qubit";
    case Strategy::Partial:
      return "partial";
    case Strategy::Collective:
      return "collective";
  }
  return "?";
}

Strategy parse_strategy(std::string_view name) {
  for (Strategy s : {Strategy::None, Strategy::SingleQubit, Strategy::Partial,
                     Strategy::Collective}) {
    if (name == strategy_name(s)) return s;
  }
  throw std::invalid_argument("unknown strategy '" + std::string(name) +
                              "' (expected none, single-qubit, partial or collective)");
}

AttackOutcome attack_single_qubit(QuantumMemory& memory, CounterRng& rng) {
  check_triplets(memory);
  AttackOutcome outcome;
  outcome.strategy = Strategy::SingleQubit;
  outcome.recovered_bits = public_read(memory, Basis::Z, rng).bits;
  outcome.qubits_touched.resize(memory.num_qubits());
  for (std::size_t i = 0; i < memory.num_qubits(); ++i) outcome.qubits_touched[i] = i;
  return outcome;
}

AttackOutcome attack_partial(QuantumMemory& memory, CounterRng& rng) {
  check_triplets(memory);
  AttackOutcome outcome;
  outcome.strategy = Strategy::Partial;
  for (std::size_t base = 0; base < memory.num_qubits(); base += kQubitsPerBit) {
    // The skipped position is uniform, so the measured pair is a uniform
    // 2-subset.
    const auto skipped = static_cast<std::size_t>(rng.uniform_below(kQubitsPerBit));
    const std::size_t first = base + (skipped == 0 ? 1 : 0);
    const std::size_t second = base + (skipped == 2 ? 1 : 2);
    const int a = memory.measure(first, Basis::Z, rng);
    const int b = memory.measure(second, Basis::Z, rng);
    outcome.qubits_touched.push_back(first);
    outcome.qubits_touched.push_back(second);
    if (a == b) {
      outcome.recovered_bits.push_back(a);
      continue;
    }
    const std::size_t third = base + skipped;
    const int c = memory.measure(third, Basis::Z, rng);
    outcome.qubits_touched.push_back(third);
    const int votes[] = {a, b, c};
    outcome.recovered_bits.push_back(majority_vote(votes));
  }
  std::sort(outcome.qubits_touched.begin(), outcome.qubits_touched.end());
  return outcome;
}

std::vector<std::size_t> zero_subspace_indices(std::size_t num_qubits) {
  if (num_qubits < kQubitsPerBit || num_qubits > kMaxQubits) {
    throw std::invalid_argument("zero_subspace_indices: need 3..4 qubits");
  }
  const std::size_t tail = num_qubits - kQubitsPerBit;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < (std::size_t{1} << num_qubits); ++i) {
    if (std::popcount(i >> tail) <= 1) out.push_back(i);
  }
  return out;
}

AttackOutcome attack_collective(QuantumMemory& memory, CounterRng& rng) {
  check_triplets(memory);
  AttackOutcome outcome;
  outcome.strategy = Strategy::Collective;
  double max_disturbance = 0.0;
  for (std::size_t base = 0; base < memory.num_qubits(); base += kQubitsPerBit) {
    const std::size_t triplet[] = {base, base + 1, base + 2};
    const std::size_t node_id = memory.gather(triplet, rng);
    QuantumMemory::Node node = memory.nodes()[node_id];
    const auto zero_set = zero_subspace_indices(node.state.num_qubits());
    const auto projected = project_subspace(node.state, zero_set, rng);
    max_disturbance = std::max(max_disturbance, 1.0 - fidelity(node.state, projected.post_state));
    outcome.recovered_bits.push_back(projected.hit ? 0 : 1);
    outcome.qubits_touched.insert(outcome.qubits_touched.end(), std::begin(triplet),
                                  std::end(triplet));
    node.state = projected.post_state;
    memory.replace_node(node_id, std::move(node));
  }
  outcome.max_disturbance = max_disturbance;
  return outcome;
}

AttackOutcome run_attack(Strategy strategy, QuantumMemory& memory, CounterRng& rng) {
  switch (strategy) {
    case Strategy::None:
      return AttackOutcome{};
    case Strategy::SingleQubit:
      return attack_single_qubit(memory, rng);
    case Strategy::Partial:
      return attack_partial(memory, rng);
    case Strategy::Collective:
      return attack_collective(memory, rng);
  }
  throw std::invalid_argument("unknown strategy");
}

}  // namespace qseal
