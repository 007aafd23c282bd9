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

#ifndef QSEAL_ADVERSARY_H_
#define QSEAL_ADVERSARY_H_

// Readers who were not granted anything: they see only the public memory
// and the reading-basis announcement, never the sealer's record.

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "qseal/memory.h"
#include "qseal/random.h"

namespace qseal {

enum class Strategy { None, SingleQubit, Partial, Collective };

// "none" | "single-qubit" | "partial" | "collective".
std::string_view strategy_name(Strategy strategy);
// Throws std::invalid_argument for unknown names.
Strategy parse_strategy(std::string_view name);

struct AttackOutcome {
  Strategy strategy = Strategy::None;
  std::vector<int> recovered_bits;
  std::vector<std::size_t> qubits_touched;  // sorted
  // Collective attack only: max over blocks of 1 - F(pre, post).
  std::optional<double> max_disturbance;
};

// Z-measures every qubit and majority-votes. Same as an honest public read.
AttackOutcome attack_single_qubit(QuantumMemory& memory, CounterRng& rng);

// Per block: Z-measures two uniformly chosen positions; stops if they agree,
// otherwise measures the third and majority-votes.
AttackOutcome attack_partial(QuantumMemory& memory, CounterRng& rng);

// Per block: the two-outcome measurement onto span{000,001,010,100} versus
// span{111,110,101,011}. A hit decodes 0, a miss decodes 1.
AttackOutcome attack_collective(QuantumMemory& memory, CounterRng& rng);

// Dispatches by strategy. Strategy::None touches nothing and recovers
// nothing.
AttackOutcome run_attack(Strategy strategy, QuantumMemory& memory, CounterRng& rng);

// Computational-basis indices of the zero-bit triplet subspace (weight <= 1
// on the three leading qubits) for a register of `num_qubits` >= 3.
std::vector<std::size_t> zero_subspace_indices(std::size_t num_qubits);

}  // namespace qseal

#endif  // QSEAL_ADVERSARY_H_
