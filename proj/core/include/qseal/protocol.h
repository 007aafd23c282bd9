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

#ifndef QSEAL_PROTOCOL_H_
#define QSEAL_PROTOCOL_H_

// The sealing protocol: triplet encoding, public readout by majority vote,
// the sealer's own verification in the preparation bases, subset grants for
// intended readers, and SWAP-test verification by those readers.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qseal/memory.h"
#include "qseal/qsim.h"
#include "qseal/random.h"

namespace qseal {

inline constexpr std::size_t kQubitsPerBit = 3;

// One encoded bit. Two qubits hold (Z, message_bit); the control qubit at
// control_position holds an X or Y basis state.
struct SealBlock {
  int message_bit = 0;
  std::size_t control_position = 0;
  QubitSpec control_spec{Basis::X, 0};

  QubitSpec qubit_spec(std::size_t position) const;
  std::array<QubitSpec, kQubitsPerBit> qubit_specs() const;

  friend bool operator==(const SealBlock&, const SealBlock&) = default;
};

// The sealer's private record plus the public reading-basis announcement.
struct SealedMessage {
  std::vector<SealBlock> blocks;
  Basis reading_basis = Basis::Z;

  std::size_t num_bits() const { return blocks.size(); }
  std::size_t num_qubits() const { return blocks.size() * kQubitsPerBit; }
  QubitSpec qubit_spec(std::size_t index) const;
  bool is_control(std::size_t index) const;
  std::vector<int> bits() const;

  friend bool operator==(const SealedMessage&, const SealedMessage&) = default;
};

// Where the control qubit of a block sits and which of the four
// X/Y states it carries.
struct ControlChoice {
  std::size_t position = 0;
  QubitSpec spec{Basis::X, 0};
};

// The four admissible control states, in draw order.
inline constexpr std::array<QubitSpec, 4> kControlStates{
    QubitSpec{Basis::X, 0}, QubitSpec{Basis::X, 1}, QubitSpec{Basis::Y, 0},
    QubitSpec{Basis::Y, 1}};

struct Seal {
  SealedMessage record;
  QuantumMemory memory;
};

// Draws each block's control position uniformly from {0,1,2} and its
// state uniformly from kControlStates, independently per block.
Seal encode(std::span<const int> bits, CounterRng& rng);

// Encodes with explicit control choices, one per bit.
Seal encode_with_controls(std::span<const int> bits, std::span<const ControlChoice> controls);

QuantumMemory prepare_memory(const SealedMessage& sealed);

// Majority of an odd number of 0/1 votes.
int majority_vote(std::span<const int> votes);

struct ReadResult {
  std::vector<int> bits;
  std::vector<int> transcript;  // one measured value per qubit
};

// Measures every qubit in `reading_basis`, collapsing the memory, and
// majority-votes each triplet.
ReadResult public_read(QuantumMemory& memory, Basis reading_basis, CounterRng& rng);

enum class Verdict { Intact, Broken };
std::string_view verdict_name(Verdict verdict);

struct VerificationReport {
  std::size_t qubits_checked = 0;
  std::size_t mismatches = 0;
  Verdict verdict = Verdict::Intact;
};

// Measures each qubit in its recorded preparation basis and counts outcomes
// that disagree with the recorded bit.
VerificationReport alice_verify(QuantumMemory& memory, const SealedMessage& sealed,
                                CounterRng& rng);

struct GrantEntry {
  std::size_t index = 0;
  StateRegister copy;
};

// An intended reader's credential: fresh copies of selected seal qubits.
// Carries indices, never preparation specs.
struct SubsetGrant {
  std::string reader_id;
  std::vector<GrantEntry> entries;
};

// Throws std::invalid_argument for empty or duplicate indices and
// std::out_of_range for indices past the seal.
SubsetGrant grant_subset(const SealedMessage& sealed, std::string reader_id,
                         std::span<const std::size_t> indices);

inline constexpr double kDefaultGrantFraction = 0.10;

// Samples round(fraction * N) qubit indices (at least one) uniformly, skipping
// any pick that would leave half or more of the blocks contributing two or
// more qubits. Result is sorted.
std::vector<std::size_t> sample_grant_indices(const SealedMessage& sealed, double fraction,
                                              CounterRng& rng);

enum class SwapTestResult { Pass, Fail };

// SWAP test of a 1-qubit `test` state against memory qubit `seal_index`:
// ancilla |0>, H, controlled-SWAP, H, then Z measurement of the ancilla.
// Outcome 1 fails. The (test, seal) residue stays in memory; the test copy
// is consumed.
SwapTestResult swap_test(const StateRegister& test, QuantumMemory& memory,
                         std::size_t seal_index, CounterRng& rng);

// Runs swap_test for every grant entry. Broken on at least one failure.
VerificationReport bob_verify(const SubsetGrant& grant, QuantumMemory& memory, CounterRng& rng);

}  // namespace qseal

#endif  // QSEAL_PROTOCOL_H_
