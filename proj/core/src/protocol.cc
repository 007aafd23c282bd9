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

#include "qseal/protocol.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qseal {

namespace {

void check_bit(int bit) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("message bits must be 0 or 1");
}

}  // namespace

QubitSpec SealBlock::qubit_spec(std::size_t position) const {
  if (position >= kQubitsPerBit) throw std::out_of_range("block position out of range");
  return position == control_position ? control_spec : QubitSpec{Basis::Z, message_bit};
}

std::array<QubitSpec, kQubitsPerBit> SealBlock::qubit_specs() const {
  return {qubit_spec(0), qubit_spec(1), qubit_spec(2)};
}

QubitSpec SealedMessage::qubit_spec(std::size_t index) const {
  if (index >= num_qubits()) {
    throw std::out_of_range("qubit " + std::to_string(index) + " out of range for a " +
                            std::to_string(num_qubits()) + "-qubit seal");
  }
  return blocks[index / kQubitsPerBit].qubit_spec(index % kQubitsPerBit);
}

bool SealedMessage::is_control(std::size_t index) const {
  qubit_spec(index);
  return blocks[index / kQubitsPerBit].control_position == index % kQubitsPerBit;
}

std::vector<int> SealedMessage::bits() const {
  std::vector<int> out;
  out.reserve(blocks.size());
  for (const auto& block : blocks) out.push_back(block.message_bit);
  return out;
}

QuantumMemory prepare_memory(const SealedMessage& sealed) {
  std::vector<StateRegister> qubits;
  qubits.reserve(sealed.num_qubits());
  for (const auto& block : sealed.blocks) {
    for (const QubitSpec& spec : block.qubit_specs()) qubits.push_back(prepare(spec));
  }
  return QuantumMemory(std::move(qubits));
}

Seal encode_with_controls(std::span<const int> bits, std::span<const ControlChoice> controls) {
  if (bits.empty()) throw std::invalid_argument("encode: empty message");
  if (controls.size() != bits.size()) {
    throw std::invalid_argument("encode: need exactly one control choice per bit");
  }
  SealedMessage sealed;
  sealed.reading_basis = Basis::Z;
  sealed.blocks.reserve(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    check_bit(bits[i]);
    const ControlChoice& c = controls[i];
    if (c.position >= kQubitsPerBit) throw std::invalid_argument("control position out of range");
    if (c.spec.basis == Basis::Z) throw std::invalid_argument("control qubit must be X or Y");
    check_bit(c.spec.bit);
    sealed.blocks.push_back(SealBlock{bits[i], c.position, c.spec});
  }
  QuantumMemory memory = prepare_memory(sealed);
  return Seal{std::move(sealed), std::move(memory)};
}

Seal encode(std::span<const int> bits, CounterRng& rng) {
  if (bits.empty()) throw std::invalid_argument("encode: empty message");
  std::vector<ControlChoice> controls;
  controls.reserve(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const auto position = static_cast<std::size_t>(rng.uniform_below(kQubitsPerBit));
    const QubitSpec spec = kControlStates[rng.uniform_below(kControlStates.size())];
    controls.push_back(ControlChoice{position, spec});
  }
  return encode_with_controls(bits, controls);
}

int majority_vote(std::span<const int> votes) {
  if (votes.size() % 2 == 0) throw std::logic_error("majority_vote: need an odd number of votes");
  std::size_t ones = 0;
  for (int v : votes) ones += v == 1 ? 1 : 0;
  return 2 * ones > votes.size() ? 1 : 0;
}

ReadResult public_read(QuantumMemory& memory, Basis reading_basis, CounterRng& rng) {
  if (memory.num_qubits() % kQubitsPerBit != 0) {
    throw std::invalid_argument("public_read: memory size is not a multiple of 3");
  }
  ReadResult result;
  result.transcript.reserve(memory.num_qubits());
  for (std::size_t i = 0; i < memory.num_qubits(); ++i) {
    result.transcript.push_back(memory.measure(i, reading_basis, rng));
  }
  result.bits.reserve(memory.num_qubits() / kQubitsPerBit);
  for (std::size_t b = 0; b < memory.num_qubits(); b += kQubitsPerBit) {
    result.bits.push_back(
        majority_vote(std::span<const int>(result.transcript).subspan(b, kQubitsPerBit)));
  }
  return result;
}

std::string_view verdict_name(Verdict verdict) {
  return verdict == Verdict::Intact ? "Intact" : "Broken";
}

VerificationReport alice_verify(QuantumMemory& memory, const SealedMessage& sealed,
                                CounterRng& rng) {
  if (memory.num_qubits() != sealed.num_qubits()) {
    throw std::invalid_argument("alice_verify: memory holds " +
                                std::to_string(memory.num_qubits()) + " qubits, record has " +
                                std::to_string(sealed.num_qubits()));
  }
  VerificationReport report;
  for (std::size_t i = 0; i < sealed.num_qubits(); ++i) {
    const QubitSpec spec = sealed.qubit_spec(i);
    if (memory.measure(i, spec.basis, rng) != spec.bit) ++report.mismatches;
    ++report.qubits_checked;
  }
  report.verdict = report.mismatches > 0 ? Verdict::Broken : Verdict::Intact;
  return report;
}

SubsetGrant grant_subset(const SealedMessage& sealed, std::string reader_id,
                         std::span<const std::size_t> indices) {
  if (indices.empty()) throw std::invalid_argument("grant_subset: empty index list");
  SubsetGrant grant;
  grant.reader_id = std::move(reader_id);
  grant.entries.reserve(indices.size());
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (std::find(indices.begin(), indices.begin() + static_cast<std::ptrdiff_t>(k),
                  indices[k]) != indices.begin() + static_cast<std::ptrdiff_t>(k)) {
      throw std::invalid_argument("grant_subset: duplicate index " + std::to_string(indices[k]));
    }
    grant.entries.push_back(GrantEntry{indices[k], prepare(sealed.qubit_spec(indices[k]))});
  }
  return grant;
}

std::vector<std::size_t> sample_grant_indices(const SealedMessage& sealed, double fraction,
                                              CounterRng& rng) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw std::invalid_argument("grant fraction must be in (0, 1]");
  }
  const std::size_t n = sealed.num_qubits();
  if (n == 0) throw std::invalid_argument("sample_grant_indices: empty seal");
  const auto target = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n))));

  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  for (std::size_t i = n; i > 1; --i) {
    std::swap(pool[i - 1], pool[rng.uniform_below(i)]);
  }

  std::vector<std::size_t> per_block(sealed.num_bits(), 0);
  std::size_t multi_blocks = 0;
  std::vector<std::size_t> chosen;
  for (std::size_t index : pool) {
    if (chosen.size() == target) break;
    const std::size_t block = index / kQubitsPerBit;
    if (per_block[block] == 1) {
      if (2 * (multi_blocks + 1) >= sealed.num_bits()) continue;
      ++multi_blocks;
    }
    ++per_block[block];
    chosen.push_back(index);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

SwapTestResult swap_test(const StateRegister& test, QuantumMemory& memory,
                         std::size_t seal_index, CounterRng& rng) {
  if (test.num_qubits() != 1) throw std::invalid_argument("swap_test: test state must be 1 qubit");
  const std::size_t seal[] = {seal_index};
  const std::size_t node_id = memory.gather(seal, rng, /*reserve=*/2);
  QuantumMemory::Node node = memory.nodes()[node_id];

  // Local layout: ancilla, test, then the seal node (seal qubit first).
  StateRegister joint = merge({StateRegister::zero(1), test, node.state});
  joint = apply_hadamard(joint, 0);
  joint = apply_cswap(joint, 0, 1, 2);
  joint = apply_hadamard(joint, 0);
  const auto ancilla = measure(joint, 0, Basis::Z, rng);

  QuantumMemory::Node residue;
  residue.state = drop_qubit(ancilla.post_state, 0, prepare({Basis::Z, ancilla.value}));
  residue.labels.push_back(std::nullopt);
  residue.labels.insert(residue.labels.end(), node.labels.begin(), node.labels.end());
  memory.replace_node(node_id, std::move(residue));
  return ancilla.value == 1 ? SwapTestResult::Fail : SwapTestResult::Pass;
}

VerificationReport bob_verify(const SubsetGrant& grant, QuantumMemory& memory, CounterRng& rng) {
  for (const auto& entry : grant.entries) memory.locate(entry.index);
  VerificationReport report;
  for (const auto& entry : grant.entries) {
    if (swap_test(entry.copy, memory, entry.index, rng) == SwapTestResult::Fail) {
      ++report.mismatches;
    }
    ++report.qubits_checked;
  }
  report.verdict = report.mismatches > 0 ? Verdict::Broken : Verdict::Intact;
  return report;
}

}  // namespace qseal
