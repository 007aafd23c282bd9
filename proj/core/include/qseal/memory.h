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

#ifndef QSEAL_MEMORY_H_
#define QSEAL_MEMORY_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qseal/qsim.h"

namespace qseal {

// Public quantum memory holding the sealed qubits.
//
// Qubits start as independent 1-qubit registers. Joint operations gather
// the registers they touch into one merged node; the node keeps a label
// per local qubit naming the memory index it holds, or no label for a
// foreign qubit (a reader's test copy left entangled after a SWAP test).
// After every mutation, qubits whose reduced state is pure are split back
// out, and unlabeled product factors are discarded.
//
// Single-writer: operations that collapse state need exclusive access.
class QuantumMemory {
 public:
  using Label = std::optional<std::size_t>;

  struct Node {
    StateRegister state;
    std::vector<Label> labels;  // labels[k] is local qubit k's memory index
  };

  struct Slot {
    std::size_t node = 0;
    std::size_t local = 0;
  };

  QuantumMemory() = default;

  // One 1-qubit register per memory index, in order.
  explicit QuantumMemory(std::vector<StateRegister> qubits);

  // Rebuilds a memory from stored nodes. Every index 0..num_qubits-1 must
  // appear exactly once across all labels. Throws std::invalid_argument.
  static QuantumMemory from_nodes(std::vector<Node> nodes, std::size_t num_qubits);

  std::size_t num_qubits() const { return slots_.size(); }
  std::span<const Node> nodes() const { return nodes_; }

  // Throws std::out_of_range for an unknown index.
  Slot locate(std::size_t index) const;
  const Node& node_of(std::size_t index) const { return nodes_[locate(index).node]; }

  // Measures one qubit, stores the collapsed state, returns the outcome.
  int measure(std::size_t index, Basis basis, CounterRng& rng);

  // Merges the nodes holding `indices` into one node whose first qubits are
  // `indices` in the given order, leaving room for `reserve` extra qubits
  // in a joint operation. Unlabeled qubits are measured out to make room
  // when needed. Returns the node id, valid until the next mutation.
  // Throws std::length_error if the qubits still do not fit.
  std::size_t gather(std::span<const std::size_t> indices, CounterRng& rng,
                     std::size_t reserve = 0);

  // Replaces a node's contents (for example after a joint unitary and
  // measurement), then splits off separable qubits.
  void replace_node(std::size_t node, Node replacement);

  // Pure joint state of `indices` in the given order, without collapsing.
  // Throws std::invalid_argument when those qubits share a node with any
  // other qubit, since their joint state is then mixed.
  StateRegister joint_state(std::span<const std::size_t> indices) const;

  // <phi|rho|phi> for the reduced state of one memory qubit.
  double qubit_fidelity(std::size_t index, const StateRegister& phi) const;

 private:
  void check_node(const Node& node) const;
  void reindex(std::size_t node);
  void remove_node(std::size_t node);
  void compact(std::size_t node);
  void release_unlabeled(std::size_t node, CounterRng& rng);

  std::vector<Node> nodes_;
  std::vector<Slot> slots_;
};

}  // namespace qseal

#endif  // QSEAL_MEMORY_H_
