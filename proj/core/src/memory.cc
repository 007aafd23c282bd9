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

#include "qseal/memory.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qseal {

namespace {

constexpr std::size_t kNoNode = static_cast<std::size_t>(-1);

}  // namespace

QuantumMemory::QuantumMemory(std::vector<StateRegister> qubits) {
  nodes_.reserve(qubits.size());
  slots_.resize(qubits.size());
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (qubits[i].num_qubits() != 1) {
      throw std::invalid_argument("QuantumMemory: qubit " + std::to_string(i) +
                                  " is not a 1-qubit register");
    }
    nodes_.push_back(Node{qubits[i], {i}});
    slots_[i] = Slot{i, 0};
  }
}

QuantumMemory QuantumMemory::from_nodes(std::vector<Node> nodes, std::size_t num_qubits) {
  QuantumMemory memory;
  memory.slots_.assign(num_qubits, Slot{kNoNode, 0});
  for (const Node& node : nodes) {
    memory.check_node(node);
    for (std::size_t k = 0; k < node.labels.size(); ++k) {
      const Label& label = node.labels[k];
      if (!label) continue;
      if (*label >= num_qubits) {
        throw std::invalid_argument("memory node references qubit " + std::to_string(*label) +
                                    " beyond " + std::to_string(num_qubits));
      }
      if (memory.slots_[*label].node != kNoNode) {
        throw std::invalid_argument("memory qubit " + std::to_string(*label) +
                                    " appears more than once");
      }
      memory.slots_[*label] = Slot{memory.nodes_.size(), k};
    }
    memory.nodes_.push_back(node);
  }
  for (std::size_t i = 0; i < num_qubits; ++i) {
    if (memory.slots_[i].node == kNoNode) {
      throw std::invalid_argument("memory qubit " + std::to_string(i) + " is missing");
    }
  }
  return memory;
}

void QuantumMemory::check_node(const Node& node) const {
  if (node.labels.size() != node.state.num_qubits()) {
    throw std::invalid_argument("memory node has " + std::to_string(node.labels.size()) +
                                " labels for a " + std::to_string(node.state.num_qubits()) +
                                "-qubit register");
  }
}

QuantumMemory::Slot QuantumMemory::locate(std::size_t index) const {
  if (index >= slots_.size()) {
    throw std::out_of_range("memory qubit " + std::to_string(index) + " out of range (memory has " +
                            std::to_string(slots_.size()) + " qubits)");
  }
  return slots_[index];
}

void QuantumMemory::reindex(std::size_t node) {
  const auto& labels = nodes_[node].labels;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (labels[k]) slots_[*labels[k]] = Slot{node, k};
  }
}

void QuantumMemory::remove_node(std::size_t node) {
  if (node + 1 != nodes_.size()) {
    nodes_[node] = std::move(nodes_.back());
    nodes_.pop_back();
    reindex(node);
  } else {
    nodes_.pop_back();
  }
}

void QuantumMemory::compact(std::size_t node) {
  bool changed = true;
  while (changed && nodes_[node].state.num_qubits() > 1) {
    changed = false;
    for (std::size_t k = 0; k < nodes_[node].state.num_qubits(); ++k) {
      auto split = try_split_qubit(nodes_[node].state, k);
      if (!split) continue;
      Node& current = nodes_[node];
      const Label label = current.labels[k];
      current.state = split->rest;
      current.labels.erase(current.labels.begin() + static_cast<std::ptrdiff_t>(k));
      reindex(node);
      if (label) {
        nodes_.push_back(Node{split->qubit, {label}});
        reindex(nodes_.size() - 1);
      }
      changed = true;
      break;
    }
  }
  const auto& labels = nodes_[node].labels;
  if (std::none_of(labels.begin(), labels.end(), [](const Label& l) { return l.has_value(); })) {
    remove_node(node);
  }
}

void QuantumMemory::release_unlabeled(std::size_t node, CounterRng& rng) {
  Node& current = nodes_[node];
  for (std::size_t k = current.labels.size(); k-- > 0;) {
    if (current.labels[k] || current.state.num_qubits() < 2) continue;
    const auto outcome = qseal::measure(current.state, k, Basis::Z, rng);
    current.state = drop_qubit(outcome.post_state, k, prepare({Basis::Z, outcome.value}));
    current.labels.erase(current.labels.begin() + static_cast<std::ptrdiff_t>(k));
  }
  reindex(node);
}

int QuantumMemory::measure(std::size_t index, Basis basis, CounterRng& rng) {
  const Slot slot = locate(index);
  Node& node = nodes_[slot.node];
  auto outcome = qseal::measure(node.state, slot.local, basis, rng);
  if (node.state.num_qubits() == 1) {
    node.state = outcome.post_state;
    return outcome.value;
  }
  const StateRegister collapsed = prepare({basis, outcome.value});
  node.state = drop_qubit(outcome.post_state, slot.local, collapsed);
  node.labels.erase(node.labels.begin() + static_cast<std::ptrdiff_t>(slot.local));
  reindex(slot.node);
  nodes_.push_back(Node{collapsed, {index}});
  reindex(nodes_.size() - 1);
  compact(slot.node);
  return outcome.value;
}

std::size_t QuantumMemory::gather(std::span<const std::size_t> indices, CounterRng& rng,
                                  std::size_t reserve) {
  if (indices.empty()) throw std::invalid_argument("gather: no qubits requested");
  for (std::size_t i = 0; i < indices.size(); ++i) {
    locate(indices[i]);
    for (std::size_t j = 0; j < i; ++j) {
      if (indices[i] == indices[j]) {
        throw std::invalid_argument("gather: duplicate qubit " + std::to_string(indices[i]));
      }
    }
  }

  auto involved = [&] {
    std::vector<std::size_t> ids;
    for (std::size_t index : indices) {
      const std::size_t id = slots_[index].node;
      if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
    }
    return ids;
  };
  auto total_qubits = [&](const std::vector<std::size_t>& ids) {
    std::size_t total = reserve;
    for (std::size_t id : ids) total += nodes_[id].state.num_qubits();
    return total;
  };

  std::vector<std::size_t> ids = involved();
  if (total_qubits(ids) > kMaxQubits) {
    for (std::size_t id : ids) release_unlabeled(id, rng);
    ids = involved();
  }
  if (total_qubits(ids) > kMaxQubits) {
    throw std::length_error("gather: joint operation needs " + std::to_string(total_qubits(ids)) +
                            " qubits, capacity is " + std::to_string(kMaxQubits));
  }

  std::vector<StateRegister> states;
  std::vector<Label> labels;
  for (std::size_t id : ids) {
    states.push_back(nodes_[id].state);
    labels.insert(labels.end(), nodes_[id].labels.begin(), nodes_[id].labels.end());
  }
  const StateRegister merged = qseal::merge(states);

  std::vector<std::size_t> order;
  for (std::size_t index : indices) {
    const auto it = std::find(labels.begin(), labels.end(), Label{index});
    order.push_back(static_cast<std::size_t>(it - labels.begin()));
  }
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (std::find(order.begin(), order.end(), k) == order.end()) order.push_back(k);
  }
  Node combined{permute_qubits(merged, order), {}};
  for (std::size_t k : order) combined.labels.push_back(labels[k]);

  std::sort(ids.begin(), ids.end(), std::greater<>());
  for (std::size_t id : ids) remove_node(id);
  nodes_.push_back(std::move(combined));
  reindex(nodes_.size() - 1);
  return nodes_.size() - 1;
}

void QuantumMemory::replace_node(std::size_t node, Node replacement) {
  if (node >= nodes_.size()) throw std::out_of_range("replace_node: unknown node");
  check_node(replacement);
  auto labeled = [](const std::vector<Label>& labels) {
    std::vector<std::size_t> out;
    for (const Label& l : labels) {
      if (l) out.push_back(*l);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  if (labeled(replacement.labels) != labeled(nodes_[node].labels)) {
    throw std::invalid_argument("replace_node: replacement must hold the same memory qubits");
  }
  nodes_[node] = std::move(replacement);
  reindex(node);
  compact(node);
}

StateRegister QuantumMemory::joint_state(std::span<const std::size_t> indices) const {
  if (indices.empty()) throw std::invalid_argument("joint_state: no qubits requested");
  std::vector<std::size_t> ids;
  for (std::size_t index : indices) {
    const std::size_t id = locate(index).node;
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
  }
  std::vector<StateRegister> states;
  std::vector<Label> labels;
  for (std::size_t id : ids) {
    states.push_back(nodes_[id].state);
    labels.insert(labels.end(), nodes_[id].labels.begin(), nodes_[id].labels.end());
  }
  if (labels.size() != indices.size()) {
    throw std::invalid_argument("joint_state: requested qubits are entangled with other qubits");
  }
  const StateRegister merged = qseal::merge(states);
  std::vector<std::size_t> order;
  for (std::size_t index : indices) {
    const auto it = std::find(labels.begin(), labels.end(), Label{index});
    if (it == labels.end()) throw std::invalid_argument("joint_state: duplicate qubit");
    order.push_back(static_cast<std::size_t>(it - labels.begin()));
  }
  return permute_qubits(merged, order);
}

double QuantumMemory::qubit_fidelity(std::size_t index, const StateRegister& phi) const {
  const Slot slot = locate(index);
  return qseal::qubit_fidelity(nodes_[slot.node].state, slot.local, phi);
}

}  // namespace qseal
