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

#ifndef QSEAL_QSIM_H_
#define QSEAL_QSIM_H_

// Dense state-vector simulator for registers of at most four qubits.
//
// Qubit 0 is the most significant bit of the basis-state index, so the
// register |q0 q1 ... q_{n-1}> has index q0*2^{n-1} + ... + q_{n-1}.
// Every operation returns a new register; StateRegister values are
// immutable once built and may be shared between threads.

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qseal/random.h"

namespace qseal {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxQubits = 4;
inline constexpr std::size_t kMaxAmplitudes = std::size_t{1} << kMaxQubits;

// Tolerance for algebraic identities (normalization, unitarity).
inline constexpr double kExactTolerance = 1e-12;

// The three Pauli eigenbases. Pairwise mutually unbiased.
enum class Basis : std::uint8_t { Z, X, Y };

std::string_view basis_name(Basis basis);
// Accepts "Z", "X", "Y" (case-insensitive). Throws std::invalid_argument.
Basis parse_basis(std::string_view name);

// Classical preparation record for one qubit.
struct QubitSpec {
  Basis basis = Basis::Z;
  int bit = 0;

  friend bool operator==(const QubitSpec&, const QubitSpec&) = default;
};

class StateRegister {
 public:
  // Validates length (a power of two covering 1..4 qubits), finiteness,
  // and that the squared norm is within `norm_tolerance` of one. The
  // amplitudes are stored as given, without renormalization.
  static StateRegister from_amplitudes(std::span<const Complex> amplitudes,
                                       double norm_tolerance = kExactTolerance);
  static StateRegister from_amplitudes(std::initializer_list<Complex> amplitudes,
                                       double norm_tolerance = kExactTolerance);

  // |0...0> on n qubits.
  static StateRegister zero(std::size_t num_qubits);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t size() const { return std::size_t{1} << num_qubits_; }
  std::span<const Complex> amplitudes() const { return {amps_.data(), size()}; }
  Complex amplitude(std::size_t index) const { return amps_.at(index); }
  double norm_squared() const;

  friend bool operator==(const StateRegister& a, const StateRegister& b);

  // |0> on one qubit.
  StateRegister() { amps_[0] = 1.0; }

 private:
  friend struct RegisterAccess;

  std::size_t num_qubits_ = 1;
  std::array<Complex, kMaxAmplitudes> amps_{};
};

struct MeasurementOutcome {
  int value = 0;
  StateRegister post_state;
};

struct ProjectionOutcome {
  bool hit = false;
  StateRegister post_state;
};

// Single-qubit basis vector |bit_basis>. Conventions:
//   |0_x> = (|0> + |1>)/sqrt2   |1_x> = (|0> - |1>)/sqrt2
//   |0_y> = (|0> + i|1>)/sqrt2  |1_y> = (|0> - i|1>)/sqrt2
std::array<Complex, 2> basis_vector(Basis basis, int bit);

StateRegister prepare(const QubitSpec& spec);

// Born probability that `qubit` is found in |value_basis>. No sampling.
double outcome_probability(const StateRegister& reg, std::size_t qubit, Basis basis, int value);

// Samples one projective measurement of `qubit` in `basis` and returns the
// renormalized post-measurement register. Consumes exactly one uniform draw.
MeasurementOutcome measure(const StateRegister& reg, std::size_t qubit, Basis basis,
                           CounterRng& rng);

StateRegister apply_hadamard(const StateRegister& reg, std::size_t qubit);

// Swaps qubits a and b on the subspace where `control` is |1>.
StateRegister apply_cswap(const StateRegister& reg, std::size_t control, std::size_t a,
                          std::size_t b);

// Tensor product in list order. Throws std::length_error past kMaxQubits.
StateRegister merge(std::span<const StateRegister> regs);
StateRegister merge(std::initializer_list<StateRegister> regs);

// Two-outcome measurement {P, 1-P} with P the sum of the listed
// computational-basis projectors. Consumes exactly one uniform draw.
ProjectionOutcome project_subspace(const StateRegister& reg,
                                   std::span<const std::size_t> basis_states, CounterRng& rng);

Complex inner_product(const StateRegister& a, const StateRegister& b);

// |<a|b>|^2.
double fidelity(const StateRegister& a, const StateRegister& b);

// Row-major 2x2 reduced density matrix of `qubit`.
std::array<Complex, 4> reduced_density(const StateRegister& reg, std::size_t qubit);

// <phi|rho_qubit|phi> for a 1-qubit pure `phi`.
double qubit_fidelity(const StateRegister& reg, std::size_t qubit, const StateRegister& phi);

// Reorders qubits: new qubit k is old qubit order[k]. `order` must be a
// permutation of 0..n-1.
StateRegister permute_qubits(const StateRegister& reg, std::span<const std::size_t> order);

// Contracts `qubit` against the 1-qubit state `known` and renormalizes.
// Exact when the register is a product with `known` on that qubit, as it
// is right after a measurement of that qubit.
StateRegister drop_qubit(const StateRegister& reg, std::size_t qubit, const StateRegister& known);

struct SplitQubit {
  StateRegister qubit;
  StateRegister rest;
};

// Splits `qubit` off as a product factor when its reduced state is pure to
// within `purity_tolerance`. Empty otherwise, and for 1-qubit input.
std::optional<SplitQubit> try_split_qubit(const StateRegister& reg, std::size_t qubit,
                                          double purity_tolerance = kExactTolerance);

}  // namespace qseal

#endif  // QSEAL_QSIM_H_
