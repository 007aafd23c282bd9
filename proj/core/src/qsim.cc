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

#include "qseal/qsim.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qseal {

struct RegisterAccess {
  static StateRegister make(std::size_t num_qubits) {
    StateRegister reg;
    reg.num_qubits_ = num_qubits;
    reg.amps_.fill(Complex{});
    return reg;
  }
  static Complex* data(StateRegister& reg) { return reg.amps_.data(); }
};

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::size_t bit_mask(std::size_t num_qubits, std::size_t qubit) {
  return std::size_t{1} << (num_qubits - 1 - qubit);
}

void check_qubit(const StateRegister& reg, std::size_t qubit, const char* op) {
  if (qubit >= reg.num_qubits()) {
    throw std::out_of_range(std::string(op) + ": qubit index " + std::to_string(qubit) +
                            " out of range for " + std::to_string(reg.num_qubits()) +
                            "-qubit register");
  }
}

// Scales the register to unit norm in place.
void normalize(StateRegister& reg, double norm_sq) {
  const double scale = 1.0 / std::sqrt(norm_sq);
  Complex* amps = RegisterAccess::data(reg);
  for (std::size_t i = 0; i < reg.size(); ++i) amps[i] *= scale;
}

// Inserts a zero bit at position `qubit` of an (n-1)-qubit index.
std::size_t insert_zero_bit(std::size_t rest_index, std::size_t num_qubits, std::size_t qubit) {
  const std::size_t low_bits = num_qubits - 1 - qubit;
  const std::size_t low = rest_index & ((std::size_t{1} << low_bits) - 1);
  const std::size_t high = rest_index >> low_bits;
  return (high << (low_bits + 1)) | low;
}

}  // namespace

std::string_view basis_name(Basis basis) {
  switch (basis) {
    case Basis::Z:
      return "Z";
    case Basis::X:
      return "X";
    case Basis::Y:
      return "Y";
  }
  return "?";
}

Basis parse_basis(std::string_view name) {
  if (name.size() == 1) {
    switch (std::toupper(static_cast<unsigned char>(name[0]))) {
      case 'Z':
        return Basis::Z;
      case 'X':
        return Basis::X;
      case 'Y':
        return Basis::Y;
      default:
        break;
    }
  }
  throw std::invalid_argument("unknown basis '" + std::string(name) + "'");
}

StateRegister StateRegister::from_amplitudes(std::span<const Complex> amplitudes,
                                             double norm_tolerance) {
  const std::size_t n = amplitudes.size();
  if (n < 2 || n > kMaxAmplitudes || (n & (n - 1)) != 0) {
    throw std::invalid_argument("amplitude count " + std::to_string(n) +
                                " is not 2^k for k in [1, 4]");
  }
  std::size_t num_qubits = 0;
  while ((std::size_t{1} << num_qubits) < n) ++num_qubits;

  StateRegister reg = RegisterAccess::make(num_qubits);
  double norm_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Complex a = amplitudes[i];
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw std::invalid_argument("non-finite amplitude at index " + std::to_string(i));
    }
    reg.amps_[i] = a;
    norm_sq += std::norm(a);
  }
  if (std::abs(norm_sq - 1.0) > norm_tolerance) {
    throw std::invalid_argument("amplitudes are not normalized (norm^2 = " +
                                std::to_string(norm_sq) + ")");
  }
  return reg;
}

StateRegister StateRegister::from_amplitudes(std::initializer_list<Complex> amplitudes,
                                             double norm_tolerance) {
  return from_amplitudes(std::span<const Complex>(amplitudes.begin(), amplitudes.size()),
                         norm_tolerance);
}

StateRegister StateRegister::zero(std::size_t num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::length_error("register size must be 1..4 qubits");
  }
  StateRegister reg = RegisterAccess::make(num_qubits);
  reg.amps_[0] = 1.0;
  return reg;
}

double StateRegister::norm_squared() const {
  double total = 0.0;
  for (const Complex& a : amplitudes()) total += std::norm(a);
  return total;
}

bool operator==(const StateRegister& a, const StateRegister& b) {
  if (a.num_qubits_ != b.num_qubits_) return false;
  return std::equal(a.amps_.begin(), a.amps_.begin() + a.size(), b.amps_.begin());
}

std::array<Complex, 2> basis_vector(Basis basis, int bit) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("bit must be 0 or 1");
  const double sign = bit == 0 ? 1.0 : -1.0;
  switch (basis) {
    case Basis::Z:
      return bit == 0 ? std::array<Complex, 2>{1.0, 0.0} : std::array<Complex, 2>{0.0, 1.0};
    case Basis::X:
      return {Complex(kInvSqrt2, 0.0), Complex(sign * kInvSqrt2, 0.0)};
    case Basis::Y:
      return {Complex(kInvSqrt2, 0.0), Complex(0.0, sign * kInvSqrt2)};
  }
  throw std::invalid_argument("unknown basis");
}

StateRegister prepare(const QubitSpec& spec) {
  const auto v = basis_vector(spec.basis, spec.bit);
  StateRegister reg = RegisterAccess::make(1);
  Complex* amps = RegisterAccess::data(reg);
  amps[0] = v[0];
  amps[1] = v[1];
  return reg;
}

namespace {

// <value_basis|_qubit applied to the register, for one pair (i0, i1).
Complex project_pair(const std::array<Complex, 2>& v, Complex a0, Complex a1) {
  return std::conj(v[0]) * a0 + std::conj(v[1]) * a1;
}

double pair_weight(const StateRegister& reg, std::size_t qubit,
                   const std::array<Complex, 2>& v) {
  const std::size_t n = reg.num_qubits();
  const std::size_t mask = bit_mask(n, qubit);
  const auto amps = reg.amplitudes();
  double p = 0.0;
  for (std::size_t r = 0; r < reg.size() / 2; ++r) {
    const std::size_t i0 = insert_zero_bit(r, n, qubit);
    p += std::norm(project_pair(v, amps[i0], amps[i0 | mask]));
  }
  return p;
}

}  // namespace

double outcome_probability(const StateRegister& reg, std::size_t qubit, Basis basis, int value) {
  check_qubit(reg, qubit, "outcome_probability");
  const double p0 = pair_weight(reg, qubit, basis_vector(basis, 0));
  const double p1 = pair_weight(reg, qubit, basis_vector(basis, 1));
  return (value == 0 ? p0 : p1) / (p0 + p1);
}

MeasurementOutcome measure(const StateRegister& reg, std::size_t qubit, Basis basis,
                           CounterRng& rng) {
  check_qubit(reg, qubit, "measure");
  const auto v0 = basis_vector(basis, 0);
  const auto v1 = basis_vector(basis, 1);
  const double p0 = pair_weight(reg, qubit, v0);
  const double p1 = pair_weight(reg, qubit, v1);
  const int value = rng.uniform01() < p0 / (p0 + p1) ? 0 : 1;
  const auto& v = value == 0 ? v0 : v1;

  const std::size_t n = reg.num_qubits();
  const std::size_t mask = bit_mask(n, qubit);
  const auto amps = reg.amplitudes();
  StateRegister post = RegisterAccess::make(n);
  Complex* out = RegisterAccess::data(post);
  for (std::size_t r = 0; r < reg.size() / 2; ++r) {
    const std::size_t i0 = insert_zero_bit(r, n, qubit);
    const Complex c = project_pair(v, amps[i0], amps[i0 | mask]);
    out[i0] = v[0] * c;
    out[i0 | mask] = v[1] * c;
  }
  normalize(post, value == 0 ? p0 : p1);
  return {value, post};
}

StateRegister apply_hadamard(const StateRegister& reg, std::size_t qubit) {
  check_qubit(reg, qubit, "apply_hadamard");
  const std::size_t n = reg.num_qubits();
  const std::size_t mask = bit_mask(n, qubit);
  StateRegister out = reg;
  Complex* amps = RegisterAccess::data(out);
  for (std::size_t r = 0; r < reg.size() / 2; ++r) {
    const std::size_t i0 = insert_zero_bit(r, n, qubit);
    const Complex a = amps[i0];
    const Complex b = amps[i0 | mask];
    amps[i0] = (a + b) * kInvSqrt2;
    amps[i0 | mask] = (a - b) * kInvSqrt2;
  }
  return out;
}

StateRegister apply_cswap(const StateRegister& reg, std::size_t control, std::size_t a,
                          std::size_t b) {
  check_qubit(reg, control, "apply_cswap");
  check_qubit(reg, a, "apply_cswap");
  check_qubit(reg, b, "apply_cswap");
  if (control == a || control == b || a == b) {
    throw std::invalid_argument("apply_cswap: control and targets must be distinct");
  }
  const std::size_t n = reg.num_qubits();
  const std::size_t mc = bit_mask(n, control);
  const std::size_t ma = bit_mask(n, a);
  const std::size_t mb = bit_mask(n, b);
  StateRegister out = reg;
  Complex* amps = RegisterAccess::data(out);
  for (std::size_t i = 0; i < reg.size(); ++i) {
    if ((i & mc) && (i & ma) && !(i & mb)) {
      std::swap(amps[i], amps[(i & ~ma) | mb]);
    }
  }
  return out;
}

StateRegister merge(std::span<const StateRegister> regs) {
  if (regs.empty()) throw std::invalid_argument("merge: no registers");
  std::size_t total = 0;
  for (const auto& r : regs) total += r.num_qubits();
  if (total > kMaxQubits) {
    throw std::length_error("merge: " + std::to_string(total) + " qubits exceeds capacity of " +
                            std::to_string(kMaxQubits));
  }
  StateRegister acc = regs.front();
  for (std::size_t k = 1; k < regs.size(); ++k) {
    const StateRegister& next = regs[k];
    StateRegister out = RegisterAccess::make(acc.num_qubits() + next.num_qubits());
    Complex* amps = RegisterAccess::data(out);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      for (std::size_t j = 0; j < next.size(); ++j) {
        amps[i * next.size() + j] = acc.amplitude(i) * next.amplitude(j);
      }
    }
    acc = out;
  }
  return acc;
}

StateRegister merge(std::initializer_list<StateRegister> regs) {
  return merge(std::span<const StateRegister>(regs.begin(), regs.size()));
}

ProjectionOutcome project_subspace(const StateRegister& reg,
                                   std::span<const std::size_t> basis_states, CounterRng& rng) {
  if (basis_states.empty()) throw std::invalid_argument("project_subspace: empty index set");
  std::array<bool, kMaxAmplitudes> in_set{};
  for (std::size_t idx : basis_states) {
    if (idx >= reg.size()) {
      throw std::out_of_range("project_subspace: basis state " + std::to_string(idx) +
                              " out of range");
    }
    in_set[idx] = true;
  }
  double p_in = 0.0;
  double p_out = 0.0;
  for (std::size_t i = 0; i < reg.size(); ++i) {
    (in_set[i] ? p_in : p_out) += std::norm(reg.amplitude(i));
  }
  const bool hit = rng.uniform01() < p_in / (p_in + p_out);
  StateRegister post = RegisterAccess::make(reg.num_qubits());
  Complex* amps = RegisterAccess::data(post);
  for (std::size_t i = 0; i < reg.size(); ++i) {
    if (in_set[i] == hit) amps[i] = reg.amplitude(i);
  }
  normalize(post, hit ? p_in : p_out);
  return {hit, post};
}

Complex inner_product(const StateRegister& a, const StateRegister& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("inner_product: register sizes differ");
  }
  Complex total{};
  for (std::size_t i = 0; i < a.size(); ++i) total += std::conj(a.amplitude(i)) * b.amplitude(i);
  return total;
}

double fidelity(const StateRegister& a, const StateRegister& b) {
  return std::min(1.0, std::norm(inner_product(a, b)));
}

std::array<Complex, 4> reduced_density(const StateRegister& reg, std::size_t qubit) {
  check_qubit(reg, qubit, "reduced_density");
  const std::size_t n = reg.num_qubits();
  const std::size_t mask = bit_mask(n, qubit);
  std::array<Complex, 4> rho{};
  for (std::size_t r = 0; r < reg.size() / 2; ++r) {
    const std::size_t i0 = insert_zero_bit(r, n, qubit);
    const Complex a0 = reg.amplitude(i0);
    const Complex a1 = reg.amplitude(i0 | mask);
    rho[0] += a0 * std::conj(a0);
    rho[1] += a0 * std::conj(a1);
    rho[2] += a1 * std::conj(a0);
    rho[3] += a1 * std::conj(a1);
  }
  return rho;
}

double qubit_fidelity(const StateRegister& reg, std::size_t qubit, const StateRegister& phi) {
  if (phi.num_qubits() != 1) throw std::invalid_argument("qubit_fidelity: phi must be 1 qubit");
  const auto rho = reduced_density(reg, qubit);
  const Complex p0 = phi.amplitude(0);
  const Complex p1 = phi.amplitude(1);
  const Complex f = std::conj(p0) * (rho[0] * p0 + rho[1] * p1) +
                    std::conj(p1) * (rho[2] * p0 + rho[3] * p1);
  return std::clamp(f.real(), 0.0, 1.0);
}

StateRegister permute_qubits(const StateRegister& reg, std::span<const std::size_t> order) {
  const std::size_t n = reg.num_qubits();
  if (order.size() != n) throw std::invalid_argument("permute_qubits: wrong order length");
  std::array<bool, kMaxQubits> seen{};
  for (std::size_t q : order) {
    if (q >= n || seen[q]) throw std::invalid_argument("permute_qubits: not a permutation");
    seen[q] = true;
  }
  StateRegister out = RegisterAccess::make(n);
  Complex* amps = RegisterAccess::data(out);
  for (std::size_t i = 0; i < reg.size(); ++i) {
    std::size_t j = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (i & bit_mask(n, order[k])) j |= bit_mask(n, k);
    }
    amps[j] = reg.amplitude(i);
  }
  return out;
}

StateRegister drop_qubit(const StateRegister& reg, std::size_t qubit, const StateRegister& known) {
  check_qubit(reg, qubit, "drop_qubit");
  if (reg.num_qubits() < 2) throw std::invalid_argument("drop_qubit: register has one qubit");
  if (known.num_qubits() != 1) throw std::invalid_argument("drop_qubit: known must be 1 qubit");
  const std::size_t n = reg.num_qubits();
  const std::size_t mask = bit_mask(n, qubit);
  const std::array<Complex, 2> v{known.amplitude(0), known.amplitude(1)};
  StateRegister rest = RegisterAccess::make(n - 1);
  Complex* amps = RegisterAccess::data(rest);
  double norm_sq = 0.0;
  for (std::size_t r = 0; r < rest.size(); ++r) {
    const std::size_t i0 = insert_zero_bit(r, n, qubit);
    amps[r] = project_pair(v, reg.amplitude(i0), reg.amplitude(i0 | mask));
    norm_sq += std::norm(amps[r]);
  }
  if (norm_sq == 0.0) throw std::invalid_argument("drop_qubit: state orthogonal to known qubit");
  normalize(rest, norm_sq);
  return rest;
}

std::optional<SplitQubit> try_split_qubit(const StateRegister& reg, std::size_t qubit,
                                          double purity_tolerance) {
  check_qubit(reg, qubit, "try_split_qubit");
  if (reg.num_qubits() < 2) return std::nullopt;
  const auto rho = reduced_density(reg, qubit);
  double purity = 0.0;
  for (const Complex& e : rho) purity += std::norm(e);
  if (purity < 1.0 - purity_tolerance) return std::nullopt;

  // For a pure reduced state rho = |phi><phi|, any nonzero column of rho is
  // proportional to phi. Use the heavier one.
  const std::size_t col = rho[0].real() >= rho[3].real() ? 0 : 1;
  const double scale = 1.0 / std::sqrt((col == 0 ? rho[0] : rho[3]).real());
  StateRegister phi = RegisterAccess::make(1);
  Complex* p = RegisterAccess::data(phi);
  p[0] = rho[col] * scale;
  p[1] = rho[2 + col] * scale;
  normalize(phi, std::norm(p[0]) + std::norm(p[1]));
  StateRegister rest = drop_qubit(reg, qubit, phi);
  return SplitQubit{phi, rest};
}

}  // namespace qseal
