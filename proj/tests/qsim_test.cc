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

#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"

namespace qseal {
namespace {

using testing::kRt2;

constexpr double kTol = kExactTolerance;
const Complex kI(0.0, 1.0);

void expect_amplitudes(const StateRegister& reg, std::vector<Complex> expected) {
  ASSERT_EQ(reg.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_NEAR(reg.amplitude(i).real(), expected[i].real(), kTol) << "index " << i;
    EXPECT_NEAR(reg.amplitude(i).imag(), expected[i].imag(), kTol) << "index " << i;
  }
}

constexpr Basis kBases[] = {Basis::Z, Basis::X, Basis::Y};

TEST(Prepare, ComputationalZero) { expect_amplitudes(prepare({Basis::Z, 0}), {1.0, 0.0}); }

TEST(Prepare, PlusState) { expect_amplitudes(prepare({Basis::X, 0}), {kRt2, kRt2}); }

TEST(Prepare, YOneState) {
  const StateRegister y1 = prepare({Basis::Y, 1});
  expect_amplitudes(y1, {kRt2, -kRt2 * kI});
  EXPECT_NEAR(std::abs(inner_product(prepare({Basis::Y, 0}), y1)), 0.0, kTol);
  EXPECT_NEAR(fidelity(prepare({Basis::Z, 0}), y1), 0.5, kTol);
  EXPECT_NEAR(fidelity(prepare({Basis::Z, 1}), y1), 0.5, kTol);
}

TEST(Prepare, MatchesHandWrittenStates) {
  for (Basis b : kBases) {
    for (int bit : {0, 1}) {
      const auto v = testing::oracle_state(b, bit);
      expect_amplitudes(prepare({b, bit}), {v[0], v[1]});
    }
  }
}

TEST(Prepare, MutuallyUnbiased) {
  for (Basis b1 : kBases) {
    for (int x : {0, 1}) {
      for (Basis b2 : kBases) {
        for (int y : {0, 1}) {
          const double f = fidelity(prepare({b1, x}), prepare({b2, y}));
          const double expected = b1 != b2 ? 0.5 : (x == y ? 1.0 : 0.0);
          EXPECT_NEAR(f, expected, kTol);
        }
      }
    }
  }
}

TEST(StateRegister, RejectsBadInput) {
  EXPECT_THROW(StateRegister::from_amplitudes({1.0, 0.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(StateRegister::from_amplitudes({1.0}), std::invalid_argument);
  EXPECT_THROW(StateRegister::from_amplitudes({1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(StateRegister::from_amplitudes({Complex(NAN, 0.0), 0.0}), std::invalid_argument);
  std::vector<Complex> big(32, 0.0);
  big[0] = 1.0;
  EXPECT_THROW(StateRegister::from_amplitudes(big), std::invalid_argument);
  EXPECT_THROW(StateRegister::zero(5), std::length_error);
}

TEST(StateRegister, NormToleranceIsConfigurable) {
  const Complex a(1.0 + 1e-10, 0.0);
  EXPECT_THROW(StateRegister::from_amplitudes({a, 0.0}), std::invalid_argument);
  EXPECT_NO_THROW(StateRegister::from_amplitudes({a, 0.0}, 1e-9));
}

TEST(Measure, EigenstateIsDeterministic) {
  CounterRng rng(1);
  for (int i = 0; i < 100; ++i) {
    const auto out = measure(prepare({Basis::Z, 0}), 0, Basis::Z, rng);
    ASSERT_EQ(out.value, 0);
    ASSERT_EQ(out.post_state, prepare({Basis::Z, 0}));
  }
}

TEST(Measure, OutOfRange) {
  CounterRng rng(1);
  EXPECT_THROW(measure(prepare({Basis::Z, 0}), 1, Basis::Z, rng), std::out_of_range);
}

TEST(Measure, YStateInZIsFair) {
  CounterRng rng(2);
  const int n = 100000;
  int ones = 0;
  for (int i = 0; i < n; ++i) ones += measure(prepare({Basis::Y, 0}), 0, Basis::Z, rng).value;
  EXPECT_NEAR(static_cast<double>(ones) / n, 0.5, testing::three_sigma(0.5, n));
  EXPECT_NEAR(outcome_probability(prepare({Basis::Y, 0}), 0, Basis::Z, 1), 0.5, kTol);
}

TEST(Measure, PlusStateBornFrequency) {
  CounterRng rng(3);
  const int n = 100000;
  int zeros = 0;
  for (int i = 0; i < n; ++i) zeros += measure(prepare({Basis::X, 0}), 0, Basis::Z, rng).value == 0;
  EXPECT_NEAR(static_cast<double>(zeros) / n, 0.5, 0.01);
}

TEST(Measure, RemeasureAfterWrongBasisDisagreesHalfTheTime) {
  CounterRng rng(4);
  const int n = 100000;
  int errors = 0;
  for (int i = 0; i < n; ++i) {
    const auto z = measure(prepare({Basis::Y, 0}), 0, Basis::Z, rng);
    errors += measure(z.post_state, 0, Basis::Y, rng).value != 0;
  }
  EXPECT_NEAR(static_cast<double>(errors) / n, 0.5, testing::three_sigma(0.5, n));
}

TEST(Measure, CollapseIsRepeatable) {
  std::mt19937_64 gen(11);
  CounterRng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = 1 + trial % 4;
    const StateRegister reg = testing::random_register(n, gen);
    const auto q = static_cast<std::size_t>(trial) % n;
    const Basis basis = kBases[trial % 3];
    const auto first = measure(reg, q, basis, rng);
    EXPECT_NEAR(first.post_state.norm_squared(), 1.0, kTol);
    EXPECT_NEAR(outcome_probability(first.post_state, q, basis, first.value), 1.0, kTol);
    const auto second = measure(first.post_state, q, basis, rng);
    EXPECT_EQ(second.value, first.value);
  }
}

TEST(Measure, PartialMeasurementMatchesMarginal) {
  // Bell state (|00> + |11>)/sqrt2: measuring qubit 1 fixes qubit 0.
  const StateRegister bell = StateRegister::from_amplitudes({kRt2, 0.0, 0.0, kRt2});
  CounterRng rng(8);
  for (int i = 0; i < 50; ++i) {
    const auto out = measure(bell, 1, Basis::Z, rng);
    const auto other = measure(out.post_state, 0, Basis::Z, rng);
    EXPECT_EQ(other.value, out.value);
  }
}

TEST(Measure, DeterministicForSameSeed) {
  std::vector<int> a;
  std::vector<int> b;
  CounterRng r1(99);
  CounterRng r2(99);
  for (int i = 0; i < 1000; ++i) {
    a.push_back(measure(prepare({Basis::X, 1}), 0, Basis::Y, r1).value);
    b.push_back(measure(prepare({Basis::X, 1}), 0, Basis::Y, r2).value);
  }
  EXPECT_EQ(a, b);
}

TEST(Hadamard, ZeroToPlus) {
  expect_amplitudes(apply_hadamard(prepare({Basis::Z, 0}), 0), {kRt2, kRt2});
}

TEST(Hadamard, TensorExtension) {
  expect_amplitudes(apply_hadamard(StateRegister::zero(2), 0), {kRt2, 0.0, kRt2, 0.0});
}

TEST(Hadamard, Involution) {
  std::mt19937_64 gen(21);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + t % 4;
    const StateRegister reg = testing::random_register(n, gen);
    const std::size_t q = t % n;
    const StateRegister twice = apply_hadamard(apply_hadamard(reg, q), q);
    EXPECT_NEAR(fidelity(reg, twice), 1.0, kTol);
    EXPECT_NEAR(std::abs(inner_product(reg, twice) - Complex(1.0, 0.0)), 0.0, kTol);
  }
}

TEST(Hadamard, OutOfRange) {
  EXPECT_THROW(apply_hadamard(StateRegister::zero(2), 2), std::out_of_range);
}

TEST(Cswap, ControlSetSwaps) {
  const StateRegister phi = prepare({Basis::X, 1});
  const StateRegister psi = prepare({Basis::Y, 0});
  const StateRegister in = merge({prepare({Basis::Z, 1}), phi, psi});
  const StateRegister expected = merge({prepare({Basis::Z, 1}), psi, phi});
  EXPECT_NEAR(fidelity(apply_cswap(in, 0, 1, 2), expected), 1.0, kTol);
}

TEST(Cswap, ControlClearIsIdentity) {
  const StateRegister in = merge({prepare({Basis::Z, 0}), prepare({Basis::X, 1}),
                                  prepare({Basis::Y, 0})});
  EXPECT_EQ(apply_cswap(in, 0, 1, 2), in);
}

TEST(Cswap, InvolutionOnRandomStates) {
  std::mt19937_64 gen(31);
  for (int t = 0; t < 50; ++t) {
    const StateRegister reg = testing::random_register(3 + t % 2, gen);
    EXPECT_EQ(apply_cswap(apply_cswap(reg, 2, 0, 1), 2, 0, 1), reg);
  }
}

TEST(Cswap, RejectsBadIndices) {
  const StateRegister reg = StateRegister::zero(3);
  EXPECT_THROW(apply_cswap(reg, 0, 0, 1), std::invalid_argument);
  EXPECT_THROW(apply_cswap(reg, 0, 1, 1), std::invalid_argument);
  EXPECT_THROW(apply_cswap(reg, 0, 1, 3), std::out_of_range);
}

// Unitarity: gates preserve inner products between arbitrary pairs.
TEST(Gates, PreserveInnerProducts) {
  std::mt19937_64 gen(41);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 3 + t % 2;
    const StateRegister a = testing::random_register(n, gen);
    const StateRegister b = testing::random_register(n, gen);
    const Complex before = inner_product(a, b);
    const std::size_t q = t % n;
    const Complex after_h = inner_product(apply_hadamard(a, q), apply_hadamard(b, q));
    EXPECT_NEAR(std::abs(before - after_h), 0.0, kTol);
    const std::size_t c = (q + 1) % n;
    const std::size_t x = (q + 2) % n;
    const Complex after_s = inner_product(apply_cswap(a, q, c, x), apply_cswap(b, q, c, x));
    EXPECT_NEAR(std::abs(before - after_s), 0.0, kTol);
    EXPECT_NEAR(apply_hadamard(a, q).norm_squared(), 1.0, kTol);
  }
}

TEST(Merge, BasisStates) {
  expect_amplitudes(merge({prepare({Basis::Z, 0}), prepare({Basis::Z, 1})}), {0.0, 1.0, 0.0, 0.0});
}

TEST(Merge, PlusThenZero) {
  expect_amplitudes(merge({prepare({Basis::X, 0}), prepare({Basis::Z, 0})}),
                    {kRt2, 0.0, kRt2, 0.0});
}

TEST(Merge, NormPreservedAndCapacityEnforced) {
  std::mt19937_64 gen(51);
  const StateRegister a = testing::random_register(2, gen);
  const StateRegister b = testing::random_register(2, gen);
  EXPECT_NEAR(merge({a, b}).norm_squared(), 1.0, kTol);
  EXPECT_THROW(merge({a, b, prepare({Basis::Z, 0})}), std::length_error);
}

const std::vector<std::size_t> kZeroSet{0b000, 0b001, 0b010, 0b100};

TEST(ProjectSubspace, BasisStateInside) {
  CounterRng rng(1);
  const StateRegister reg = StateRegister::zero(3);
  for (int i = 0; i < 100; ++i) {
    const auto out = project_subspace(reg, kZeroSet, rng);
    ASSERT_TRUE(out.hit);
    ASSERT_EQ(out.post_state, reg);
  }
}

TEST(ProjectSubspace, SuperpositionInsideSpan) {
  // |0>|0>|0_y> = (|000> + i|001>)/sqrt2, both terms in the zero span.
  const StateRegister reg =
      merge({prepare({Basis::Z, 0}), prepare({Basis::Z, 0}), prepare({Basis::Y, 0})});
  expect_amplitudes(reg, {kRt2, kRt2 * kI, 0, 0, 0, 0, 0, 0});
  CounterRng rng(2);
  for (int i = 0; i < 100; ++i) {
    const auto out = project_subspace(reg, kZeroSet, rng);
    ASSERT_TRUE(out.hit);
    EXPECT_NEAR(fidelity(out.post_state, reg), 1.0, kTol);
    EXPECT_NEAR(std::abs(inner_product(out.post_state, reg) - Complex(1.0, 0.0)), 0.0, kTol);
  }
}

TEST(ProjectSubspace, GhzSplitsEvenly) {
  const StateRegister ghz = StateRegister::from_amplitudes({kRt2, 0, 0, 0, 0, 0, 0, kRt2});
  CounterRng rng(3);
  const int n = 100000;
  int hits = 0;
  for (int i = 0; i < n; ++i) {
    const auto out = project_subspace(ghz, kZeroSet, rng);
    if (out.hit) {
      ++hits;
      ASSERT_EQ(out.post_state, StateRegister::zero(3));
    }
  }
  EXPECT_NEAR(static_cast<double>(hits) / n, 0.5, testing::three_sigma(0.5, n));
}

TEST(ProjectSubspace, Idempotent) {
  std::mt19937_64 gen(61);
  CounterRng rng(61);
  for (int t = 0; t < 200; ++t) {
    const StateRegister reg = testing::random_register(3, gen);
    const auto first = project_subspace(reg, kZeroSet, rng);
    const auto second = project_subspace(first.post_state, kZeroSet, rng);
    EXPECT_EQ(second.hit, first.hit);
    for (std::size_t i = 0; i < first.post_state.size(); ++i) {
      EXPECT_NEAR(std::abs(second.post_state.amplitude(i) - first.post_state.amplitude(i)), 0.0,
                  kTol);
    }
  }
}

TEST(ProjectSubspace, RejectsBadSets) {
  CounterRng rng(1);
  const StateRegister reg = StateRegister::zero(3);
  EXPECT_THROW(project_subspace(reg, std::vector<std::size_t>{}, rng), std::invalid_argument);
  EXPECT_THROW(project_subspace(reg, std::vector<std::size_t>{8}, rng), std::out_of_range);
}

TEST(Fidelity, Examples) {
  EXPECT_NEAR(fidelity(prepare({Basis::Z, 0}), prepare({Basis::Z, 0})), 1.0, kTol);
  EXPECT_NEAR(fidelity(prepare({Basis::Z, 0}), prepare({Basis::Z, 1})), 0.0, kTol);
  EXPECT_NEAR(fidelity(prepare({Basis::Z, 0}), prepare({Basis::Y, 0})), 0.5, kTol);
  EXPECT_THROW(fidelity(StateRegister::zero(1), StateRegister::zero(2)), std::invalid_argument);
}

TEST(Permute, ReordersQubits) {
  const StateRegister reg = merge({prepare({Basis::Z, 1}), prepare({Basis::Z, 0}),
                                   prepare({Basis::X, 0})});
  const std::size_t order[] = {2, 0, 1};
  const StateRegister expected = merge({prepare({Basis::X, 0}), prepare({Basis::Z, 1}),
                                        prepare({Basis::Z, 0})});
  EXPECT_NEAR(fidelity(permute_qubits(reg, order), expected), 1.0, kTol);
}

TEST(SplitQubit, ProductSplitsEntangledDoesNot) {
  std::mt19937_64 gen(71);
  const StateRegister a = testing::random_register(1, gen);
  const StateRegister b = testing::random_register(2, gen);
  const auto split = try_split_qubit(merge({b, a}), 2);
  ASSERT_TRUE(split.has_value());
  EXPECT_NEAR(fidelity(split->qubit, a), 1.0, kTol);
  EXPECT_NEAR(fidelity(split->rest, b), 1.0, kTol);
  EXPECT_NEAR(fidelity(merge({split->rest, split->qubit}), merge({b, a})), 1.0, kTol);

  const StateRegister bell = StateRegister::from_amplitudes({kRt2, 0.0, 0.0, kRt2});
  EXPECT_FALSE(try_split_qubit(bell, 0).has_value());
  EXPECT_FALSE(try_split_qubit(a, 0).has_value());
}

TEST(QubitFidelity, ReducedStateOverlap) {
  const StateRegister bell = StateRegister::from_amplitudes({kRt2, 0.0, 0.0, kRt2});
  EXPECT_NEAR(qubit_fidelity(bell, 0, prepare({Basis::X, 0})), 0.5, kTol);
  const StateRegister prod = merge({prepare({Basis::Y, 1}), prepare({Basis::Z, 0})});
  EXPECT_NEAR(qubit_fidelity(prod, 0, prepare({Basis::Y, 1})), 1.0, kTol);
}

}  // namespace
}  // namespace qseal
