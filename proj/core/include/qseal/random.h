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

#ifndef QSEAL_RANDOM_H_
#define QSEAL_RANDOM_H_

#include <cstdint>
#include <limits>

namespace qseal {

// Counter-based random stream. Every draw is a pure function of
// (key, counter), so a stream can be split into independent children
// by index without any shared state. Two streams built from the same
// seed and split path produce identical sequences on every platform.
//
// Satisfies UniformRandomBitGenerator, but the protocol code only uses
// uniform01() and uniform_below(), which are defined here rather than
// through <random> distributions so results do not depend on the
// standard library implementation.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return next(); }
  std::uint64_t next();

  // Uniform double in [0, 1) with 53 bits of precision.
  double uniform01();

  // Uniform integer in [0, bound). bound must be nonzero.
  std::uint64_t uniform_below(std::uint64_t bound);

  // Child stream keyed by (this stream's key, stream_id). Does not
  // advance this stream.
  CounterRng split(std::uint64_t stream_id) const;

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  CounterRng(std::uint64_t key, std::uint64_t counter) : key_(key), counter_(counter) {}

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

}  // namespace qseal

#endif  // QSEAL_RANDOM_H_
