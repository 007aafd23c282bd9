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

#ifndef QSEAL_MONTECARLO_H_
#define QSEAL_MONTECARLO_H_

// Repeated encode -> attack -> verify pipelines under seeded randomness.
//
// Trial i draws from CounterRng(seed).split(i), and each pipeline stage
// from a fixed child of that stream (see Phase). Results are therefore a
// function of (config, i) alone: serial and parallel runs agree bit for
// bit, and the command-line tool reproduces trial i of a run by using the
// same phase streams.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qseal/adversary.h"
#include "qseal/protocol.h"
#include "qseal/random.h"

namespace qseal {

enum class Phase : std::uint64_t {
  kMessage = 0,
  kEncode = 1,
  kAttack = 2,
  kGrant = 3,
  kAlice = 4,
  kBob = 5,
};

CounterRng phase_stream(std::uint64_t seed, std::uint64_t trial, Phase phase);

struct TrialConfig {
  // Random message of this many bits per trial, or a fixed bit list.
  std::variant<std::size_t, std::vector<int>> message = std::size_t{1};
  Strategy strategy = Strategy::None;
  // Sampling fraction for a fresh grant per trial, or fixed indices.
  std::variant<double, std::vector<std::size_t>> grant = kDefaultGrantFraction;
  std::size_t trials = 1;
  std::uint64_t seed = 0;

  std::size_t num_bits() const;
  // Throws std::invalid_argument on trials == 0, a fraction outside (0, 1],
  // an empty message, or grant indices past the seal.
  void validate() const;
};

struct TrialRecord {
  bool message_ok = true;
  std::size_t alice_mismatches = 0;
  Verdict alice_verdict = Verdict::Intact;
  std::size_t bob_failures = 0;
  Verdict bob_verdict = Verdict::Intact;
  std::size_t grant_size = 0;
  std::size_t control_copies = 0;
  double disturbance = 0.0;  // collective attack only
};

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

// Wilson score interval for `successes` out of `trials`.
Interval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

struct RatePrediction {
  double alice = 0.0;
  std::optional<double> bob;  // empty for sampled grants: no closed form
};

struct Aggregates {
  std::size_t trials = 0;
  std::size_t messages_recovered = 0;
  std::size_t alice_detections = 0;
  std::size_t bob_detections = 0;
  double alice_detection_rate = 0.0;
  double bob_detection_rate = 0.0;
  Interval alice_interval;
  Interval bob_interval;
  double mean_control_copies = 0.0;
  double max_disturbance = 0.0;
  RatePrediction predicted;
};

struct TrialReport {
  TrialConfig config;
  Aggregates aggregates;
  std::vector<TrialRecord> per_trial;
};

// Runs one trial of `config`. Pure given (config, trial).
TrialRecord run_trial(const TrialConfig& config, std::uint64_t trial);

// Runs all trials on `threads` workers (0 = hardware concurrency).
TrialReport run_trials(const TrialConfig& config, std::size_t threads = 1);

// Per-block probability that Alice finds a mismatch after the attack.
double block_alice_detection(Strategy strategy);
// Probability that one SWAP test of a control-qubit copy fails after the
// attack.
double control_copy_failure(Strategy strategy);

// Closed-form detection predictions:
//   alice: 1 - (1 - d)^k with d = block_alice_detection (1/2, 1/3, 0, 0)
//   bob:   1 - prod_b (1 - m_b * f / 3) over blocks b holding m_b granted
//          qubits, f = control_copy_failure (1/4, 1/6, 0, 0). When the
//          grant holds c control copies in distinct blocks with positions
//          known, this is 1 - (1 - f)^c.
RatePrediction theoretical_rates(const TrialConfig& config);
double predicted_alice_rate(Strategy strategy, std::size_t num_bits);
double predicted_bob_rate(Strategy strategy, std::size_t control_copies);

// Fixed-width table for terminals.
std::string format_table(const TrialReport& report);

}  // namespace qseal

#endif  // QSEAL_MONTECARLO_H_
