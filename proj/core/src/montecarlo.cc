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

#include "qseal/montecarlo.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace qseal {

CounterRng phase_stream(std::uint64_t seed, std::uint64_t trial, Phase phase) {
  return CounterRng(seed).split(trial).split(static_cast<std::uint64_t>(phase));
}

std::size_t TrialConfig::num_bits() const {
  if (const auto* count = std::get_if<std::size_t>(&message)) return *count;
  return std::get<std::vector<int>>(message).size();
}

void TrialConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (num_bits() == 0) throw std::invalid_argument("message must have at least one bit");
  if (const auto* bits = std::get_if<std::vector<int>>(&message)) {
    for (int b : *bits) {
      if (b != 0 && b != 1) throw std::invalid_argument("message bits must be 0 or 1");
    }
  }
  if (const auto* fraction = std::get_if<double>(&grant)) {
    if (!(*fraction > 0.0 && *fraction <= 1.0)) {
      throw std::invalid_argument("grant fraction must be in (0, 1]");
    }
  } else {
    const auto& indices = std::get<std::vector<std::size_t>>(grant);
    if (indices.empty()) throw std::invalid_argument("grant index list is empty");
    for (std::size_t index : indices) {
      if (index >= num_bits() * kQubitsPerBit) {
        throw std::invalid_argument("grant index " + std::to_string(index) + " past the seal");
      }
    }
  }
}

TrialRecord run_trial(const TrialConfig& config, std::uint64_t trial) {
  std::vector<int> bits;
  if (const auto* fixed = std::get_if<std::vector<int>>(&config.message)) {
    bits = *fixed;
  } else {
    CounterRng rng = phase_stream(config.seed, trial, Phase::kMessage);
    bits.resize(config.num_bits());
    for (int& b : bits) b = static_cast<int>(rng.uniform_below(2));
  }

  CounterRng encode_rng = phase_stream(config.seed, trial, Phase::kEncode);
  Seal seal = encode(bits, encode_rng);

  TrialRecord record;
  CounterRng attack_rng = phase_stream(config.seed, trial, Phase::kAttack);
  const AttackOutcome attack = run_attack(config.strategy, seal.memory, attack_rng);
  record.message_ok = config.strategy == Strategy::None || attack.recovered_bits == bits;
  record.disturbance = attack.max_disturbance.value_or(0.0);

  std::vector<std::size_t> indices;
  if (const auto* fixed = std::get_if<std::vector<std::size_t>>(&config.grant)) {
    indices = *fixed;
  } else {
    CounterRng grant_rng = phase_stream(config.seed, trial, Phase::kGrant);
    indices = sample_grant_indices(seal.record, std::get<double>(config.grant), grant_rng);
  }
  const SubsetGrant grant = grant_subset(seal.record, "reader", indices);
  record.grant_size = indices.size();
  for (std::size_t index : indices) record.control_copies += seal.record.is_control(index) ? 1 : 0;

  // Alice and Bob each check their own copy of the post-attack memory.
  QuantumMemory alice_memory = seal.memory;
  CounterRng alice_rng = phase_stream(config.seed, trial, Phase::kAlice);
  const VerificationReport alice = alice_verify(alice_memory, seal.record, alice_rng);
  record.alice_mismatches = alice.mismatches;
  record.alice_verdict = alice.verdict;

  CounterRng bob_rng = phase_stream(config.seed, trial, Phase::kBob);
  const VerificationReport bob = bob_verify(grant, seal.memory, bob_rng);
  record.bob_failures = bob.mismatches;
  record.bob_verdict = bob.verdict;
  return record;
}

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, std::min(p, center - half)), std::min(1.0, std::max(p, center + half))};
}

TrialReport run_trials(const TrialConfig& config, std::size_t threads) {
  config.validate();
  TrialReport report;
  report.config = config;
  report.per_trial.resize(config.trials);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, config.trials);
  if (threads <= 1) {
    for (std::size_t i = 0; i < config.trials; ++i) report.per_trial[i] = run_trial(config, i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    {
      std::vector<std::jthread> workers;
      for (std::size_t w = 0; w < threads; ++w) {
        workers.emplace_back([&, w] {
          try {
            for (std::size_t i = next++; i < config.trials; i = next++) {
              report.per_trial[i] = run_trial(config, i);
            }
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  Aggregates& agg = report.aggregates;
  agg.trials = config.trials;
  std::size_t control_total = 0;
  for (const TrialRecord& r : report.per_trial) {
    agg.messages_recovered += r.message_ok ? 1 : 0;
    agg.alice_detections += r.alice_verdict == Verdict::Broken ? 1 : 0;
    agg.bob_detections += r.bob_verdict == Verdict::Broken ? 1 : 0;
    control_total += r.control_copies;
    agg.max_disturbance = std::max(agg.max_disturbance, r.disturbance);
  }
  const double n = static_cast<double>(config.trials);
  agg.alice_detection_rate = static_cast<double>(agg.alice_detections) / n;
  agg.bob_detection_rate = static_cast<double>(agg.bob_detections) / n;
  agg.alice_interval = wilson_interval(agg.alice_detections, config.trials);
  agg.bob_interval = wilson_interval(agg.bob_detections, config.trials);
  agg.mean_control_copies = static_cast<double>(control_total) / n;
  agg.predicted = theoretical_rates(config);
  return report;
}

double block_alice_detection(Strategy strategy) {
  switch (strategy) {
    case Strategy::SingleQubit:
      return 0.5;
    case Strategy::Partial:
      // Control among the two measured positions (2/3), then a preparation
      // basis mismatch (1/2). The third read only ever hits a message qubit.
      return 1.0 / 3.0;
    case Strategy::None:
    case Strategy::Collective:
      return 0.0;
  }
  throw std::invalid_argument("unknown strategy");
}

double control_copy_failure(Strategy strategy) {
  switch (strategy) {
    case Strategy::SingleQubit:
      return 0.25;
    case Strategy::Partial:
      return 2.0 / 3.0 * 0.25;
    case Strategy::None:
    case Strategy::Collective:
      return 0.0;
  }
  throw std::invalid_argument("unknown strategy");
}

double predicted_alice_rate(Strategy strategy, std::size_t num_bits) {
  return 1.0 - std::pow(1.0 - block_alice_detection(strategy), static_cast<double>(num_bits));
}

double predicted_bob_rate(Strategy strategy, std::size_t control_copies) {
  return 1.0 - std::pow(1.0 - control_copy_failure(strategy), static_cast<double>(control_copies));
}

RatePrediction theoretical_rates(const TrialConfig& config) {
  config.validate();
  RatePrediction out;
  out.alice = predicted_alice_rate(config.strategy, config.num_bits());
  if (const auto* indices = std::get_if<std::vector<std::size_t>>(&config.grant)) {
    std::vector<std::size_t> per_block(config.num_bits(), 0);
    for (std::size_t index : *indices) ++per_block[index / kQubitsPerBit];
    const double f = control_copy_failure(config.strategy);
    double pass = 1.0;
    for (std::size_t m : per_block) pass *= 1.0 - static_cast<double>(m) * f / 3.0;
    out.bob = 1.0 - pass;
  }
  return out;
}

namespace {

std::string fixed(double value, int precision = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, value);
  return buf;
}

}  // namespace

std::string format_table(const TrialReport& report) {
  const Aggregates& a = report.aggregates;
  std::ostringstream out;
  char line[160];
  out << "strategy: " << strategy_name(report.config.strategy)
      << "  bits: " << report.config.num_bits() << "  trials: " << a.trials
      << "  seed: " << report.config.seed << "\n";
  std::snprintf(line, sizeof line, "%-10s %10s %10s %23s %10s\n", "verifier", "detected", "rate",
                "wilson95", "predicted");
  out << line;
  auto row = [&](const char* who, std::size_t hits, double rate, Interval ci,
                 std::optional<double> predicted) {
    const std::string interval = "[" + fixed(ci.low) + ", " + fixed(ci.high) + "]";
    std::snprintf(line, sizeof line, "%-10s %10zu %10s %23s %10s\n", who, hits,
                  fixed(rate).c_str(), interval.c_str(),
                  predicted ? fixed(*predicted).c_str() : "n/a");
    out << line;
  };
  row("alice", a.alice_detections, a.alice_detection_rate, a.alice_interval, a.predicted.alice);
  row("bob", a.bob_detections, a.bob_detection_rate, a.bob_interval, a.predicted.bob);
  out << "messages recovered: " << a.messages_recovered << "/" << a.trials
      << "  mean control copies: " << fixed(a.mean_control_copies, 3) << "\n";
  return out.str();
}

}  // namespace qseal
