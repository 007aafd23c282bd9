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

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "qseal/serialization.h"
#include "test_util.h"

namespace qseal {
namespace {

TrialConfig make_config(std::size_t bits, Strategy strategy, std::size_t trials,
                        std::uint64_t seed) {
  TrialConfig config;
  config.message = bits;
  config.strategy = strategy;
  config.trials = trials;
  config.seed = seed;
  return config;
}

// One granted index per block, spread across positions.
std::vector<std::size_t> one_per_block(std::size_t bits) {
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < bits; ++b) out.push_back(3 * b + b % 3);
  return out;
}

TEST(TrialConfig, Validation) {
  TrialConfig config;
  EXPECT_NO_THROW(config.validate());
  config.trials = 0;
  EXPECT_THROW(config.validate(), std::invalid_argument);
  config.trials = 1;
  config.grant = 0.0;
  EXPECT_THROW(config.validate(), std::invalid_argument);
  config.grant = 1.01;
  EXPECT_THROW(config.validate(), std::invalid_argument);
  config.grant = std::vector<std::size_t>{3};
  EXPECT_THROW(config.validate(), std::invalid_argument);
  config.grant = std::vector<std::size_t>{2};
  EXPECT_NO_THROW(config.validate());
  config.message = std::size_t{0};
  EXPECT_THROW(config.validate(), std::invalid_argument);
  EXPECT_THROW(run_trials(config), std::invalid_argument);
}

TEST(TheoreticalRates, Examples) {
  EXPECT_DOUBLE_EQ(predicted_alice_rate(Strategy::SingleQubit, 1), 0.5);
  EXPECT_DOUBLE_EQ(predicted_alice_rate(Strategy::Collective, 20), 0.0);
  EXPECT_DOUBLE_EQ(predicted_alice_rate(Strategy::None, 7), 0.0);
  EXPECT_NEAR(predicted_alice_rate(Strategy::Partial, 2), 5.0 / 9.0, 1e-15);
  EXPECT_NEAR(predicted_bob_rate(Strategy::SingleQubit, 16), 1.0 - std::pow(0.75, 16), 1e-15);
  EXPECT_NEAR(predicted_bob_rate(Strategy::SingleQubit, 16), 0.98998, 1e-5);
}

TEST(TheoreticalRates, PartialTwoBlocksMatchesEnumeration) {
  // Two independent blocks, each enumerated over control position, control
  // state and skipped position: P(no detection) = (1 - d)^2 with d = 1/3.
  double miss_one = 0.0;
  for (int position = 0; position < 3; ++position) {
    for (int skipped = 0; skipped < 3; ++skipped) {
      miss_one += (skipped == position ? 1.0 : 0.5) / 9.0;
    }
  }
  EXPECT_NEAR(1.0 - miss_one * miss_one, 5.0 / 9.0, 1e-15);
  TrialConfig config = make_config(2, Strategy::Partial, 1, 0);
  EXPECT_NEAR(theoretical_rates(config).alice, 5.0 / 9.0, 1e-15);
}

TEST(TheoreticalRates, BobPrediction) {
  TrialConfig config = make_config(4, Strategy::SingleQubit, 1, 0);
  EXPECT_FALSE(theoretical_rates(config).bob.has_value());
  config.grant = std::vector<std::size_t>{0, 1, 2};
  EXPECT_NEAR(*theoretical_rates(config).bob, 0.25, 1e-15);  // the block's control is granted
  config.grant = one_per_block(4);
  EXPECT_NEAR(*theoretical_rates(config).bob, 1.0 - std::pow(1.0 - 1.0 / 12.0, 4), 1e-15);
  config.strategy = Strategy::Collective;
  EXPECT_EQ(*theoretical_rates(config).bob, 0.0);
}

TEST(Wilson, ContainsPointEstimate) {
  for (std::size_t n : {1u, 10u, 1000u}) {
    for (std::size_t k = 0; k <= n; k += std::max<std::size_t>(1, n / 7)) {
      const Interval ci = wilson_interval(k, n);
      const double p = static_cast<double>(k) / static_cast<double>(n);
      EXPECT_LE(ci.low, p);
      EXPECT_GE(ci.high, p);
      EXPECT_GE(ci.low, 0.0);
      EXPECT_LE(ci.high, 1.0);
    }
  }
  const Interval ci = wilson_interval(50, 100);
  EXPECT_NEAR(ci.low, 0.4038, 1e-4);
  EXPECT_NEAR(ci.high, 0.5962, 1e-4);
}

TEST(RunTrials, NoAttackNoDetection) {
  for (std::size_t bits : {1u, 5u, 32u}) {
    const TrialReport r = run_trials(make_config(bits, Strategy::None, 2000, bits));
    EXPECT_EQ(r.aggregates.alice_detection_rate, 0.0);
    EXPECT_EQ(r.aggregates.bob_detection_rate, 0.0);
    EXPECT_EQ(r.aggregates.messages_recovered, 2000u);
  }
}

TEST(RunTrials, CollectiveAttackUndetected) {
  const TrialReport r = run_trials(make_config(20, Strategy::Collective, 2000, 3));
  EXPECT_EQ(r.aggregates.alice_detections, 0u);
  EXPECT_EQ(r.aggregates.bob_detections, 0u);
  EXPECT_EQ(r.aggregates.messages_recovered, 2000u);
  EXPECT_LT(r.aggregates.max_disturbance, 1e-12);
}

TEST(RunTrials, ParallelMatchesSerial) {
  TrialConfig config = make_config(6, Strategy::Partial, 3000, 77);
  const TrialReport serial = run_trials(config, 1);
  const TrialReport parallel = run_trials(config, 4);
  EXPECT_EQ(report_to_json(serial, true).dump(), report_to_json(parallel, true).dump());
  const TrialRecord lone = run_trial(config, 1234);
  EXPECT_EQ(lone.alice_mismatches, serial.per_trial[1234].alice_mismatches);
  EXPECT_EQ(lone.bob_failures, serial.per_trial[1234].bob_failures);
}

TEST(RunTrials, SeedChangesOutcome) {
  const TrialReport a = run_trials(make_config(3, Strategy::SingleQubit, 500, 1));
  const TrialReport b = run_trials(make_config(3, Strategy::SingleQubit, 500, 2));
  EXPECT_NE(report_to_json(a, true).dump(), report_to_json(b, true).dump());
}

TEST(RunTrials, FixedMessageIsUsed) {
  TrialConfig config = make_config(1, Strategy::SingleQubit, 200, 4);
  config.message = std::vector<int>{1, 0, 1};
  const TrialReport r = run_trials(config);
  EXPECT_EQ(r.aggregates.messages_recovered, 200u);
  EXPECT_EQ(r.config.num_bits(), 3u);
}

TEST(RunTrials, AliceRateMonotoneInLength) {
  double previous = -1.0;
  for (std::size_t k : {1u, 2u, 4u, 8u, 16u}) {
    const TrialReport r = run_trials(make_config(k, Strategy::SingleQubit, 4000, 10 + k), 2);
    EXPECT_GE(r.aggregates.alice_detection_rate, previous) << "k=" << k;
    previous = r.aggregates.alice_detection_rate;
  }
}

// Empirical rates land in the 3-sigma binomial band of the prediction for
// every strategy and message length.
TEST(RunTrials, EmpiricalMatchesTheory) {
  const std::size_t n = 100000;
  for (Strategy s : {Strategy::None, Strategy::SingleQubit, Strategy::Partial,
                     Strategy::Collective}) {
    for (std::size_t k : {1u, 4u, 20u}) {
      TrialConfig config = make_config(k, s, n, 1000 + k);
      config.grant = one_per_block(k);
      const TrialReport r = run_trials(config, 0);
      const RatePrediction p = r.aggregates.predicted;
      ASSERT_TRUE(p.bob.has_value());
      const double alice_band = testing::three_sigma(p.alice, n);
      const double bob_band = testing::three_sigma(*p.bob, n);
      EXPECT_NEAR(r.aggregates.alice_detection_rate, p.alice, alice_band)
          << strategy_name(s) << " k=" << k;
      EXPECT_NEAR(r.aggregates.bob_detection_rate, *p.bob, bob_band)
          << strategy_name(s) << " k=" << k;
      EXPECT_EQ(r.aggregates.messages_recovered, n);
    }
  }
}

TEST(FormatTable, ShowsRatesAndPredictions) {
  TrialConfig config = make_config(2, Strategy::SingleQubit, 100, 1);
  const std::string table = format_table(run_trials(config));
  EXPECT_NE(table.find("single-qubit"), std::string::npos);
  EXPECT_NE(table.find("alice"), std::string::npos);
  EXPECT_NE(table.find("0.750000"), std::string::npos);
  EXPECT_NE(table.find("n/a"), std::string::npos);
}

}  // namespace
}  // namespace qseal
