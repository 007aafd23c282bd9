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

#ifndef QSEAL_SERIALIZATION_H_
#define QSEAL_SERIALIZATION_H_

// JSON documents exchanged between protocol roles.
//
//   public seal   {version, reading_basis, num_bits, memory}
//   seal record   {version, reading_basis, num_bits, blocks}
//   grant         {version, reader_id, entries: [{index, amplitudes}]}
//   trial report  {config, aggregates, per_trial?}
//
// `memory` is an array of {qubit_indices, amplitudes}; a null qubit index
// marks a foreign qubit left entangled with the seal. Amplitudes are
// [re, im] pairs written in shortest round-trip form, so a load returns
// the stored doubles bit for bit. The public document never carries
// preparation bases or bits.

#include <cstddef>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>

#include "qseal/memory.h"
#include "qseal/montecarlo.h"
#include "qseal/protocol.h"

namespace qseal {

inline constexpr int kFormatVersion = 1;

// Loaded amplitudes may deviate from unit norm by at most this much.
inline constexpr double kLoadNormTolerance = 1e-9;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PublicSeal {
  Basis reading_basis = Basis::Z;
  std::size_t num_bits = 0;
  QuantumMemory memory;
};

nlohmann::json amplitudes_to_json(const StateRegister& reg);
StateRegister amplitudes_from_json(const nlohmann::json& j);

nlohmann::json public_seal_to_json(Basis reading_basis, std::size_t num_bits,
                                   const QuantumMemory& memory);
PublicSeal public_seal_from_json(const nlohmann::json& j);

nlohmann::json record_to_json(const SealedMessage& sealed);
SealedMessage record_from_json(const nlohmann::json& j);

nlohmann::json grant_to_json(const SubsetGrant& grant);
SubsetGrant grant_from_json(const nlohmann::json& j);

nlohmann::json trial_config_to_json(const TrialConfig& config);
// Accepts {message: int | "0110", strategy, grant: {fraction} | {indices},
// trials, seed}; missing fields take TrialConfig defaults.
TrialConfig trial_config_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const TrialReport& report, bool include_per_trial);

}  // namespace qseal

#endif  // QSEAL_SERIALIZATION_H_
