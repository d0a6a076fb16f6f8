/**
 *  Copyright (C) 2026 GrainLedger contributors.
 *  SPDX-License-Identifier: Apache-2.0
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */
#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace grainledger::qa
{
/// Parts of ground sample to parts of water.
struct DilutionRatio
{
    double sample = 1;
    double water = 5;
};

struct SamplePrep
{
    double sieve_pass_fraction = 0;  // fraction through a 20-mesh sieve
    DilutionRatio dilution;
    double extract_volume_ml = 0;
    std::int64_t incubation_s = 0;
};

enum class PrepViolation
{
    sieve_fraction,   // outside [0.60, 0.70]
    dilution_ratio,   // not 1:5
    extract_volume,   // not 12 ml
    incubation_time,  // under 300 s
    non_positive,     // some field is zero or negative
};

std::string_view to_string(PrepViolation v);

/// Every violated condition, in the order listed in PrepViolation; empty when ok.
std::vector<PrepViolation> validate_prep(const SamplePrep& prep);

struct DeviceProfile
{
    std::string device_id;
    double bias = 0;
    double noise_sd = 0;
    std::uint64_t seed = 0;

    nlohmann::json to_document() const;
    static DeviceProfile from_document(const nlohmann::json& doc);
};

struct MoistureReading
{
    std::string device_id;
    std::uint64_t seed = 0;
    std::uint64_t sequence = 0;  // index of this reading in the device's stream
    double moisture_percent = 0;

    nlohmann::json to_document() const;
};

/// Simulated moisture analyzer: reading = true + bias + N(0, noise_sd).
/// One instance per logical device; the seeded stream makes runs replayable.
class MoistureAnalyzer
{
public:
    explicit MoistureAnalyzer(DeviceProfile profile)
      : m_profile(std::move(profile)), m_rng(m_profile.seed)
    {}

    const DeviceProfile& profile() const { return m_profile; }
    /// Throws Error(OutOfRange) unless true_moisture is in [0, 40] %.
    MoistureReading read(double true_moisture);

private:
    DeviceProfile m_profile;
    std::mt19937_64 m_rng;
    std::uint64_t m_sequence = 0;
};

}  // namespace grainledger::qa
