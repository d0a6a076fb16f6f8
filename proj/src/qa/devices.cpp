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
#include "grainledger/qa/devices.hpp"
#include "grainledger/common/error.hpp"

#include <cmath>

namespace grainledger::qa
{
std::string_view to_string(PrepViolation v)
{
    switch (v)
    {
    case PrepViolation::sieve_fraction: return "sieve fraction outside 0.60-0.70";
    case PrepViolation::dilution_ratio: return "dilution is not 1:5";
    case PrepViolation::extract_volume: return "extract volume is not 12 ml";
    case PrepViolation::incubation_time: return "incubation shorter than 300 s";
    case PrepViolation::non_positive: return "all preparation fields must be positive";
    }
    return "unknown";
}

std::vector<PrepViolation> validate_prep(const SamplePrep& p)
{
    std::vector<PrepViolation> out;
    if (!(p.sieve_pass_fraction >= 0.60 && p.sieve_pass_fraction <= 0.70))
        out.push_back(PrepViolation::sieve_fraction);
    if (!(p.dilution.sample > 0) || p.dilution.sample * 5 != p.dilution.water)
        out.push_back(PrepViolation::dilution_ratio);
    if (p.extract_volume_ml != 12.0)
        out.push_back(PrepViolation::extract_volume);
    if (p.incubation_s < 300)
        out.push_back(PrepViolation::incubation_time);
    if (!(p.sieve_pass_fraction > 0) || !(p.dilution.sample > 0) || !(p.dilution.water > 0) ||
        !(p.extract_volume_ml > 0) || p.incubation_s <= 0)
        out.push_back(PrepViolation::non_positive);
    return out;
}

nlohmann::json DeviceProfile::to_document() const
{
    return {{"bias", bias}, {"device_id", device_id}, {"noise_sd", noise_sd}, {"seed", seed}};
}

DeviceProfile DeviceProfile::from_document(const nlohmann::json& doc)
{
    try
    {
        DeviceProfile p;
        p.device_id = doc.at("device_id").get<std::string>();
        p.bias = doc.at("bias").get<double>();
        p.noise_sd = doc.at("noise_sd").get<double>();
        p.seed = doc.at("seed").get<std::uint64_t>();
        if (!(p.noise_sd >= 0))
            fail(ErrorCode::BadConfig, "noise_sd must be non-negative");
        return p;
    }
    catch (const nlohmann::json::exception& e)
    {
        fail(ErrorCode::BadConfig, std::string("device profile: ") + e.what());
    }
}

nlohmann::json MoistureReading::to_document() const
{
    return {{"device_id", device_id}, {"moisture_percent", moisture_percent}, {"seed", seed},
        {"sequence", sequence}};
}

MoistureReading MoistureAnalyzer::read(double true_moisture)
{
    if (!(true_moisture >= 0 && true_moisture <= 40))
        fail(ErrorCode::OutOfRange, "moisture must be within [0, 40] %");
    double value = true_moisture + m_profile.bias;
    if (m_profile.noise_sd > 0)
        value += std::normal_distribution<double>(0.0, m_profile.noise_sd)(m_rng);
    return {m_profile.device_id, m_profile.seed, m_sequence++, value};
}

}  // namespace grainledger::qa
