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

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace grainledger::qa
{
/// Four-parameter logistic standard curve:
///   response(c) = saturation + (blank - saturation) / (1 + (c / inflection)^slope)
struct LogisticCurve
{
    double blank = 0;       // response at zero concentration
    double saturation = 0;  // response as concentration grows without bound
    double inflection = 1;  // concentration at the midpoint response
    double slope = 1;       // Hill slope, > 0

    bool operator==(const LogisticCurve&) const = default;
};

/// Per-batch strip calibration as printed on the strip's 2-D code.
struct StripLot
{
    std::string strip_lot_id;
    std::string analyte;
    LogisticCurve curve;
    double c_min = 0;
    double c_max = 0;

    bool operator==(const StripLot&) const = default;
};

struct StripReading
{
    std::string strip_lot_id;
    double raw_response = 0;
    std::int64_t read_at = 0;
    bool clamped = false;  // raw signal was outside [min(a,d), max(a,d)]
};

enum class QuantFlag
{
    in_range,
    below_range,        // response at or beyond the blank response
    above_range,        // response at or beyond the saturation response
    below_valid_range,  // clamped up to c_min
    above_valid_range,  // clamped down to c_max
};

std::string_view to_string(QuantFlag flag);

struct Quantification
{
    double concentration = 0;
    QuantFlag flag = QuantFlag::in_range;
};

/// Throws Error(BadCurve) unless blank != saturation, slope > 0, inflection > 0
/// and 0 <= c_min < c_max.
void validate_strip_lot(const StripLot& lot);

/// Requires concentration >= 0. response(0) is the blank response.
double curve_response(const LogisticCurve& curve, double concentration);

/// Closed-form inverse of the curve, clamped to the lot's valid range.
/// Throws Error(DegenerateCurve) when blank == saturation.
Quantification quantify(const StripLot& lot, const StripReading& reading);
Quantification quantify(const LogisticCurve& curve, double response, double c_min, double c_max);

/// CRC-16/CCITT-FALSE: poly 0x1021, init 0xFFFF, no reflection, no final xor.
std::uint16_t crc16_ccitt_false(std::string_view data);

/// `GQ1|<lot>|<analyte>|a|d|c0|b|cmin|cmax|<crc16 hex>`; the CRC covers
/// everything before the final '|'.
std::string encode_curve_barcode(const StripLot& lot);
/// Throws BadFormat, BadChecksum, or BadCurve.
StripLot decode_curve_barcode(std::string_view barcode);

/// Simulated strip reader: response = curve(c) + N(0, noise_sd), seeded.
class StripReaderSimulator
{
public:
    StripReaderSimulator(std::string device_id, double noise_sd, std::uint64_t seed)
      : m_device_id(std::move(device_id)), m_noise_sd(noise_sd), m_rng(seed)
    {}

    const std::string& device_id() const { return m_device_id; }
    StripReading read(const StripLot& lot, double true_concentration, std::int64_t read_at);

private:
    std::string m_device_id;
    double m_noise_sd;
    std::mt19937_64 m_rng;
};

}  // namespace grainledger::qa
