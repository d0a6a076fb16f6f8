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
#include "grainledger/qa/strip.hpp"
#include "grainledger/common/error.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <vector>

namespace grainledger::qa
{
namespace
{
std::string format_number(double v)
{
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

double parse_number(std::string_view s)
{
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        fail(ErrorCode::BadFormat, "not a number: '" + std::string(s) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true)
    {
        auto pos = s.find(sep, start);
        if (pos == std::string_view::npos)
        {
            parts.push_back(s.substr(start));
            return parts;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

}  // namespace

std::string_view to_string(QuantFlag flag)
{
    switch (flag)
    {
    case QuantFlag::in_range: return "in_range";
    case QuantFlag::below_range: return "below_range";
    case QuantFlag::above_range: return "above_range";
    case QuantFlag::below_valid_range: return "below_valid_range";
    case QuantFlag::above_valid_range: return "above_valid_range";
    }
    return "unknown";
}

void validate_strip_lot(const StripLot& lot)
{
    const auto& c = lot.curve;
    auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(c.blank) || !finite(c.saturation) || !finite(c.inflection) || !finite(c.slope) ||
        !finite(lot.c_min) || !finite(lot.c_max))
        fail(ErrorCode::BadCurve, "non-finite curve parameter");
    if (c.blank == c.saturation)
        fail(ErrorCode::BadCurve, "blank and saturation responses are equal");
    if (!(c.slope > 0))
        fail(ErrorCode::BadCurve, "slope must be positive");
    if (!(c.inflection > 0))
        fail(ErrorCode::BadCurve, "inflection concentration must be positive");
    if (!(lot.c_min >= 0 && lot.c_min < lot.c_max))
        fail(ErrorCode::BadCurve, "valid range must satisfy 0 <= c_min < c_max");
}

double curve_response(const LogisticCurve& curve, double concentration)
{
    if (!(concentration >= 0))
        fail(ErrorCode::InvalidArgument, "concentration must be non-negative");
    if (concentration == 0)
        return curve.blank;
    double ratio = std::pow(concentration / curve.inflection, curve.slope);
    if (std::isinf(ratio))
        return curve.saturation;
    return curve.saturation + (curve.blank - curve.saturation) / (1.0 + ratio);
}

Quantification quantify(const LogisticCurve& curve, double response, double c_min, double c_max)
{
    const double a = curve.blank;
    const double d = curve.saturation;
    if (a == d)
        fail(ErrorCode::DegenerateCurve, "blank and saturation responses are equal");
    // Position along the blank -> saturation axis; 0 at blank, 1 at saturation.
    bool increasing = d > a;
    if (increasing ? response <= a : response >= a)
        return {0.0, QuantFlag::below_range};
    if (increasing ? response >= d : response <= d)
        return {c_max, QuantFlag::above_range};
    // (a - d)/(y - d) - 1 == (a - y)/(y - d), the better-conditioned form.
    double odds = (a - response) / (response - d);
    double c = curve.inflection * std::pow(odds, 1.0 / curve.slope);
    if (c < c_min)
        return {c_min, QuantFlag::below_valid_range};
    if (c > c_max)
        return {c_max, QuantFlag::above_valid_range};
    return {c, QuantFlag::in_range};
}

Quantification quantify(const StripLot& lot, const StripReading& reading)
{
    if (reading.strip_lot_id != lot.strip_lot_id)
        fail(ErrorCode::InvalidArgument,
            "reading is for lot " + reading.strip_lot_id + ", not " + lot.strip_lot_id);
    return quantify(lot.curve, reading.raw_response, lot.c_min, lot.c_max);
}

std::uint16_t crc16_ccitt_false(std::string_view data)
{
    std::uint16_t crc = 0xFFFF;
    for (unsigned char byte : data)
    {
        crc ^= static_cast<std::uint16_t>(byte) << 8;
        for (int bit = 0; bit < 8; ++bit)
            crc = (crc & 0x8000) ? static_cast<std::uint16_t>((crc << 1) ^ 0x1021)
                                 : static_cast<std::uint16_t>(crc << 1);
    }
    return crc;
}

std::string encode_curve_barcode(const StripLot& lot)
{
    validate_strip_lot(lot);
    for (std::string_view text : {std::string_view(lot.strip_lot_id), std::string_view(lot.analyte)})
        if (text.empty() || text.find('|') != std::string_view::npos)
            fail(ErrorCode::BadFormat, "lot id and analyte must be non-empty and free of '|'");
    std::string payload = "GQ1|" + lot.strip_lot_id + "|" + lot.analyte;
    for (double v : {lot.curve.blank, lot.curve.saturation, lot.curve.inflection, lot.curve.slope,
             lot.c_min, lot.c_max})
        payload += "|" + format_number(v);
    char crc[8];
    std::snprintf(crc, sizeof(crc), "%04X", crc16_ccitt_false(payload));
    return payload + "|" + crc;
}

StripLot decode_curve_barcode(std::string_view barcode)
{
    auto last = barcode.rfind('|');
    if (last == std::string_view::npos)
        fail(ErrorCode::BadFormat, "missing checksum field");
    std::string_view payload = barcode.substr(0, last);
    std::string_view crc_text = barcode.substr(last + 1);
    if (crc_text.size() != 4 || !std::all_of(crc_text.begin(), crc_text.end(), [](char c) {
            return std::isxdigit(static_cast<unsigned char>(c)) != 0;
        }))
        fail(ErrorCode::BadFormat, "checksum must be 4 hex digits");
    unsigned crc = 0;
    std::from_chars(crc_text.data(), crc_text.data() + crc_text.size(), crc, 16);
    if (crc != crc16_ccitt_false(payload))
        fail(ErrorCode::BadChecksum, "checksum mismatch");

    auto fields = split(payload, '|');
    if (fields.size() != 9 || fields[0] != "GQ1")
        fail(ErrorCode::BadFormat, "expected GQ1 with 8 payload fields");
    if (fields[1].empty() || fields[2].empty())
        fail(ErrorCode::BadFormat, "empty lot id or analyte");
    StripLot lot;
    lot.strip_lot_id = std::string(fields[1]);
    lot.analyte = std::string(fields[2]);
    lot.curve.blank = parse_number(fields[3]);
    lot.curve.saturation = parse_number(fields[4]);
    lot.curve.inflection = parse_number(fields[5]);
    lot.curve.slope = parse_number(fields[6]);
    lot.c_min = parse_number(fields[7]);
    lot.c_max = parse_number(fields[8]);
    validate_strip_lot(lot);
    return lot;
}

StripReading StripReaderSimulator::read(const StripLot& lot, double true_concentration, std::int64_t read_at)
{
    double y = curve_response(lot.curve, true_concentration);
    if (m_noise_sd > 0)
        y += std::normal_distribution<double>(0.0, m_noise_sd)(m_rng);
    double lo = std::min(lot.curve.blank, lot.curve.saturation);
    double hi = std::max(lot.curve.blank, lot.curve.saturation);
    StripReading r{lot.strip_lot_id, std::clamp(y, lo, hi), read_at, false};
    r.clamped = r.raw_response != y;
    return r;
}

}  // namespace grainledger::qa
