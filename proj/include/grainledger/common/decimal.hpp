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

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace grainledger
{
/// Exact base-10 number: coefficient * 10^-scale.
///
/// Addition, subtraction and multiplication are exact; rounding happens only
/// when requested (contracts round half-even to four fractional digits at
/// write time). Values cross JSON documents as numbers whose shortest
/// round-trip rendering is the exact decimal text.
class Decimal
{
public:
    static constexpr int kLedgerDigits = 4;

    constexpr Decimal() = default;
    constexpr Decimal(std::int64_t units) : m_coef(units) {}  // NOLINT(implicit)

    static Decimal parse(std::string_view text);
    static Decimal from_double(double value);
    static Decimal from_json(const nlohmann::json& value);

    Decimal operator+(const Decimal& rhs) const;
    Decimal operator-(const Decimal& rhs) const;
    Decimal operator*(const Decimal& rhs) const;
    Decimal operator-() const;
    Decimal& operator+=(const Decimal& rhs) { return *this = *this + rhs; }

    /// Exact division by 10^digits.
    Decimal shifted_right(int digits) const;
    /// Round half-to-even to at most `digits` fractional digits.
    Decimal rounded(int digits = kLedgerDigits) const;

    std::strong_ordering operator<=>(const Decimal& rhs) const;
    bool operator==(const Decimal& rhs) const { return (*this <=> rhs) == 0; }

    bool is_negative() const { return m_coef < 0; }
    std::string to_string() const;
    double to_double() const;
    nlohmann::json to_json() const;

private:
    Decimal(__int128 coef, int scale) : m_coef(coef), m_scale(scale) {}
    Decimal normalized() const;

    __int128 m_coef = 0;
    int m_scale = 0;
};

inline Decimal max(const Decimal& a, const Decimal& b)
{
    return a < b ? b : a;
}

}  // namespace grainledger
