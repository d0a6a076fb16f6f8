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
#include "grainledger/common/decimal.hpp"
#include "grainledger/common/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace grainledger
{
namespace
{
constexpr int kMaxScale = 30;

__int128 pow10(int n)
{
    __int128 r = 1;
    for (int i = 0; i < n; ++i)
        r *= 10;
    return r;
}

}  // namespace

Decimal Decimal::parse(std::string_view text)
{
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+'))
    {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty())
        fail(ErrorCode::BadFormat, "empty decimal");
    __int128 coef = 0;
    int scale = 0;
    bool seen_point = false;
    bool seen_digit = false;
    for (char c : s)
    {
        if (c == '.')
        {
            if (seen_point)
                fail(ErrorCode::BadFormat, "malformed decimal '" + std::string(text) + "'");
            seen_point = true;
            continue;
        }
        if (c < '0' || c > '9')
            fail(ErrorCode::BadFormat, "malformed decimal '" + std::string(text) + "'");
        seen_digit = true;
        coef = coef * 10 + (c - '0');
        if (seen_point)
            ++scale;
        if (scale > kMaxScale || coef > pow10(36))
            fail(ErrorCode::OutOfRange, "decimal too long '" + std::string(text) + "'");
    }
    if (!seen_digit)
        fail(ErrorCode::BadFormat, "malformed decimal '" + std::string(text) + "'");
    return Decimal(negative ? -coef : coef, scale).normalized();
}

Decimal Decimal::from_double(double value)
{
    if (!std::isfinite(value))
        fail(ErrorCode::InvalidArgument, "non-finite decimal");
    char buf[512];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed);
    if (ec != std::errc{})
        fail(ErrorCode::OutOfRange, "decimal out of range");
    return parse(std::string_view(buf, static_cast<std::size_t>(end - buf)));
}

Decimal Decimal::from_json(const nlohmann::json& value)
{
    if (value.is_number_integer())
        return Decimal(value.get<std::int64_t>());
    if (value.is_number_unsigned())
        return Decimal(static_cast<__int128>(value.get<std::uint64_t>()), 0);
    if (value.is_number_float())
        return from_double(value.get<double>());
    if (value.is_string())
        return parse(value.get<std::string>());
    fail(ErrorCode::InvalidArgument, "expected a decimal, got " + std::string(value.type_name()));
}

Decimal Decimal::operator+(const Decimal& rhs) const
{
    int scale = std::max(m_scale, rhs.m_scale);
    return Decimal(m_coef * pow10(scale - m_scale) + rhs.m_coef * pow10(scale - rhs.m_scale), scale)
        .normalized();
}

Decimal Decimal::operator-(const Decimal& rhs) const
{
    return *this + (-rhs);
}

Decimal Decimal::operator*(const Decimal& rhs) const
{
    return Decimal(m_coef * rhs.m_coef, m_scale + rhs.m_scale).normalized();
}

Decimal Decimal::operator-() const
{
    return Decimal(-m_coef, m_scale);
}

Decimal Decimal::shifted_right(int digits) const
{
    return Decimal(m_coef, m_scale + digits).normalized();
}

Decimal Decimal::rounded(int digits) const
{
    if (m_scale <= digits)
        return *this;
    __int128 divisor = pow10(m_scale - digits);
    __int128 magnitude = m_coef < 0 ? -m_coef : m_coef;
    __int128 q = magnitude / divisor;
    __int128 r = magnitude % divisor;
    if (2 * r > divisor || (2 * r == divisor && (q % 2) == 1))
        ++q;
    return Decimal(m_coef < 0 ? -q : q, digits).normalized();
}

std::strong_ordering Decimal::operator<=>(const Decimal& rhs) const
{
    int scale = std::max(m_scale, rhs.m_scale);
    __int128 a = m_coef * pow10(scale - m_scale);
    __int128 b = rhs.m_coef * pow10(scale - rhs.m_scale);
    if (a < b)
        return std::strong_ordering::less;
    if (a > b)
        return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Decimal Decimal::normalized() const
{
    Decimal d = *this;
    if (d.m_coef == 0)
        return Decimal{};
    while (d.m_scale > 0 && d.m_coef % 10 == 0)
    {
        d.m_coef /= 10;
        --d.m_scale;
    }
    return d;
}

std::string Decimal::to_string() const
{
    Decimal d = normalized();
    __int128 magnitude = d.m_coef < 0 ? -d.m_coef : d.m_coef;
    std::string digits;
    do
    {
        digits.push_back(static_cast<char>('0' + static_cast<int>(magnitude % 10)));
        magnitude /= 10;
    } while (magnitude > 0);
    while (static_cast<int>(digits.size()) <= d.m_scale)
        digits.push_back('0');
    std::reverse(digits.begin(), digits.end());
    if (d.m_scale > 0)
        digits.insert(digits.end() - d.m_scale, '.');
    if (d.m_coef < 0)
        digits.insert(digits.begin(), '-');
    return digits;
}

double Decimal::to_double() const
{
    std::string s = to_string();
    double value = 0;
    std::from_chars(s.data(), s.data() + s.size(), value);
    return value;
}

nlohmann::json Decimal::to_json() const
{
    Decimal d = normalized();
    if (d.m_scale == 0 && d.m_coef >= INT64_MIN && d.m_coef <= INT64_MAX)
        return static_cast<std::int64_t>(d.m_coef);
    double value = d.to_double();
    if (from_double(value) != d)
        fail(ErrorCode::OutOfRange, "decimal " + d.to_string() + " not representable in a document");
    return value;
}

}  // namespace grainledger
