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
#include "grainledger/ledger/canonical.hpp"
#include "grainledger/common/error.hpp"

#include <charconv>
#include <cmath>

namespace grainledger::ledger
{
namespace
{
void write_number(double value, std::string& out)
{
    if (!std::isfinite(value))
        fail(ErrorCode::NonCanonicalizable, "non-finite number");
    if (value == 0.0)
    {
        out.push_back('0');
        return;
    }
    char buf[512];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed);
    if (ec != std::errc{})
        fail(ErrorCode::NonCanonicalizable, "number does not fit fixed notation");
    out.append(buf, end);
}

void write_string(const std::string& s, std::string& out)
{
    try
    {
        out += Document(s).dump(-1, ' ', false);
    }
    catch (const nlohmann::json::exception& e)
    {
        fail(ErrorCode::NonCanonicalizable, e.what());
    }
}

void write(const Document& doc, std::string& out)
{
    switch (doc.type())
    {
    case Document::value_t::null:
        out += "null";
        break;
    case Document::value_t::boolean:
        out += doc.get<bool>() ? "true" : "false";
        break;
    case Document::value_t::number_integer:
        out += std::to_string(doc.get<std::int64_t>());
        break;
    case Document::value_t::number_unsigned:
        out += std::to_string(doc.get<std::uint64_t>());
        break;
    case Document::value_t::number_float:
        write_number(doc.get<double>(), out);
        break;
    case Document::value_t::string:
        write_string(doc.get_ref<const std::string&>(), out);
        break;
    case Document::value_t::array:
    {
        out.push_back('[');
        bool first = true;
        for (const auto& item : doc)
        {
            if (!first)
                out.push_back(',');
            first = false;
            write(item, out);
        }
        out.push_back(']');
        break;
    }
    case Document::value_t::object:
    {
        // nlohmann::json stores objects in a std::map<std::string>, whose
        // ordering is the bytewise order of the UTF-8 keys.
        out.push_back('{');
        bool first = true;
        for (const auto& [key, value] : doc.items())
        {
            if (!first)
                out.push_back(',');
            first = false;
            write_string(key, out);
            out.push_back(':');
            write(value, out);
        }
        out.push_back('}');
        break;
    }
    case Document::value_t::binary:
    case Document::value_t::discarded:
        fail(ErrorCode::NonCanonicalizable, "unsupported value type");
    }
}

}  // namespace

std::string canonicalize(const Document& doc)
{
    std::string out;
    write(doc, out);
    return out;
}

Document parse_document(std::string_view text)
{
    try
    {
        return Document::parse(text);
    }
    catch (const nlohmann::json::exception& e)
    {
        fail(ErrorCode::BadRecord, e.what());
    }
}

}  // namespace grainledger::ledger
