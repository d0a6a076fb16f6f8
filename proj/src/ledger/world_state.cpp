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
#include "grainledger/ledger/world_state.hpp"

namespace grainledger::ledger
{
const StateReader::Entry* WorldState::find(std::string_view key) const
{
    auto it = m_entries.find(key);
    return it == m_entries.end() ? nullptr : &it->second;
}

void WorldState::scan(std::string_view prefix,
    const std::function<void(const std::string&, const Entry&)>& visit) const
{
    for (auto it = m_entries.lower_bound(prefix);
         it != m_entries.end() && std::string_view(it->first).starts_with(prefix); ++it)
        visit(it->first, it->second);
}

std::optional<Version> WorldState::version_of(std::string_view key) const
{
    const Entry* e = find(key);
    return e ? std::optional<Version>(e->version) : std::nullopt;
}

void WorldState::put(const std::string& key, Document value, Version version)
{
    m_entries.insert_or_assign(key, Entry{std::move(value), version});
}

Document WorldState::snapshot() const
{
    Document doc = Document::object();
    for (const auto& [key, entry] : m_entries)
        doc[key] = {{"value", entry.value}, {"version", to_document(entry.version)}};
    return doc;
}

Digest WorldState::state_hash() const
{
    return hash_bytes(canonicalize(snapshot()));
}

}  // namespace grainledger::ledger
