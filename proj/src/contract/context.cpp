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
#include "grainledger/contract/context.hpp"
#include "grainledger/common/error.hpp"

namespace grainledger::contract
{
std::optional<ledger::Document> TxContext::get_state(const std::string& key)
{
    if (auto w = m_writes.find(key); w != m_writes.end())
        return w->second;
    const auto* entry = m_state.find(key);
    m_reads.try_emplace(key, entry ? std::optional<ledger::Version>(entry->version) : std::nullopt);
    return entry ? std::optional<ledger::Document>(entry->value) : std::nullopt;
}

void TxContext::put_state(const std::string& key, ledger::Document value)
{
    m_writes.insert_or_assign(key, std::move(value));
}

void TxContext::emit(std::string event_name, ledger::Document payload)
{
    m_events.push_back({std::move(event_name), std::move(payload), m_invocation.tx_id});
}

ledger::ReadWriteSet TxContext::take_rwset() &&
{
    ledger::ReadWriteSet rw;
    for (auto& [key, version] : m_reads)
        rw.reads.push_back({key, version});
    for (auto& [key, value] : m_writes)
        rw.writes.push_back({key, std::move(value)});
    rw.events = std::move(m_events);
    return rw;
}

std::string AssetRegistry::state_key(std::string_view id) const
{
    return m_registry_id + "#" + std::string(id);
}

std::optional<ledger::Document> AssetRegistry::find(std::string_view id)
{
    return m_ctx.get_state(state_key(id));
}

ledger::Document AssetRegistry::get(std::string_view id)
{
    auto value = find(id);
    if (!value)
        fail(ErrorCode::AssetNotFound, "asset not found: " + state_key(id));
    return *value;
}

void AssetRegistry::add(std::string_view id, ledger::Document value)
{
    if (find(id))
        fail(ErrorCode::DuplicateAsset, "asset already exists: " + state_key(id));
    m_ctx.put_state(state_key(id), std::move(value));
}

void AssetRegistry::update(std::string_view id, ledger::Document value)
{
    get(id);
    m_ctx.put_state(state_key(id), std::move(value));
}

}  // namespace grainledger::contract
