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

#include "grainledger/identity/participant.hpp"
#include "grainledger/ledger/types.hpp"
#include "grainledger/ledger/world_state.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace grainledger::contract
{
/// Everything a contract may know about the call besides its arguments.
/// All fields come from the signed envelope or the governance registry, so
/// every endorser sees the same values.
struct Invocation
{
    std::string tx_id;
    std::string channel_id;
    std::string submitter;
    identity::Role role = identity::Role::producer;
    std::int64_t timestamp = 0;
};

/// Simulation context: reads go to a committed snapshot and are recorded with
/// their versions; writes and events are buffered.
class TxContext
{
public:
    TxContext(const ledger::StateReader& state, Invocation invocation)
      : m_state(state), m_invocation(std::move(invocation))
    {}

    const Invocation& invocation() const { return m_invocation; }

    /// Sees this transaction's own earlier writes.
    std::optional<ledger::Document> get_state(const std::string& key);
    void put_state(const std::string& key, ledger::Document value);
    void emit(std::string event_name, ledger::Document payload);

    /// Reads and writes sorted by key, events in emit order.
    ledger::ReadWriteSet take_rwset() &&;

private:
    const ledger::StateReader& m_state;
    Invocation m_invocation;
    std::map<std::string, std::optional<ledger::Version>> m_reads;
    std::map<std::string, ledger::Document> m_writes;
    std::vector<ledger::Event> m_events;
};

/// Assets of one type. State key = registry_id + "#" + identifier.
class AssetRegistry
{
public:
    AssetRegistry(TxContext& ctx, std::string registry_id)
      : m_ctx(ctx), m_registry_id(std::move(registry_id))
    {}

    const std::string& registry_id() const { return m_registry_id; }
    std::string state_key(std::string_view id) const;

    std::optional<ledger::Document> find(std::string_view id);
    bool exists(std::string_view id) { return find(id).has_value(); }
    /// Throws AssetNotFound.
    ledger::Document get(std::string_view id);
    /// Throws DuplicateAsset.
    void add(std::string_view id, ledger::Document value);
    /// Throws AssetNotFound; the prior value is recorded as a read.
    void update(std::string_view id, ledger::Document value);

private:
    TxContext& m_ctx;
    std::string m_registry_id;
};

}  // namespace grainledger::contract
