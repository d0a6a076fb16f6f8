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

#include "grainledger/ledger/types.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace grainledger::ledger
{
/// Read side of a state view, used by contract simulation and queries.
class StateReader
{
public:
    struct Entry
    {
        Document value;
        Version version;
    };

    virtual ~StateReader() = default;
    virtual const Entry* find(std::string_view key) const = 0;
    /// Visits entries whose key starts with `prefix`, in key order.
    virtual void scan(std::string_view prefix,
        const std::function<void(const std::string&, const Entry&)>& visit) const = 0;
};

/// Versioned key-value state of one channel.
class WorldState : public StateReader
{
public:
    const Entry* find(std::string_view key) const override;
    void scan(std::string_view prefix,
        const std::function<void(const std::string&, const Entry&)>& visit) const override;

    std::optional<Version> version_of(std::string_view key) const;
    void put(const std::string& key, Document value, Version version);
    std::size_t size() const { return m_entries.size(); }

    /// Canonical export: {key: {"value": ..., "version": [height, tx_index]}}.
    Document snapshot() const;
    /// hash_bytes(canonicalize(snapshot())).
    Digest state_hash() const;

private:
    std::map<std::string, Entry, std::less<>> m_entries;
};

}  // namespace grainledger::ledger
