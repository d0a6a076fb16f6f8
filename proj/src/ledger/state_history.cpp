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
#include "grainledger/ledger/state_history.hpp"

#include <mutex>

namespace grainledger::ledger
{
void StateHistory::record(const Block& block, const std::vector<TxValidity>& validity)
{
    std::unique_lock lock(m_mutex);
    for (std::size_t i = 0; i < block.transactions.size() && i < validity.size(); ++i)
    {
        if (!validity[i].valid)
            continue;
        for (const auto& w : block.transactions[i].rwset.writes)
            m_writes[w.key].emplace_back(block.header.height, w.value);
    }
    m_tip = block.header.height;
}

std::optional<Document> StateHistory::get(const std::string& key, std::uint64_t height) const
{
    std::shared_lock lock(m_mutex);
    auto it = m_writes.find(key);
    if (it == m_writes.end())
        return std::nullopt;
    const Document* found = nullptr;
    for (const auto& [h, value] : it->second)
    {
        if (h > height)
            break;
        found = &value;
    }
    return found ? std::optional<Document>(*found) : std::nullopt;
}

std::optional<std::uint64_t> StateHistory::tip() const
{
    std::shared_lock lock(m_mutex);
    return m_tip;
}

}  // namespace grainledger::ledger
