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
#include "grainledger/ledger/validation.hpp"

#include <set>

namespace grainledger::ledger
{
namespace
{
std::optional<std::string> structural_reason(const TransactionRecord& tx)
{
    if (tx.envelope.channel_id.empty())
        return "missing channel_id";
    if (tx.envelope.compute_tx_id().hex() != tx.envelope.tx_id)
        return "tx_id does not match envelope";
    std::set<std::string_view> seen;
    for (const auto& r : tx.rwset.reads)
        if (!seen.insert(r.key).second)
            return "duplicate key in read set: " + r.key;
    seen.clear();
    for (const auto& w : tx.rwset.writes)
        if (!seen.insert(w.key).second)
            return "duplicate key in write set: " + w.key;
    return std::nullopt;
}

}  // namespace

std::vector<TxValidity> validate_and_commit(
    WorldState& state, const Block& block, const TxCheck& check)
{
    std::vector<TxValidity> flags;
    flags.reserve(block.transactions.size());
    for (std::size_t i = 0; i < block.transactions.size(); ++i)
    {
        const TransactionRecord& tx = block.transactions[i];
        if (tx.rwset.aborted())
        {
            flags.push_back({false, "ContractAbort: " + tx.rwset.abort_reason});
            continue;
        }
        if (auto reason = structural_reason(tx))
        {
            flags.push_back({false, *reason});
            continue;
        }
        if (tx.envelope.channel_id != block.header.channel_id)
        {
            flags.push_back({false, "envelope channel does not match block"});
            continue;
        }
        if (check)
        {
            if (auto reason = check(block, i))
            {
                flags.push_back({false, *reason});
                continue;
            }
        }
        std::optional<std::string> conflict;
        for (const auto& read : tx.rwset.reads)
        {
            if (state.version_of(read.key) != read.version)
            {
                conflict = "MVCC read conflict on " + read.key;
                break;
            }
        }
        if (conflict)
        {
            flags.push_back({false, *conflict});
            continue;
        }
        Version version{block.header.height, static_cast<std::uint32_t>(i)};
        for (const auto& write : tx.rwset.writes)
            state.put(write.key, write.value, version);
        flags.push_back({true, ""});
    }
    return flags;
}

}  // namespace grainledger::ledger
