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
#include "grainledger/ledger/audit.hpp"
#include "grainledger/common/error.hpp"

namespace grainledger::ledger
{
std::string ChainReport::summary() const
{
    if (intact())
        return "intact (" + std::to_string(blocks_checked) + " blocks)";
    std::string s = "failure at height " + std::to_string(failure->height);
    if (!failure->tx_id.empty())
        s += " tx " + failure->tx_id;
    return s + ": " + failure->reason;
}

ChainReport verify_chain(std::span<const Block> chain, const SignatureCheck& signatures)
{
    ChainReport report;
    Digest expected_prev = Digest::zero();
    for (std::size_t i = 0; i < chain.size(); ++i)
    {
        const Block& block = chain[i];
        auto failure = [&](std::string reason, std::string tx_id = {}) {
            report.failure = AuditFailure{block.header.channel_id, i, std::move(tx_id), std::move(reason)};
            return report;
        };
        if (block.header.height != i)
            return failure("height field is " + std::to_string(block.header.height));
        if (block.header.prev_hash != expected_prev)
            return failure("prev_hash does not link to the previous block");
        if (block.transactions.empty())
            return failure("empty block");
        // Per-transaction checks first so a damaged envelope is named.
        for (const auto& tx : block.transactions)
        {
            if (tx.envelope.compute_tx_id().hex() != tx.envelope.tx_id)
                return failure("tx_id does not match envelope", tx.envelope.tx_id);
            if (signatures && !signatures(block, tx.envelope))
                return failure("signature does not verify", tx.envelope.tx_id);
        }
        if (block.compute_merkle_root() != block.header.merkle_root)
            return failure("merkle root mismatch");
        if (block.header.digest() != block.hash)
            return failure("block digest mismatch");
        expected_prev = block.hash;
        ++report.blocks_checked;
    }
    return report;
}

}  // namespace grainledger::ledger
