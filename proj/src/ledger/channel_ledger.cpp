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
#include "grainledger/ledger/channel_ledger.hpp"
#include "grainledger/common/error.hpp"

#include <mutex>
#include <unordered_set>

namespace grainledger::ledger
{
ChannelLedger::ChannelLedger(std::string channel_id, std::optional<std::filesystem::path> block_file)
  : m_channel_id(std::move(channel_id)), m_file(std::move(block_file))
{}

std::vector<CommitOutcome> ChannelLedger::load(const TxCheck& check, const CommitHook& on_commit)
{
    std::unique_lock lock(m_mutex);
    m_state = WorldState{};
    m_txs.clear();
    std::vector<CommitOutcome> outcomes;
    if (!m_file)
    {
        m_store = BlockStore{};
        return outcomes;
    }
    BlockStore persisted(*m_file);
    // Re-validate into a fresh in-memory chain, then keep the file-backed store.
    m_store = BlockStore{};
    for (const Block& block : persisted.blocks())
    {
        m_store.check_append(block);
        if (block.compute_merkle_root() != block.header.merkle_root)
            fail(ErrorCode::BadRecord, m_channel_id + ": merkle root mismatch at height " +
                                           std::to_string(block.header.height));
        CommitOutcome outcome = apply(block, check);
        if (outcome.validity != block.validity)
            fail(ErrorCode::BadRecord, m_channel_id + ": validity flags differ at height " +
                                           std::to_string(block.header.height));
        Block copy = block;
        m_store.append(std::move(copy));
        if (on_commit)
            on_commit(block, outcome);
        outcomes.push_back(std::move(outcome));
    }
    m_store = std::move(persisted);
    return outcomes;
}

CommitOutcome ChannelLedger::apply(const Block& block, const TxCheck& check)
{
    std::unordered_set<std::string> in_block;
    TxCheck wrapped = [&](const Block& b, std::size_t i) -> std::optional<std::string> {
        const std::string& id = b.transactions[i].envelope.tx_id;
        if (m_txs.contains(id) || !in_block.insert(id).second)
            return "duplicate tx_id";
        return check ? check(b, i) : std::nullopt;
    };
    CommitOutcome outcome;
    outcome.validity = validate_and_commit(m_state, block, wrapped);
    for (std::size_t i = 0; i < block.transactions.size(); ++i)
    {
        const auto& tx = block.transactions[i];
        auto index = static_cast<std::uint32_t>(i);
        m_txs.try_emplace(tx.envelope.tx_id, CommittedTx{block.header.height, index, outcome.validity[i]});
        if (!outcome.validity[i].valid)
            continue;
        for (const auto& ev : tx.rwset.events)
            outcome.events.push_back({m_channel_id, block.header.height, index, ev});
    }
    return outcome;
}

CommitOutcome ChannelLedger::commit(Block block, const TxCheck& check)
{
    std::unique_lock lock(m_mutex);
    if (block.header.channel_id != m_channel_id)
        fail(ErrorCode::BadRecord, "block for channel " + block.header.channel_id +
                                       " delivered to " + m_channel_id);
    m_store.check_append(block);
    if (block.compute_merkle_root() != block.header.merkle_root)
        fail(ErrorCode::BadRecord, "merkle root mismatch at height " +
                                       std::to_string(block.header.height));
    CommitOutcome outcome = apply(block, check);
    block.validity = outcome.validity;
    m_store.append(std::move(block));
    return outcome;
}

std::uint64_t ChannelLedger::height() const
{
    std::shared_lock lock(m_mutex);
    return m_store.size();
}

Digest ChannelLedger::tip_hash() const
{
    std::shared_lock lock(m_mutex);
    return m_store.tip_hash();
}

Digest ChannelLedger::state_hash() const
{
    std::shared_lock lock(m_mutex);
    return m_state.state_hash();
}

Document ChannelLedger::snapshot() const
{
    std::shared_lock lock(m_mutex);
    return m_state.snapshot();
}

std::optional<CommittedTx> ChannelLedger::find_tx(const std::string& tx_id) const
{
    std::shared_lock lock(m_mutex);
    auto it = m_txs.find(tx_id);
    return it == m_txs.end() ? std::nullopt : std::optional<CommittedTx>(it->second);
}

std::vector<Block> ChannelLedger::blocks_from(std::uint64_t height, std::size_t max_blocks) const
{
    std::shared_lock lock(m_mutex);
    std::vector<Block> out;
    for (std::uint64_t h = height; h < m_store.size() && out.size() < max_blocks; ++h)
        out.push_back(m_store.at(h));
    return out;
}

}  // namespace grainledger::ledger
