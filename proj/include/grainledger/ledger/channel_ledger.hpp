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

#include "grainledger/ledger/block_store.hpp"
#include "grainledger/ledger/validation.hpp"
#include "grainledger/ledger/world_state.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace grainledger::ledger
{
struct CommittedTx
{
    std::uint64_t height = 0;
    std::uint32_t tx_index = 0;
    TxValidity validity;
};

struct CommittedEvent
{
    std::string channel_id;
    std::uint64_t block_height = 0;
    std::uint32_t tx_index = 0;
    Event event;
};

struct CommitOutcome
{
    std::vector<TxValidity> validity;
    std::vector<CommittedEvent> events;  // VALID transactions only, in tx order
};

/// Block store plus world state of one channel on one node.
///
/// Commits are serialized; readers take a shared lock and see the latest
/// committed tip.
class ChannelLedger
{
public:
    /// With a block file, call load() before committing; it opens the file.
    explicit ChannelLedger(
        std::string channel_id, std::optional<std::filesystem::path> block_file = std::nullopt);

    const std::string& channel_id() const { return m_channel_id; }

    using CommitHook = std::function<void(const Block&, const CommitOutcome&)>;

    /// Replays the persisted blocks into a fresh state, calling `on_commit`
    /// after each block. Throws Error(BadRecord) when re-derived validity
    /// differs from the stored flags. Returns the outcomes in block order.
    std::vector<CommitOutcome> load(const TxCheck& check, const CommitHook& on_commit = {});

    /// Validates and appends a block (append preconditions, then MVCC).
    /// Transactions whose tx_id is already committed are INVALID.
    CommitOutcome commit(Block block, const TxCheck& check);

    std::uint64_t height() const;  // number of committed blocks
    Digest tip_hash() const;
    Digest state_hash() const;
    Document snapshot() const;
    std::optional<CommittedTx> find_tx(const std::string& tx_id) const;
    std::vector<Block> blocks_from(std::uint64_t height, std::size_t max_blocks = SIZE_MAX) const;

    /// Runs `fn` with the committed state under a shared lock.
    template <typename Fn>
    decltype(auto) read(Fn&& fn) const
    {
        std::shared_lock lock(m_mutex);
        return std::forward<Fn>(fn)(static_cast<const WorldState&>(m_state));
    }

private:
    CommitOutcome apply(const Block& block, const TxCheck& check);

    std::string m_channel_id;
    mutable std::shared_mutex m_mutex;
    std::optional<std::filesystem::path> m_file;
    BlockStore m_store;
    WorldState m_state;
    std::unordered_map<std::string, CommittedTx> m_txs;
};

}  // namespace grainledger::ledger
