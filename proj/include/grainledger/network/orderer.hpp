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
#include "grainledger/network/governance.hpp"

#include <chrono>
#include <condition_variable>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace grainledger::network
{
/// Single ordering service: per-channel FIFO queues cut into blocks when a
/// batch fills (batch_max_tx) or its oldest entry reaches batch_timeout_ms.
/// Channel parameters and membership come from the host node's governance
/// directory; the governance_height of each block is the orderer's own
/// governance tip.
class Orderer
{
public:
    using DirectoryFn = std::function<std::shared_ptr<const Directory>()>;

    Orderer(std::string node_id, std::optional<std::filesystem::path> data_dir, DirectoryFn directory);
    Orderer(const Orderer&) = delete;
    Orderer& operator=(const Orderer&) = delete;

    /// Loads persisted chains (orderer/<channel>.blocks). Throws Error(BadRecord).
    void open();

    const std::string& node_id() const { return m_node_id; }

    /// Installs a channel's genesis block. Throws DuplicateChannel.
    void install_genesis(ledger::Block genesis);
    /// Cuts the genesis block of a channel created on the governance channel.
    /// `record` is the admin-signed deploy of the channel's contract.
    /// Throws UnknownChannel or DuplicateChannel.
    ledger::Block open_channel(ledger::TransactionRecord record, std::int64_t now_ms);

    /// Queues a transaction. Aborted records need no endorsements; others must
    /// satisfy the channel policy. Throws UnknownChannel, PolicyNotMet,
    /// EndorsementMismatch. Returns blocks cut because a batch filled.
    std::vector<ledger::Block> submit(ledger::TransactionRecord record, std::int64_t now_ms);
    /// Cuts every batch whose oldest entry has waited batch_timeout_ms.
    std::vector<ledger::Block> tick(std::int64_t now_ms);
    /// Earliest time a queued batch times out.
    std::optional<std::int64_t> next_deadline() const;
    std::size_t pending() const;

    /// Blocks [from, from+max) of a channel for a member node.
    /// Throws NotChannelMember or UnknownChannel.
    std::vector<ledger::Block> blocks(const std::string& channel_id, std::uint64_t from, std::size_t max,
        const std::string& requester) const;
    std::uint64_t height(std::string_view channel_id) const;
    std::map<std::string, std::uint64_t> heights() const;
    /// Waits until the channel reaches `height` blocks; false on timeout.
    bool wait_for_height(const std::string& channel_id, std::uint64_t height, std::chrono::milliseconds timeout) const;

private:
    struct Queued
    {
        ledger::TransactionRecord record;
        std::int64_t enqueued_at;
    };
    struct ChannelChain
    {
        ledger::BlockStore store;
        std::deque<Queued> queue;
    };

    ChannelChain& chain_for(const std::string& channel_id);
    ledger::Block cut(const std::string& channel_id, ChannelChain& chain, std::size_t count, std::int64_t now_ms);
    std::uint64_t governance_tip() const;

    std::string m_node_id;
    std::optional<std::filesystem::path> m_data_dir;
    DirectoryFn m_directory;
    mutable std::mutex m_mutex;
    mutable std::condition_variable m_cv;
    std::map<std::string, ChannelChain, std::less<>> m_chains;
};

}  // namespace grainledger::network
