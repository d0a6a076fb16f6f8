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
#include "grainledger/network/orderer.hpp"
#include "grainledger/common/error.hpp"
#include "grainledger/network/validator.hpp"

namespace grainledger::network
{
Orderer::Orderer(std::string node_id, std::optional<std::filesystem::path> data_dir, DirectoryFn directory)
  : m_node_id(std::move(node_id)), m_data_dir(std::move(data_dir)), m_directory(std::move(directory))
{}

void Orderer::open()
{
    if (!m_data_dir)
        return;
    auto dir = *m_data_dir / "orderer";
    std::filesystem::create_directories(dir);
    std::lock_guard lock(m_mutex);
    for (const auto& entry : std::filesystem::directory_iterator(dir))
    {
        if (entry.path().extension() != ".blocks")
            continue;
        std::string channel_id = entry.path().stem().string();
        m_chains[channel_id].store = ledger::BlockStore(entry.path());
    }
}

Orderer::ChannelChain& Orderer::chain_for(const std::string& channel_id)
{
    auto it = m_chains.find(channel_id);
    if (it != m_chains.end())
        return it->second;
    auto& chain = m_chains[channel_id];
    if (m_data_dir)
    {
        std::filesystem::create_directories(*m_data_dir / "orderer");
        chain.store = ledger::BlockStore(*m_data_dir / "orderer" / (channel_id + ".blocks"));
    }
    return chain;
}

std::uint64_t Orderer::governance_tip() const
{
    auto it = m_chains.find(identity::kGovernanceChannel);
    return it == m_chains.end() || it->second.store.empty() ? 0 : it->second.store.size() - 1;
}

void Orderer::install_genesis(ledger::Block genesis)
{
    std::lock_guard lock(m_mutex);
    const std::string channel_id = genesis.header.channel_id;
    auto it = m_chains.find(channel_id);
    if (it != m_chains.end() && !it->second.store.empty())
        fail(ErrorCode::DuplicateChannel, "channel " + channel_id + " already has a genesis block");
    genesis.validity.clear();
    chain_for(channel_id).store.append(std::move(genesis));
    m_cv.notify_all();
}

ledger::Block Orderer::open_channel(ledger::TransactionRecord record, std::int64_t now_ms)
{
    const std::string channel_id = record.envelope.channel_id;
    auto dir = m_directory();
    if (!dir->channel(channel_id))
        fail(ErrorCode::UnknownChannel, "channel " + channel_id + " is not defined on the governance channel");
    std::lock_guard lock(m_mutex);
    auto it = m_chains.find(channel_id);
    if (it != m_chains.end() && !it->second.store.empty())
        fail(ErrorCode::DuplicateChannel, "channel " + channel_id + " is already open");
    auto& chain = chain_for(channel_id);
    chain.queue.push_back({std::move(record), now_ms});
    ledger::Block block = cut(channel_id, chain, 1, now_ms);
    m_cv.notify_all();
    return block;
}

ledger::Block Orderer::cut(const std::string& channel_id, ChannelChain& chain, std::size_t count, std::int64_t now_ms)
{
    ledger::Block block;
    block.header.height = chain.store.next_height();
    block.header.prev_hash = chain.store.tip_hash();
    block.header.channel_id = channel_id;
    block.header.created_at = now_ms;
    block.header.governance_height =
        channel_id == identity::kGovernanceChannel && block.header.height > 0 ? block.header.height - 1 : governance_tip();
    for (std::size_t i = 0; i < count; ++i)
    {
        block.transactions.push_back(std::move(chain.queue.front().record));
        chain.queue.pop_front();
    }
    block.seal();
    chain.store.append(block);
    return block;
}

std::vector<ledger::Block> Orderer::submit(ledger::TransactionRecord record, std::int64_t now_ms)
{
    const std::string channel_id = record.envelope.channel_id;
    auto dir = m_directory();
    const ChannelConfig* channel = dir->channel(channel_id);
    if (!channel)
        fail(ErrorCode::UnknownChannel, "channel " + channel_id + " is not defined");
    if (!record.rwset.aborted())
    {
        auto policy = dir->policies.find(channel->endorsement_policy);
        if (policy == dir->policies.end())
            fail(ErrorCode::PolicyNotMet, "unknown policy " + channel->endorsement_policy);
        auto reason = check_endorsements(record, *channel, policy->second, [&](const std::string& id) {
            auto it = dir->nodes.find(id);
            return it == dir->nodes.end() ? std::nullopt : std::optional<NodeRecord>(it->second);
        });
        if (reason)
            fail(reason->starts_with("EndorsementMismatch") ? ErrorCode::EndorsementMismatch : ErrorCode::PolicyNotMet,
                reason->substr(reason->find(": ") + 2));
    }

    std::lock_guard lock(m_mutex);
    auto it = m_chains.find(channel_id);
    if (it == m_chains.end() || it->second.store.empty())
        fail(ErrorCode::UnknownChannel, "channel " + channel_id + " has no genesis block yet");
    auto& chain = it->second;
    chain.queue.push_back({std::move(record), now_ms});
    std::vector<ledger::Block> out;
    while (chain.queue.size() >= channel->batch_max_tx)
        out.push_back(cut(channel_id, chain, channel->batch_max_tx, now_ms));
    if (!out.empty())
        m_cv.notify_all();
    return out;
}

std::vector<ledger::Block> Orderer::tick(std::int64_t now_ms)
{
    auto dir = m_directory();
    std::lock_guard lock(m_mutex);
    std::vector<ledger::Block> out;
    for (auto& [id, chain] : m_chains)
    {
        const ChannelConfig* channel = dir->channel(id);
        if (!channel)
            continue;
        while (!chain.queue.empty() &&
               (chain.queue.size() >= channel->batch_max_tx ||
                   now_ms - chain.queue.front().enqueued_at >= channel->batch_timeout_ms))
            out.push_back(cut(id, chain,
                std::min<std::size_t>(chain.queue.size(), channel->batch_max_tx), now_ms));
    }
    if (!out.empty())
        m_cv.notify_all();
    return out;
}

std::optional<std::int64_t> Orderer::next_deadline() const
{
    auto dir = m_directory();
    std::lock_guard lock(m_mutex);
    std::optional<std::int64_t> best;
    for (const auto& [id, chain] : m_chains)
    {
        const ChannelConfig* channel = dir->channel(id);
        if (chain.queue.empty() || !channel)
            continue;
        std::int64_t at = chain.queue.front().enqueued_at + channel->batch_timeout_ms;
        if (!best || at < *best)
            best = at;
    }
    return best;
}

std::size_t Orderer::pending() const
{
    std::lock_guard lock(m_mutex);
    std::size_t n = 0;
    for (const auto& [_, chain] : m_chains)
        n += chain.queue.size();
    return n;
}

std::vector<ledger::Block> Orderer::blocks(
    const std::string& channel_id, std::uint64_t from, std::size_t max, const std::string& requester) const
{
    auto dir = m_directory();
    auto node = dir->nodes.find(requester);
    // Until the host has committed governance, only governance itself is served.
    const bool bootstrapping = dir->nodes.empty() && channel_id == identity::kGovernanceChannel;
    if (!bootstrapping && (node == dir->nodes.end() || !dir->is_member(node->second.org, channel_id)))
        fail(ErrorCode::NotChannelMember, requester + " is not a member of channel " + channel_id);
    std::lock_guard lock(m_mutex);
    auto it = m_chains.find(channel_id);
    if (it == m_chains.end())
        fail(ErrorCode::UnknownChannel, "channel " + channel_id + " is not ordered here");
    std::vector<ledger::Block> out;
    const auto& store = it->second.store;
    for (std::uint64_t h = from; h < store.size() && out.size() < max; ++h)
        out.push_back(store.at(h));
    return out;
}

std::uint64_t Orderer::height(std::string_view channel_id) const
{
    std::lock_guard lock(m_mutex);
    auto it = m_chains.find(channel_id);
    return it == m_chains.end() ? 0 : it->second.store.size();
}

std::map<std::string, std::uint64_t> Orderer::heights() const
{
    std::lock_guard lock(m_mutex);
    std::map<std::string, std::uint64_t> out;
    for (const auto& [id, chain] : m_chains)
        out[id] = chain.store.size();
    return out;
}

bool Orderer::wait_for_height(
    const std::string& channel_id, std::uint64_t height, std::chrono::milliseconds timeout) const
{
    std::unique_lock lock(m_mutex);
    return m_cv.wait_for(lock, timeout, [&] {
        auto it = m_chains.find(channel_id);
        return it != m_chains.end() && it->second.store.size() >= height;
    });
}

}  // namespace grainledger::network
