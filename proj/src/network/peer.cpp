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
#include "grainledger/network/peer.hpp"
#include "grainledger/network/validator.hpp"

#include <algorithm>

namespace grainledger::network
{
Document ProposalResponse::to_document() const
{
    return {
        {"endorsement", endorsement ? endorsement->to_document() : Document()},
        {"node_id", node_id},
        {"rwset", rwset.to_document()},
    };
}

ProposalResponse ProposalResponse::from_document(const Document& doc)
{
    ProposalResponse r;
    r.node_id = doc.at("node_id").get<std::string>();
    r.rwset = ledger::ReadWriteSet::from_document(doc.at("rwset"));
    if (doc.contains("endorsement") && !doc["endorsement"].is_null())
        r.endorsement = ledger::Endorsement::from_document(doc["endorsement"]);
    return r;
}

Document TxStatus::to_document(const std::string& tx_id) const
{
    return {
        {"block_height", committed.height},
        {"channel_id", channel_id},
        {"reason", committed.validity.reason},
        {"status", committed.validity.valid ? "VALID" : "INVALID"},
        {"tx_id", tx_id},
        {"tx_index", committed.tx_index},
    };
}

Document LoggedEvent::to_document() const
{
    return {
        {"block_height", event.block_height},
        {"channel_id", event.channel_id},
        {"event_name", event.event.event_name},
        {"payload", event.event.payload},
        {"sequence", sequence},
        {"tx_id", event.event.tx_id},
        {"tx_index", event.tx_index},
    };
}

void EventLog::append(const std::vector<ledger::CommittedEvent>& events)
{
    if (events.empty())
        return;
    {
        std::lock_guard lock(m_mutex);
        for (const auto& e : events)
            m_events.push_back({m_events.size() + 1, e});
    }
    m_cv.notify_all();
}

std::vector<LoggedEvent> EventLog::since(std::uint64_t after, std::size_t max) const
{
    std::lock_guard lock(m_mutex);
    std::vector<LoggedEvent> out;
    for (std::uint64_t i = after; i < m_events.size() && out.size() < max; ++i)
        out.push_back(m_events[i]);
    return out;
}

std::uint64_t EventLog::last() const
{
    std::lock_guard lock(m_mutex);
    return m_events.size();
}

bool EventLog::wait(std::uint64_t after, std::chrono::milliseconds timeout) const
{
    std::unique_lock lock(m_mutex);
    return m_cv.wait_for(lock, timeout, [&] { return m_events.size() > after; });
}

Peer::Peer(PeerOptions options, const contract::ContractCatalog& catalog)
  : m_options(std::move(options)),
    m_catalog(catalog),
    m_engine(catalog),
    m_directory(std::make_shared<Directory>())
{}

void Peer::open()
{
    std::lock_guard commit(m_commit_mutex);
    ensure_ledger(std::string(identity::kGovernanceChannel));
    refresh_directory();
}

ledger::ChannelLedger& Peer::ensure_ledger(const std::string& channel_id)
{
    {
        std::lock_guard lock(m_state_mutex);
        if (auto it = m_ledgers.find(channel_id); it != m_ledgers.end())
            return *it->second;
    }
    std::optional<std::filesystem::path> file;
    if (m_options.data_dir)
    {
        auto dir = *m_options.data_dir / "channels";
        std::filesystem::create_directories(dir);
        file = dir / (channel_id + ".blocks");
    }
    auto ledger = std::make_unique<ledger::ChannelLedger>(channel_id, file);
    const bool governance = channel_id == identity::kGovernanceChannel;
    ledger->load(make_tx_check(m_history), [&](const ledger::Block& block, const ledger::CommitOutcome& outcome) {
        if (governance)
        {
            if (block.header.height == 0 && m_options.governance_genesis &&
                block.hash != *m_options.governance_genesis)
                fail(ErrorCode::BadRecord, "governance genesis does not match the configured digest");
            m_history.record(block, outcome.validity);
        }
        m_events.append(outcome.events);
    });
    std::lock_guard lock(m_state_mutex);
    auto& slot = m_ledgers[channel_id];
    slot = std::move(ledger);
    return *slot;
}

void Peer::refresh_directory()
{
    const auto* gov = ledger(identity::kGovernanceChannel);
    auto dir = std::make_shared<const Directory>(
        gov ? gov->read([](const ledger::StateReader& state) { return Directory::from_state(state); })
            : Directory{});
    {
        std::lock_guard lock(m_state_mutex);
        m_directory = dir;
    }
    for (const auto& [id, channel] : dir->channels)
        if (channel.has_member(org()))
            ensure_ledger(id);
}

std::shared_ptr<const Directory> Peer::directory() const
{
    std::lock_guard lock(m_state_mutex);
    return m_directory;
}

bool Peer::holds(std::string_view channel_id) const
{
    std::lock_guard lock(m_state_mutex);
    return m_ledgers.find(channel_id) != m_ledgers.end();
}

const ledger::ChannelLedger* Peer::ledger(std::string_view channel_id) const
{
    std::lock_guard lock(m_state_mutex);
    auto it = m_ledgers.find(channel_id);
    return it == m_ledgers.end() ? nullptr : it->second.get();
}

std::vector<std::string> Peer::channels() const
{
    std::lock_guard lock(m_state_mutex);
    std::vector<std::string> out;
    for (const auto& [id, _] : m_ledgers)
        out.push_back(id);
    return out;
}

std::map<std::string, std::uint64_t> Peer::next_heights() const
{
    std::map<std::string, std::uint64_t> out;
    std::lock_guard lock(m_state_mutex);
    for (const auto& [id, l] : m_ledgers)
        out[id] = l->height();
    return out;
}

ProposalResponse Peer::endorse(const ledger::TransactionEnvelope& env) const
{
    auto dir = directory();
    const ledger::ChannelLedger* target = ledger(env.channel_id);
    if (!dir->is_member(org(), env.channel_id) || !target)
        fail(ErrorCode::NotChannelMember, node_id() + " is not a member of channel " + env.channel_id);
    if (env.compute_tx_id().hex() != env.tx_id)
        fail(ErrorCode::InvalidArgument, "tx_id does not match the envelope");

    struct Caller
    {
        Role role;
        identity::AccessControlList acl;
    };
    Caller caller = with_governance([&](const identity::GovernanceView& view) {
        auto ident = view.identity(env.submitter);
        if (!ident)
            fail(ErrorCode::Unauthorized, env.submitter + " has no identity");
        if (ident->revoked)
            fail(revoked_submitter_error(env.contract_id), "identity of " + env.submitter + " is revoked");
        if (!identity::verify_envelope(env, ident->public_key))
            fail(ErrorCode::Unauthorized, "envelope signature does not verify for " + env.submitter);
        auto who = view.participant(env.submitter);
        if (!who)
            fail(ErrorCode::UnknownParticipant, env.submitter);
        return Caller{who->role, view.acl()};
    });

    contract::Invocation inv{env.tx_id, env.channel_id, env.submitter, caller.role, env.timestamp};
    ProposalResponse response;
    response.node_id = node_id();
    try
    {
        response.rwset = target->read([&](const ledger::StateReader& state) {
            return m_engine.invoke(env.contract_id, env.operation, env.args, inv, state, caller.acl);
        });
    }
    catch (const Error& e)
    {
        if (e.code() != ErrorCode::ContractAbort)
            throw;
        response.rwset = {};
        response.rwset.abort_reason = e.message();
        return response;
    }
    ledger::Digest digest = response.rwset.digest();
    response.endorsement = ledger::Endorsement{node_id(), std::string(to_string(org())), digest,
        key().sign(ledger::Endorsement::signing_bytes(env.tx_id, digest))};
    return response;
}

bool Peer::ready(const ledger::Block& block) const
{
    if (block.header.channel_id == identity::kGovernanceChannel)
        return true;
    auto tip = m_history.tip();
    return tip && *tip >= block.header.governance_height;
}

void Peer::after_commit(const ledger::Block& block, const ledger::CommitOutcome& outcome)
{
    if (block.header.channel_id == identity::kGovernanceChannel)
    {
        m_history.record(block, outcome.validity);
        refresh_directory();
    }
    m_events.append(outcome.events);
    m_commit_cv.notify_all();
}

std::size_t Peer::deliver(ledger::Block block)
{
    std::lock_guard commit(m_commit_mutex);
    const std::string channel_id = block.header.channel_id;
    if (!holds(channel_id))
    {
        if (channel_id != identity::kGovernanceChannel && !directory()->is_member(org(), channel_id))
            return 0;
        ensure_ledger(channel_id);
    }
    {
        std::lock_guard lock(m_state_mutex);
        if (block.header.height >= m_ledgers.find(channel_id)->second->height())
            m_buffer[channel_id].try_emplace(block.header.height, std::move(block));
    }

    std::size_t committed = 0;
    for (bool progress = true; progress;)
    {
        progress = false;
        std::vector<std::string> pending;
        {
            std::lock_guard lock(m_state_mutex);
            for (const auto& [id, buf] : m_buffer)
                if (!buf.empty())
                    pending.push_back(id);
        }
        std::stable_partition(pending.begin(), pending.end(),
            [](const std::string& id) { return id == identity::kGovernanceChannel; });
        for (const auto& id : pending)
        {
            ledger::ChannelLedger* target = nullptr;
            std::optional<ledger::Block> next;
            {
                std::lock_guard lock(m_state_mutex);
                target = m_ledgers.find(id)->second.get();
                auto& buf = m_buffer[id];
                const std::uint64_t height = target->height();
                buf.erase(buf.begin(), buf.lower_bound(height));
                auto it = buf.find(height);
                if (it == buf.end() || !ready(it->second))
                    continue;
                next = std::move(it->second);
                buf.erase(it);
            }
            if (id == identity::kGovernanceChannel && next->header.height == 0 &&
                m_options.governance_genesis && next->hash != *m_options.governance_genesis)
            {
                std::lock_guard lock(m_state_mutex);
                m_last_error = "rejected governance genesis with unexpected digest";
                continue;
            }
            try
            {
                ledger::Block copy = *next;
                auto outcome = target->commit(std::move(copy), make_tx_check(m_history));
                after_commit(*next, outcome);
                ++committed;
                progress = true;
            }
            catch (const Error& e)
            {
                std::lock_guard lock(m_state_mutex);
                m_last_error = id + "@" + std::to_string(next->header.height) + ": " + e.what();
            }
        }
    }
    return committed;
}

std::optional<TxStatus> Peer::find_tx(const std::string& tx_id) const
{
    std::vector<std::pair<std::string, const ledger::ChannelLedger*>> all;
    {
        std::lock_guard lock(m_state_mutex);
        for (const auto& [id, l] : m_ledgers)
            all.emplace_back(id, l.get());
    }
    for (const auto& [id, l] : all)
        if (auto c = l->find_tx(tx_id))
            return TxStatus{id, *c};
    return std::nullopt;
}

std::optional<TxStatus> Peer::wait_for_tx(const std::string& tx_id, std::chrono::milliseconds timeout) const
{
    auto deadline = std::chrono::steady_clock::now() + timeout;
    std::unique_lock lock(m_commit_mutex);
    while (true)
    {
        if (auto s = find_tx(tx_id))
            return s;
        if (m_commit_cv.wait_until(lock, deadline) == std::cv_status::timeout)
            return find_tx(tx_id);
    }
}

std::optional<std::string> Peer::last_error() const
{
    std::lock_guard lock(m_state_mutex);
    return m_last_error;
}

}  // namespace grainledger::network
