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

#include "grainledger/common/error.hpp"
#include "grainledger/contract/engine.hpp"
#include "grainledger/ledger/channel_ledger.hpp"
#include "grainledger/ledger/state_history.hpp"
#include "grainledger/network/governance.hpp"

#include <chrono>
#include <condition_variable>
#include <deque>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace grainledger::network
{
/// Simulation result returned by an endorsing peer. Aborted simulations carry
/// the abort reason and no endorsement.
struct ProposalResponse
{
    std::string node_id;
    ledger::ReadWriteSet rwset;
    std::optional<ledger::Endorsement> endorsement;

    Document to_document() const;
    static ProposalResponse from_document(const Document& doc);
};

struct TxStatus
{
    std::string channel_id;
    ledger::CommittedTx committed;

    Document to_document(const std::string& tx_id) const;
};

struct LoggedEvent
{
    std::uint64_t sequence = 0;
    ledger::CommittedEvent event;

    /// {sequence, channel_id, block_height, tx_index, event_name, payload, tx_id}
    Document to_document() const;
};

/// Events of VALID transactions in local commit order, numbered from 1.
class EventLog
{
public:
    void append(const std::vector<ledger::CommittedEvent>& events);
    std::vector<LoggedEvent> since(std::uint64_t after, std::size_t max = SIZE_MAX) const;
    std::uint64_t last() const;
    /// Waits until an event newer than `after` exists; false on timeout.
    bool wait(std::uint64_t after, std::chrono::milliseconds timeout) const;

private:
    mutable std::mutex m_mutex;
    mutable std::condition_variable m_cv;
    std::vector<LoggedEvent> m_events;
};

struct PeerOptions
{
    std::string node_id;
    Org org = Org::cooperative;
    identity::KeyPair key;
    std::optional<std::filesystem::path> data_dir;  // channels/<id>.blocks
    std::optional<ledger::Digest> governance_genesis;
};

/// One organisation's node: endorses proposals against its committed state,
/// validates and commits ordered blocks, and keeps one ledger per channel its
/// org belongs to. Blocks wait until the governance records they reference
/// have been committed locally.
class Peer
{
public:
    Peer(PeerOptions options, const contract::ContractCatalog& catalog);
    Peer(const Peer&) = delete;
    Peer& operator=(const Peer&) = delete;

    /// Replays persisted ledgers (governance first). Throws Error(BadRecord).
    void open();

    const std::string& node_id() const { return m_options.node_id; }
    Org org() const { return m_options.org; }
    const identity::KeyPair& key() const { return m_options.key; }

    /// Throws NotChannelMember, Unauthorized, UnknownContract, UnknownOperation, AclDenied.
    ProposalResponse endorse(const ledger::TransactionEnvelope& envelope) const;

    /// Commits `block` and any buffered successors that became ready. Blocks of
    /// channels the node does not belong to are dropped. Returns the number of
    /// blocks committed.
    std::size_t deliver(ledger::Block block);

    /// Channels held locally with the next height each one needs.
    std::map<std::string, std::uint64_t> next_heights() const;
    bool holds(std::string_view channel_id) const;
    /// Null when the channel is not held.
    const ledger::ChannelLedger* ledger(std::string_view channel_id) const;
    std::vector<std::string> channels() const;

    std::shared_ptr<const Directory> directory() const;
    const ledger::StateHistory& governance_history() const { return m_history; }
    /// Runs `fn(GovernanceView)` over the committed governance state.
    template <typename Fn>
    decltype(auto) with_governance(Fn&& fn) const
    {
        const auto* gov = ledger(identity::kGovernanceChannel);
        if (!gov)
            fail(ErrorCode::UnknownChannel, "governance channel is not initialised on " + node_id());
        return gov->read([&](const ledger::StateReader& state) {
            return std::forward<Fn>(fn)(identity::GovernanceView::current(state));
        });
    }

    std::optional<TxStatus> find_tx(const std::string& tx_id) const;
    /// Waits until `tx_id` is committed locally; nullopt on timeout.
    std::optional<TxStatus> wait_for_tx(const std::string& tx_id, std::chrono::milliseconds timeout) const;

    EventLog& events() { return m_events; }
    const EventLog& events() const { return m_events; }
    /// Most recent commit error (bad block from the orderer), if any.
    std::optional<std::string> last_error() const;

private:
    ledger::ChannelLedger& ensure_ledger(const std::string& channel_id);
    void refresh_directory();
    void after_commit(const ledger::Block& block, const ledger::CommitOutcome& outcome);
    bool ready(const ledger::Block& block) const;

    PeerOptions m_options;
    const contract::ContractCatalog& m_catalog;
    contract::Engine m_engine;

    mutable std::mutex m_commit_mutex;  // one commit at a time
    mutable std::mutex m_state_mutex;   // ledgers, buffers, directory
    mutable std::condition_variable m_commit_cv;
    std::map<std::string, std::unique_ptr<ledger::ChannelLedger>, std::less<>> m_ledgers;
    std::map<std::string, std::map<std::uint64_t, ledger::Block>> m_buffer;
    std::shared_ptr<const Directory> m_directory;
    ledger::StateHistory m_history;
    EventLog m_events;
    std::optional<std::string> m_last_error;
};

}  // namespace grainledger::network
