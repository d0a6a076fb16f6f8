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

#include "grainledger/network/peer.hpp"

#include <functional>
#include <map>
#include <string>

namespace grainledger::network
{
/// Signing keys of the participants a node acts for.
using Keystore = std::map<std::string, identity::KeyPair>;

class Endorser
{
public:
    virtual ~Endorser() = default;
    virtual ProposalResponse endorse(const ledger::TransactionEnvelope& envelope) = 0;
};

class OrdererClient
{
public:
    virtual ~OrdererClient() = default;
    virtual void submit(const ledger::TransactionRecord& record) = 0;
    virtual void open_channel(const ledger::TransactionRecord& record) = 0;
};

/// Endorser backed by a peer in the same process.
class LocalEndorser : public Endorser
{
public:
    explicit LocalEndorser(const Peer& peer) : m_peer(peer) {}
    ProposalResponse endorse(const ledger::TransactionEnvelope& envelope) override { return m_peer.endorse(envelope); }

private:
    const Peer& m_peer;
};

struct SubmitOutcome
{
    std::string tx_id;
    bool aborted = false;       // ordered as an abort record, will commit INVALID
    std::string abort_reason;   // e.g. "AssetNotFound: asset not found: ..."
};

/// Client side of execute-order-validate for one node: signs proposals with
/// node-held participant keys, collects endorsements from channel members and
/// forwards the transaction to the orderer.
class Gateway
{
public:
    /// Returns null when the node cannot be reached.
    using EndorserFor = std::function<Endorser*(const std::string& node_id)>;
    using Clock = std::function<std::int64_t()>;

    Gateway(const Peer& local, const Keystore& keys, EndorserFor endorsers, OrdererClient& orderer, Clock clock);

    /// Builds and signs an envelope. Throws Unauthorized (no key or identity),
    /// RevokedIdentity, NotChannelMember, AclDenied.
    ledger::TransactionEnvelope propose(const std::string& participant, const std::string& channel_id,
        const std::string& contract_id, const std::string& operation, const Document& args) const;

    /// Full submission. Contract aborts are ordered as abort records and
    /// reported in the outcome; every other failure throws (PolicyNotMet,
    /// EndorsementMismatch, UnknownContract, ...).
    SubmitOutcome submit(const std::string& participant, const std::string& channel_id,
        const std::string& contract_id, const std::string& operation, const Document& args);

    /// Endorses an already-signed envelope and orders it.
    SubmitOutcome submit_envelope(const ledger::TransactionEnvelope& envelope);

    /// Admin-signed genesis record deploying `def` on a new channel,
    /// simulated against empty state.
    ledger::TransactionRecord genesis_record(const std::string& admin, const std::string& channel_id,
        const contract::ContractDefinition& def, const contract::ContractCatalog& catalog) const;

private:
    const Peer& m_local;
    const Keystore& m_keys;
    EndorserFor m_endorsers;
    OrdererClient& m_orderer;
    Clock m_clock;
};

}  // namespace grainledger::network
