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

#include "grainledger/common/bytes.hpp"
#include "grainledger/ledger/canonical.hpp"
#include "grainledger/ledger/digest.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace grainledger::ledger
{
/// Commit position of the transaction that last wrote a key.
struct Version
{
    std::uint64_t height = 0;
    std::uint32_t tx_index = 0;

    auto operator<=>(const Version&) const = default;
};

Document to_document(const Version& v);
Version version_from_document(const Document& doc);

struct Signature
{
    std::string scheme;
    Bytes bytes;

    bool operator==(const Signature&) const = default;
};

Document to_document(const Signature& s);
/// Throws BadRecord.
Signature signature_from_document(const Document& doc);

struct TransactionEnvelope
{
    std::string tx_id;  // hex digest
    std::string channel_id;
    std::string contract_id;
    std::string operation;
    Document args = Document::object();
    std::string submitter;
    Signature signature;
    std::int64_t timestamp = 0;  // UTC ms

    /// Canonical bytes covered by tx_id and the submitter signature.
    std::string signing_bytes() const;
    Digest compute_tx_id() const;

    Document to_document() const;
    static TransactionEnvelope from_document(const Document& doc);
};

struct KeyRead
{
    std::string key;
    std::optional<Version> version;  // nullopt: key was absent

    bool operator==(const KeyRead&) const = default;
};

struct KeyWrite
{
    std::string key;
    Document value;

    bool operator==(const KeyWrite&) const = default;
};

struct Event
{
    std::string event_name;
    Document payload;
    std::string tx_id;

    bool operator==(const Event&) const = default;
};

/// Simulation output; reads and writes are sorted by key, events keep emit order.
struct ReadWriteSet
{
    std::vector<KeyRead> reads;
    std::vector<KeyWrite> writes;
    std::vector<Event> events;
    std::string abort_reason;  // non-empty when the contract aborted

    bool aborted() const { return !abort_reason.empty(); }
    Digest digest() const;
    Document to_document() const;
    static ReadWriteSet from_document(const Document& doc);

    bool operator==(const ReadWriteSet&) const = default;
};

struct Endorsement
{
    std::string node_id;
    std::string org;
    Digest rwset_digest;
    Signature signature;

    /// Bytes the endorsing node signs: binds the simulation result to one tx.
    static std::string signing_bytes(const std::string& tx_id, const Digest& rwset_digest);
    Document to_document() const;
    static Endorsement from_document(const Document& doc);
};

struct TransactionRecord
{
    TransactionEnvelope envelope;
    ReadWriteSet rwset;
    std::vector<Endorsement> endorsements;

    /// Merkle leaf; covers envelope, rwset and endorsements.
    Digest digest() const;
    Document to_document() const;
    static TransactionRecord from_document(const Document& doc);
};

struct TxValidity
{
    bool valid = false;
    std::string reason;

    bool operator==(const TxValidity&) const = default;
};

struct BlockHeader
{
    std::uint64_t height = 0;
    Digest prev_hash;
    Digest merkle_root;
    std::string channel_id;
    std::int64_t created_at = 0;
    /// Governance-channel tip when the block was cut; identities, node keys
    /// and channel policies are resolved at this height during validation.
    std::uint64_t governance_height = 0;

    Document to_document() const;
    Digest digest() const;
};

/// A batch of ordered transactions. `validity` is commit metadata filled in by
/// each peer; it is outside the header digest and re-derived on audit.
struct Block
{
    BlockHeader header;
    std::vector<TransactionRecord> transactions;
    std::vector<TxValidity> validity;
    Digest hash;  // stored header digest

    /// Recomputes merkle_root and hash from the current contents.
    void seal();
    Digest compute_merkle_root() const;

    Document to_document() const;
    static Block from_document(const Document& doc);
};

}  // namespace grainledger::ledger
