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
#include "grainledger/ledger/types.hpp"
#include "grainledger/common/error.hpp"

namespace grainledger::ledger
{
namespace
{
const Document& field(const Document& obj, const char* name)
{
    if (!obj.is_object())
        fail(ErrorCode::BadRecord, std::string("expected object holding '") + name + "'");
    auto it = obj.find(name);
    if (it == obj.end())
        fail(ErrorCode::BadRecord, std::string("missing field '") + name + "'");
    return *it;
}

template <typename T>
T get(const Document& obj, const char* name)
{
    const Document& v = field(obj, name);
    try
    {
        if constexpr (std::is_same_v<T, std::string>)
        {
            if (!v.is_string())
                fail(ErrorCode::BadRecord, std::string("field '") + name + "' is not a string");
        }
        else if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>)
        {
            if (!v.is_number_integer())
                fail(ErrorCode::BadRecord, std::string("field '") + name + "' is not an integer");
            if constexpr (std::is_unsigned_v<T>)
                if (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)
                    fail(ErrorCode::BadRecord, std::string("field '") + name + "' is negative");
        }
        else if constexpr (std::is_same_v<T, bool>)
        {
            if (!v.is_boolean())
                fail(ErrorCode::BadRecord, std::string("field '") + name + "' is not a boolean");
        }
        return v.get<T>();
    }
    catch (const nlohmann::json::exception& e)
    {
        fail(ErrorCode::BadRecord, std::string("field '") + name + "': " + e.what());
    }
}

const Document& array_field(const Document& obj, const char* name)
{
    const Document& v = field(obj, name);
    if (!v.is_array())
        fail(ErrorCode::BadRecord, std::string("field '") + name + "' is not an array");
    return v;
}

Digest digest_field(const Document& obj, const char* name)
{
    try
    {
        return Digest::from_hex(get<std::string>(obj, name));
    }
    catch (const Error& e)
    {
        fail(ErrorCode::BadRecord, std::string("field '") + name + "': " + e.message());
    }
}

}  // namespace

Document to_document(const Signature& s)
{
    return {{"bytes", to_hex(s.bytes)}, {"scheme", s.scheme}};
}

Signature signature_from_document(const Document& doc)
{
    Signature s;
    s.scheme = get<std::string>(doc, "scheme");
    try
    {
        s.bytes = from_hex(get<std::string>(doc, "bytes"));
    }
    catch (const Error& e)
    {
        fail(ErrorCode::BadRecord, "signature bytes: " + e.message());
    }
    return s;
}

Document to_document(const Version& v)
{
    return Document::array({v.height, v.tx_index});
}

Version version_from_document(const Document& doc)
{
    if (!doc.is_array() || doc.size() != 2 || !doc[0].is_number_unsigned() ||
        !doc[1].is_number_unsigned())
        fail(ErrorCode::BadRecord, "version must be [height, tx_index]");
    return {doc[0].get<std::uint64_t>(), doc[1].get<std::uint32_t>()};
}

std::string TransactionEnvelope::signing_bytes() const
{
    return canonicalize({
        {"args", args},
        {"channel_id", channel_id},
        {"contract_id", contract_id},
        {"operation", operation},
        {"submitter", submitter},
        {"timestamp", timestamp},
    });
}

Digest TransactionEnvelope::compute_tx_id() const
{
    return hash_bytes(signing_bytes());
}

Document TransactionEnvelope::to_document() const
{
    return {
        {"args", args},
        {"channel_id", channel_id},
        {"contract_id", contract_id},
        {"operation", operation},
        {"signature", ledger::to_document(signature)},
        {"submitter", submitter},
        {"timestamp", timestamp},
        {"tx_id", tx_id},
    };
}

TransactionEnvelope TransactionEnvelope::from_document(const Document& doc)
{
    TransactionEnvelope env;
    env.tx_id = get<std::string>(doc, "tx_id");
    env.channel_id = get<std::string>(doc, "channel_id");
    env.contract_id = get<std::string>(doc, "contract_id");
    env.operation = get<std::string>(doc, "operation");
    env.args = field(doc, "args");
    env.submitter = get<std::string>(doc, "submitter");
    env.signature = signature_from_document(field(doc, "signature"));
    env.timestamp = get<std::int64_t>(doc, "timestamp");
    return env;
}

Digest ReadWriteSet::digest() const
{
    return hash_bytes(canonicalize(to_document()));
}

Document ReadWriteSet::to_document() const
{
    Document reads_doc = Document::array();
    for (const auto& r : reads)
        reads_doc.push_back(
            {{"key", r.key}, {"version", r.version ? ledger::to_document(*r.version) : Document()}});
    Document writes_doc = Document::array();
    for (const auto& w : writes)
        writes_doc.push_back({{"key", w.key}, {"value", w.value}});
    Document events_doc = Document::array();
    for (const auto& e : events)
        events_doc.push_back(
            {{"event_name", e.event_name}, {"payload", e.payload}, {"tx_id", e.tx_id}});
    return {
        {"abort_reason", abort_reason},
        {"events", std::move(events_doc)},
        {"reads", std::move(reads_doc)},
        {"writes", std::move(writes_doc)},
    };
}

ReadWriteSet ReadWriteSet::from_document(const Document& doc)
{
    ReadWriteSet rw;
    rw.abort_reason = get<std::string>(doc, "abort_reason");
    for (const auto& r : array_field(doc, "reads"))
    {
        const Document& v = field(r, "version");
        rw.reads.push_back({get<std::string>(r, "key"),
            v.is_null() ? std::nullopt : std::optional<Version>(version_from_document(v))});
    }
    for (const auto& w : array_field(doc, "writes"))
        rw.writes.push_back({get<std::string>(w, "key"), field(w, "value")});
    for (const auto& e : array_field(doc, "events"))
        rw.events.push_back(
            {get<std::string>(e, "event_name"), field(e, "payload"), get<std::string>(e, "tx_id")});
    return rw;
}

std::string Endorsement::signing_bytes(const std::string& tx_id, const Digest& rwset_digest)
{
    return canonicalize({{"rwset_digest", rwset_digest.hex()}, {"tx_id", tx_id}});
}

Document Endorsement::to_document() const
{
    return {
        {"node_id", node_id},
        {"org", org},
        {"rwset_digest", rwset_digest.hex()},
        {"signature", ledger::to_document(signature)},
    };
}

Endorsement Endorsement::from_document(const Document& doc)
{
    Endorsement e;
    e.node_id = get<std::string>(doc, "node_id");
    e.org = get<std::string>(doc, "org");
    e.rwset_digest = digest_field(doc, "rwset_digest");
    e.signature = signature_from_document(field(doc, "signature"));
    return e;
}

Digest TransactionRecord::digest() const
{
    return hash_bytes(canonicalize(to_document()));
}

Document TransactionRecord::to_document() const
{
    Document endorsements_doc = Document::array();
    for (const auto& e : endorsements)
        endorsements_doc.push_back(e.to_document());
    return {
        {"endorsements", std::move(endorsements_doc)},
        {"envelope", envelope.to_document()},
        {"rwset", rwset.to_document()},
    };
}

TransactionRecord TransactionRecord::from_document(const Document& doc)
{
    TransactionRecord rec;
    rec.envelope = TransactionEnvelope::from_document(field(doc, "envelope"));
    rec.rwset = ReadWriteSet::from_document(field(doc, "rwset"));
    for (const auto& e : array_field(doc, "endorsements"))
        rec.endorsements.push_back(Endorsement::from_document(e));
    return rec;
}

Document BlockHeader::to_document() const
{
    return {
        {"channel_id", channel_id},
        {"created_at", created_at},
        {"governance_height", governance_height},
        {"height", height},
        {"merkle_root", merkle_root.hex()},
        {"prev_hash", prev_hash.hex()},
    };
}

Digest BlockHeader::digest() const
{
    return hash_bytes(canonicalize(to_document()));
}

Digest Block::compute_merkle_root() const
{
    std::vector<Digest> leaves;
    leaves.reserve(transactions.size());
    for (const auto& tx : transactions)
        leaves.push_back(tx.digest());
    return merkle_root(leaves);
}

void Block::seal()
{
    header.merkle_root = compute_merkle_root();
    hash = header.digest();
}

Document Block::to_document() const
{
    Document doc = header.to_document();
    doc["hash"] = hash.hex();
    Document txs = Document::array();
    for (const auto& tx : transactions)
        txs.push_back(tx.to_document());
    doc["transactions"] = std::move(txs);
    Document flags = Document::array();
    for (const auto& v : validity)
        flags.push_back({{"reason", v.reason}, {"valid", v.valid}});
    doc["validity"] = std::move(flags);
    return doc;
}

Block Block::from_document(const Document& doc)
{
    Block b;
    b.header.height = get<std::uint64_t>(doc, "height");
    b.header.prev_hash = digest_field(doc, "prev_hash");
    b.header.merkle_root = digest_field(doc, "merkle_root");
    b.header.channel_id = get<std::string>(doc, "channel_id");
    b.header.created_at = get<std::int64_t>(doc, "created_at");
    b.header.governance_height = get<std::uint64_t>(doc, "governance_height");
    b.hash = digest_field(doc, "hash");
    for (const auto& tx : array_field(doc, "transactions"))
        b.transactions.push_back(TransactionRecord::from_document(tx));
    for (const auto& v : array_field(doc, "validity"))
        b.validity.push_back({get<bool>(v, "valid"), get<std::string>(v, "reason")});
    if (!b.validity.empty() && b.validity.size() != b.transactions.size())
        fail(ErrorCode::BadRecord, "validity metadata does not match transaction count");
    return b;
}

}  // namespace grainledger::ledger
