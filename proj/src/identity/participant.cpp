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
#include "grainledger/identity/participant.hpp"
#include "grainledger/common/error.hpp"

#include <array>
#include <fstream>
#include <utility>

namespace grainledger::identity
{
namespace
{
constexpr std::array<std::pair<Org, std::string_view>, 5> kOrgs{{
    {Org::cooperative, "cooperative"},
    {Org::warehouse, "warehouse"},
    {Org::bank, "bank"},
    {Org::trading, "trading"},
    {Org::food_processor, "food_processor"},
}};

constexpr std::array<std::pair<Role, std::string_view>, 6> kRoles{{
    {Role::producer, "producer"},
    {Role::qa_operator, "qa_operator"},
    {Role::warehouse_operator, "warehouse_operator"},
    {Role::trader, "trader"},
    {Role::bank_agent, "bank_agent"},
    {Role::admin, "admin"},
}};

std::string read_text(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorCode::Io, "cannot read " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out)
        fail(ErrorCode::Io, "cannot write " + path.string());
}

std::string string_field(const ledger::Document& doc, const char* name)
{
    if (!doc.is_object() || !doc.contains(name) || !doc[name].is_string())
        fail(ErrorCode::InvalidArgument, std::string("missing string field '") + name + "'");
    return doc[name].get<std::string>();
}

}  // namespace

std::string_view to_string(Org org)
{
    for (auto [o, name] : kOrgs)
        if (o == org)
            return name;
    return "unknown";
}

std::string_view to_string(Role role)
{
    for (auto [r, name] : kRoles)
        if (r == role)
            return name;
    return "unknown";
}

Org parse_org(std::string_view text)
{
    for (auto [o, name] : kOrgs)
        if (name == text)
            return o;
    fail(ErrorCode::InvalidArgument, "unknown org '" + std::string(text) + "'");
}

Role parse_role(std::string_view text)
{
    for (auto [r, name] : kRoles)
        if (name == text)
            return r;
    fail(ErrorCode::InvalidArgument, "unknown role '" + std::string(text) + "'");
}

ledger::Document Participant::to_document() const
{
    return {
        {"display_name", display_name},
        {"org", to_string(org)},
        {"participant_id", participant_id},
        {"role", to_string(role)},
    };
}

Participant Participant::from_document(const ledger::Document& doc)
{
    Participant p;
    p.participant_id = string_field(doc, "participant_id");
    if (p.participant_id.empty())
        fail(ErrorCode::InvalidArgument, "participant_id must not be empty");
    p.org = parse_org(string_field(doc, "org"));
    p.role = parse_role(string_field(doc, "role"));
    p.display_name = doc.value("display_name", std::string());
    return p;
}

ledger::Document Identity::to_document() const
{
    ledger::Document doc = to_file_document();
    doc["revoked"] = revoked;
    return doc;
}

ledger::Document Identity::to_file_document() const
{
    return {
        {"issued_at", issued_at},
        {"participant_id", participant_id},
        {"public_key", to_hex(public_key)},
        {"scheme", scheme},
    };
}

Identity Identity::from_document(const ledger::Document& doc)
{
    Identity id;
    id.participant_id = string_field(doc, "participant_id");
    id.scheme = string_field(doc, "scheme");
    id.public_key = from_hex(string_field(doc, "public_key"));
    if (id.scheme != kEd25519 || id.public_key.size() != 32)
        fail(ErrorCode::InvalidArgument, "scheme tag does not match key encoding");
    if (!doc.contains("issued_at") || !doc["issued_at"].is_number_integer())
        fail(ErrorCode::InvalidArgument, "missing issued_at");
    id.issued_at = doc["issued_at"].get<std::int64_t>();
    id.revoked = doc.value("revoked", false);
    return id;
}

void write_identity_file(const std::filesystem::path& path, const Identity& id)
{
    write_text(path, ledger::canonicalize(id.to_file_document()));
}

Identity read_identity_file(const std::filesystem::path& path)
{
    return Identity::from_document(ledger::parse_document(read_text(path)));
}

void write_key_file(const std::filesystem::path& path, const KeyPair& key)
{
    write_text(path, to_hex(key.seed()) + "\n");
    std::error_code ec;
    std::filesystem::permissions(path,
        std::filesystem::perms::owner_read | std::filesystem::perms::owner_write,
        std::filesystem::perm_options::replace, ec);
}

KeyPair read_key_file(const std::filesystem::path& path)
{
    std::string text = read_text(path);
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' '))
        text.pop_back();
    return KeyPair::from_seed(from_hex(text));
}

ledger::Signature sign_envelope(
    const ledger::TransactionEnvelope& env, const KeyPair& key, const Identity& id)
{
    if (id.revoked)
        fail(ErrorCode::RevokedIdentity, "identity of " + id.participant_id + " is revoked");
    if (key.public_key() != id.public_key)
        fail(ErrorCode::Unauthorized, "key does not belong to " + id.participant_id);
    return key.sign(env.signing_bytes());
}

bool verify_envelope(const ledger::TransactionEnvelope& env, std::span<const std::uint8_t> public_key)
{
    return verify_signature(env.signature, env.signing_bytes(), public_key);
}

}  // namespace grainledger::identity
