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

#include "grainledger/identity/keys.hpp"
#include "grainledger/ledger/types.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace grainledger::identity
{
enum class Org
{
    cooperative,
    warehouse,
    bank,
    trading,
    food_processor,
};

enum class Role
{
    producer,
    qa_operator,
    warehouse_operator,
    trader,
    bank_agent,
    admin,
};

std::string_view to_string(Org org);
std::string_view to_string(Role role);
/// Throw Error(InvalidArgument) outside the closed vocabularies.
Org parse_org(std::string_view text);
Role parse_role(std::string_view text);

struct Participant
{
    std::string participant_id;
    Org org = Org::cooperative;
    Role role = Role::producer;
    std::string display_name;

    ledger::Document to_document() const;
    static Participant from_document(const ledger::Document& doc);
};

struct Identity
{
    std::string participant_id;
    Bytes public_key;
    std::string scheme{kEd25519};
    std::int64_t issued_at = 0;
    bool revoked = false;

    /// On-ledger record (includes the revoked flag).
    ledger::Document to_document() const;
    static Identity from_document(const ledger::Document& doc);

    /// Identity file: {participant_id, scheme, public_key, issued_at}.
    ledger::Document to_file_document() const;
};

void write_identity_file(const std::filesystem::path& path, const Identity& id);
Identity read_identity_file(const std::filesystem::path& path);
/// Key file: hex-encoded 32-byte seed.
void write_key_file(const std::filesystem::path& path, const KeyPair& key);
KeyPair read_key_file(const std::filesystem::path& path);

/// Signs the canonical envelope bytes (tx_id and signature excluded).
/// Throws RevokedIdentity when `id` is revoked, Unauthorized when `key`
/// does not belong to `id`.
ledger::Signature sign_envelope(
    const ledger::TransactionEnvelope& env, const KeyPair& key, const Identity& id);
bool verify_envelope(const ledger::TransactionEnvelope& env, std::span<const std::uint8_t> public_key);

}  // namespace grainledger::identity
