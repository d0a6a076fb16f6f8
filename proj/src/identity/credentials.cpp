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
#include "grainledger/identity/credentials.hpp"
#include "grainledger/common/error.hpp"
#include "grainledger/identity/keys.hpp"
#include "grainledger/ledger/canonical.hpp"

#include <sodium.h>

#include <fstream>
#include <sstream>

namespace grainledger::identity
{
std::string hash_password(std::string_view password)
{
    ensure_sodium();
    char out[crypto_pwhash_STRBYTES];
    if (crypto_pwhash_str(out, password.data(), password.size(), crypto_pwhash_OPSLIMIT_INTERACTIVE,
            crypto_pwhash_MEMLIMIT_INTERACTIVE) != 0)
        fail(ErrorCode::Io, "password hashing ran out of memory");
    return out;
}

bool verify_password(const std::string& hash, std::string_view password)
{
    ensure_sodium();
    return crypto_pwhash_str_verify(hash.c_str(), password.data(), password.size()) == 0;
}

CredentialStore CredentialStore::load(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorCode::Io, "cannot read " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    CredentialStore store;
    auto doc = ledger::parse_document(buf.str());
    if (!doc.is_object())
        fail(ErrorCode::BadConfig, path.string() + " must hold a JSON object");
    for (const auto& [id, hash] : doc.items())
        store.m_hashes[id] = hash.get<std::string>();
    return store;
}

void CredentialStore::save(const std::filesystem::path& path) const
{
    ledger::Document doc = ledger::Document::object();
    for (const auto& [id, hash] : m_hashes)
        doc[id] = hash;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        fail(ErrorCode::Io, "cannot write " + path.string());
    out << ledger::canonicalize(doc) << "\n";
    std::filesystem::permissions(path, std::filesystem::perms::owner_read | std::filesystem::perms::owner_write);
}

void CredentialStore::set(const std::string& participant_id, std::string_view password)
{
    m_hashes[participant_id] = hash_password(password);
}

bool CredentialStore::verify(const std::string& participant_id, std::string_view password) const
{
    auto it = m_hashes.find(participant_id);
    return it != m_hashes.end() && verify_password(it->second, password);
}

}  // namespace grainledger::identity
