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

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace grainledger::identity
{
/// Salted, memory-hard password hash in the self-describing `$argon2id$...` form.
std::string hash_password(std::string_view password);
bool verify_password(const std::string& hash, std::string_view password);

/// Login credentials of the participants a node serves, as {participant_id: hash}.
class CredentialStore
{
public:
    static CredentialStore load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;

    void set(const std::string& participant_id, std::string_view password);
    bool contains(const std::string& participant_id) const { return m_hashes.contains(participant_id); }
    /// False for unknown participants and wrong passwords.
    bool verify(const std::string& participant_id, std::string_view password) const;

private:
    std::map<std::string, std::string> m_hashes;
};

}  // namespace grainledger::identity
