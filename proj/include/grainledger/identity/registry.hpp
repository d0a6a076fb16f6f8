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

#include "grainledger/identity/acl.hpp"
#include "grainledger/identity/participant.hpp"
#include "grainledger/ledger/state_history.hpp"
#include "grainledger/ledger/world_state.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace grainledger::identity
{
/// The governance channel carries membership, identities, node keys, channel
/// definitions and the ACL.
inline constexpr std::string_view kGovernanceChannel = "governance";

namespace keys
{
inline constexpr std::string_view kParticipantRegistry = "com.gebn.Participant";
inline constexpr std::string_view kIdentityRegistry = "com.gebn.Identity";
inline constexpr std::string_view kNodeRegistry = "com.gebn.Node";
inline constexpr std::string_view kChannelRegistry = "com.gebn.Channel";
inline constexpr std::string_view kPolicyRegistry = "com.gebn.EndorsementPolicy";
inline constexpr std::string_view kAcl = "com.gebn.AccessControlList#default";

std::string participant(std::string_view id);
std::string identity(std::string_view id);
std::string node(std::string_view id);
std::string channel(std::string_view id);
std::string policy(std::string_view id);
}  // namespace keys

/// Typed read access to governance records, either current or as of a height.
class GovernanceView
{
public:
    using Lookup = std::function<std::optional<ledger::Document>(const std::string& key)>;

    explicit GovernanceView(Lookup lookup) : m_lookup(std::move(lookup)) {}
    static GovernanceView at(const ledger::StateHistory& history, std::uint64_t height);
    static GovernanceView current(const ledger::StateReader& state);

    std::optional<ledger::Document> get(const std::string& key) const { return m_lookup(key); }
    std::optional<Participant> participant(std::string_view id) const;
    std::optional<Identity> identity(std::string_view id) const;
    /// Identity that is registered and not revoked.
    std::optional<Identity> active_identity(std::string_view id) const;
    AccessControlList acl() const;

private:
    Lookup m_lookup;
};

}  // namespace grainledger::identity
