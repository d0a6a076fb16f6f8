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
#include "grainledger/identity/registry.hpp"
#include "grainledger/network/topology.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace grainledger::network
{
inline constexpr std::string_view kGovernanceContract = "governance";
inline constexpr std::string_view kOrdererKey = "com.gebn.Orderer#default";

/// A node's registered signing key, used to check endorsements.
struct NodeRecord
{
    std::string node_id;
    Org org = Org::cooperative;
    Bytes public_key;
    std::string scheme{identity::kEd25519};

    Document to_document() const;
    static NodeRecord from_document(const Document& doc);
};

/// Lookups on a governance view (current state or as of a height).
std::optional<ChannelConfig> channel_at(const identity::GovernanceView& view, std::string_view id);
std::optional<EndorsementPolicy> policy_at(const identity::GovernanceView& view, std::string_view id);
std::optional<NodeRecord> node_at(const identity::GovernanceView& view, std::string_view id);

/// Channel, policy and node tables of the committed governance state.
struct Directory
{
    std::map<std::string, ChannelConfig> channels;
    std::map<std::string, EndorsementPolicy> policies;
    std::map<std::string, NodeRecord> nodes;
    std::string orderer_node;

    static Directory from_state(const ledger::StateReader& state);

    const ChannelConfig* channel(std::string_view id) const;
    bool is_member(Org org, std::string_view channel_id) const;
    /// Registered nodes whose org belongs to the channel, by node id.
    std::vector<NodeRecord> members(std::string_view channel_id) const;
};

/// Governance operations, all admin-only (Unauthorized otherwise):
///   register_participant  Participant fields          DuplicateId
///   issue_identity        participant_id, public_key  UnknownParticipant, DuplicateId
///   revoke_identity       participant_id              UnknownParticipant
///   register_node         NodeRecord fields           DuplicateId
///   set_policy            EndorsementPolicy fields
///   create_channel        ChannelConfig fields        DuplicateChannel
///   set_acl               {rules}
contract::ContractDefinition governance_contract();

/// Error for a transaction whose submitter identity is revoked: governance
/// changes signed by a revoked admin are Unauthorized, anything else is
/// RevokedIdentity.
ErrorCode revoked_submitter_error(std::string_view contract_id);

}  // namespace grainledger::network
