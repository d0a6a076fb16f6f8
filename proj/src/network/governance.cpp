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
#include "grainledger/network/governance.hpp"
#include "grainledger/common/error.hpp"

namespace grainledger::network
{
using contract::TxContext;
namespace keys = identity::keys;

Document NodeRecord::to_document() const
{
    return {{"node_id", node_id}, {"org", to_string(org)}, {"public_key", to_hex(public_key)}, {"scheme", scheme}};
}

NodeRecord NodeRecord::from_document(const Document& doc)
{
    NodeRecord n;
    n.node_id = doc.at("node_id").get<std::string>();
    n.org = identity::parse_org(doc.at("org").get<std::string>());
    n.public_key = from_hex(doc.at("public_key").get<std::string>());
    n.scheme = doc.value("scheme", std::string(identity::kEd25519));
    if (n.public_key.size() != 32)
        fail(ErrorCode::BadFormat, "node public key must be 32 bytes");
    return n;
}

std::optional<ChannelConfig> channel_at(const identity::GovernanceView& view, std::string_view id)
{
    auto doc = view.get(keys::channel(id));
    return doc ? std::optional<ChannelConfig>(ChannelConfig::from_document(*doc)) : std::nullopt;
}

std::optional<EndorsementPolicy> policy_at(const identity::GovernanceView& view, std::string_view id)
{
    auto doc = view.get(keys::policy(id));
    return doc ? std::optional<EndorsementPolicy>(EndorsementPolicy::from_document(*doc)) : std::nullopt;
}

std::optional<NodeRecord> node_at(const identity::GovernanceView& view, std::string_view id)
{
    auto doc = view.get(keys::node(id));
    return doc ? std::optional<NodeRecord>(NodeRecord::from_document(*doc)) : std::nullopt;
}

Directory Directory::from_state(const ledger::StateReader& state)
{
    Directory d;
    state.scan(std::string(keys::kChannelRegistry) + "#", [&](const std::string&, const auto& entry) {
        auto c = ChannelConfig::from_document(entry.value);
        d.channels.emplace(c.channel_id, std::move(c));
    });
    state.scan(std::string(keys::kPolicyRegistry) + "#", [&](const std::string&, const auto& entry) {
        auto p = EndorsementPolicy::from_document(entry.value);
        d.policies.emplace(p.policy_id, std::move(p));
    });
    state.scan(std::string(keys::kNodeRegistry) + "#", [&](const std::string&, const auto& entry) {
        auto n = NodeRecord::from_document(entry.value);
        d.nodes.emplace(n.node_id, std::move(n));
    });
    if (const auto* o = state.find(std::string(kOrdererKey)))
        d.orderer_node = o->value.at("node_id").get<std::string>();
    return d;
}

const ChannelConfig* Directory::channel(std::string_view id) const
{
    auto it = channels.find(std::string(id));
    return it == channels.end() ? nullptr : &it->second;
}

bool Directory::is_member(Org org, std::string_view channel_id) const
{
    const auto* c = channel(channel_id);
    return c && c->has_member(org);
}

std::vector<NodeRecord> Directory::members(std::string_view channel_id) const
{
    std::vector<NodeRecord> out;
    const auto* c = channel(channel_id);
    if (!c)
        return out;
    for (const auto& [_, n] : nodes)
        if (c->has_member(n.org))
            out.push_back(n);
    return out;
}

ErrorCode revoked_submitter_error(std::string_view contract_id)
{
    return contract_id == kGovernanceContract ? ErrorCode::Unauthorized : ErrorCode::RevokedIdentity;
}

namespace
{
void require_admin(TxContext& ctx)
{
    if (ctx.invocation().role != Role::admin)
        fail(ErrorCode::Unauthorized, "governance changes require the admin role");
}

void register_participant(TxContext& ctx, const Document& args)
{
    require_admin(ctx);
    auto p = identity::Participant::from_document(args);
    if (p.participant_id.empty())
        fail(ErrorCode::InvalidArgument, "participant_id must be non-empty");
    std::string key = keys::participant(p.participant_id);
    if (ctx.get_state(key))
        fail(ErrorCode::DuplicateId, "participant " + p.participant_id + " already registered");
    ctx.put_state(key, p.to_document());
    ctx.emit("ParticipantRegistered", {{"participant_id", p.participant_id}});
}

void issue_identity(TxContext& ctx, const Document& args)
{
    require_admin(ctx);
    identity::Identity id;
    id.participant_id = args.at("participant_id").get<std::string>();
    id.public_key = from_hex(args.at("public_key").get<std::string>());
    id.scheme = args.value("scheme", std::string(identity::kEd25519));
    id.issued_at = args.value("issued_at", ctx.invocation().timestamp);
    if (id.scheme != identity::kEd25519 || id.public_key.size() != 32)
        fail(ErrorCode::BadFormat, "identity must carry a 32-byte ed25519 public key");
    if (!ctx.get_state(keys::participant(id.participant_id)))
        fail(ErrorCode::UnknownParticipant, "participant " + id.participant_id + " is not registered");
    std::string key = keys::identity(id.participant_id);
    if (auto current = ctx.get_state(key); current && !current->value("revoked", false))
        fail(ErrorCode::DuplicateId, "participant " + id.participant_id + " already has an active identity");
    ctx.put_state(key, id.to_document());
    ctx.emit("IdentityIssued", {{"participant_id", id.participant_id}});
}

void revoke_identity(TxContext& ctx, const Document& args)
{
    require_admin(ctx);
    std::string participant_id = args.at("participant_id").get<std::string>();
    std::string key = keys::identity(participant_id);
    auto current = ctx.get_state(key);
    if (!current)
        fail(ErrorCode::UnknownParticipant, "participant " + participant_id + " has no identity");
    (*current)["revoked"] = true;
    ctx.put_state(key, std::move(*current));
    ctx.emit("IdentityRevoked", {{"participant_id", participant_id}});
}

void register_node(TxContext& ctx, const Document& args)
{
    require_admin(ctx);
    NodeRecord n = NodeRecord::from_document(args);
    std::string key = keys::node(n.node_id);
    if (ctx.get_state(key))
        fail(ErrorCode::DuplicateId, "node " + n.node_id + " already registered");
    ctx.put_state(key, n.to_document());
}

void set_policy(TxContext& ctx, const Document& args)
{
    require_admin(ctx);
    EndorsementPolicy p = EndorsementPolicy::from_document(args);
    std::string key = keys::policy(p.policy_id);
    ctx.get_state(key);
    ctx.put_state(key, p.to_document());
}

void create_channel(TxContext& ctx, const Document& args)
{
    require_admin(ctx);
    ChannelConfig c = ChannelConfig::from_document(args);
    if (c.channel_id.empty() || c.member_orgs.empty() || c.batch_max_tx < 1)
        fail(ErrorCode::InvalidArgument, "channel needs an id, member orgs and batch_max_tx >= 1");
    std::string key = keys::channel(c.channel_id);
    if (ctx.get_state(key))
        fail(ErrorCode::DuplicateChannel, "channel " + c.channel_id + " already exists");
    if (!ctx.get_state(keys::policy(c.endorsement_policy)))
        fail(ErrorCode::InvalidArgument, "unknown endorsement policy " + c.endorsement_policy);
    auto orderer = ctx.get_state(std::string(kOrdererKey));
    if (orderer && !c.has_member(identity::parse_org(orderer->at("org").get<std::string>())))
        fail(ErrorCode::InvalidArgument, "the orderer's org must be a member of every channel");
    ctx.put_state(key, c.to_document());
    ctx.emit("ChannelCreated", {{"channel_id", c.channel_id}});
}

void set_acl(TxContext& ctx, const Document& args)
{
    require_admin(ctx);
    auto acl = identity::AccessControlList::from_document(args);
    std::string key(keys::kAcl);
    ctx.get_state(key);
    ctx.put_state(key, acl.to_document());
}

}  // namespace

contract::ContractDefinition governance_contract()
{
    contract::ContractDefinition def;
    def.contract_id = std::string(kGovernanceContract);
    def.version = 1;
    def.endorsement_policy_ref = "majority";
    def.operations = {
        {"register_participant", register_participant},
        {"issue_identity", issue_identity},
        {"revoke_identity", revoke_identity},
        {"register_node", register_node},
        {"set_policy", set_policy},
        {"create_channel", create_channel},
        {"set_acl", set_acl},
    };
    return def;
}

}  // namespace grainledger::network
