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
#include "grainledger/network/gateway.hpp"
#include "grainledger/common/error.hpp"

#include <algorithm>
#include <set>

namespace grainledger::network
{
Gateway::Gateway(const Peer& local, const Keystore& keys, EndorserFor endorsers, OrdererClient& orderer, Clock clock)
  : m_local(local), m_keys(keys), m_endorsers(std::move(endorsers)), m_orderer(orderer), m_clock(std::move(clock))
{}

ledger::TransactionEnvelope Gateway::propose(const std::string& participant, const std::string& channel_id,
    const std::string& contract_id, const std::string& operation, const Document& args) const
{
    auto key = m_keys.find(participant);
    if (key == m_keys.end())
        fail(ErrorCode::Unauthorized, m_local.node_id() + " holds no signing key for " + participant);
    if (!m_local.directory()->is_member(m_local.org(), channel_id))
        fail(ErrorCode::NotChannelMember, m_local.node_id() + " is not a member of channel " + channel_id);

    struct Signer
    {
        identity::Identity identity;
        Role role;
        identity::AccessControlList acl;
    };
    Signer signer = m_local.with_governance([&](const identity::GovernanceView& view) {
        auto ident = view.identity(participant);
        if (!ident)
            fail(ErrorCode::Unauthorized, participant + " has no registered identity");
        if (ident->revoked)
            fail(revoked_submitter_error(contract_id), "identity of " + participant + " is revoked");
        auto who = view.participant(participant);
        if (!who)
            fail(ErrorCode::UnknownParticipant, participant);
        return Signer{*ident, who->role, view.acl()};
    });
    if (identity::check_acl(signer.acl, signer.role, contract_id, operation) != identity::Decision::allow)
        fail(ErrorCode::AclDenied,
            std::string(to_string(signer.role)) + " may not call " + contract_id + "." + operation);

    ledger::TransactionEnvelope env;
    env.channel_id = channel_id;
    env.contract_id = contract_id;
    env.operation = operation;
    env.args = args.is_null() ? Document::object() : args;
    env.submitter = participant;
    env.timestamp = m_clock();
    env.tx_id = env.compute_tx_id().hex();
    env.signature = identity::sign_envelope(env, key->second, signer.identity);
    return env;
}

SubmitOutcome Gateway::submit(const std::string& participant, const std::string& channel_id,
    const std::string& contract_id, const std::string& operation, const Document& args)
{
    return submit_envelope(propose(participant, channel_id, contract_id, operation, args));
}

SubmitOutcome Gateway::submit_envelope(const ledger::TransactionEnvelope& env)
{
    auto dir = m_local.directory();
    const ChannelConfig* channel = dir->channel(env.channel_id);
    if (!channel)
        fail(ErrorCode::UnknownChannel, "channel " + env.channel_id + " is not defined");
    auto policy = dir->policies.find(channel->endorsement_policy);
    if (policy == dir->policies.end())
        fail(ErrorCode::PolicyNotMet, "unknown policy " + channel->endorsement_policy);

    ProposalResponse local = m_local.endorse(env);
    if (local.rwset.aborted())
    {
        ledger::ReadWriteSet aborted;
        aborted.abort_reason = local.rwset.abort_reason;
        m_orderer.submit({env, aborted, {}});
        return {env.tx_id, true, local.rwset.abort_reason};
    }

    struct Group
    {
        ledger::ReadWriteSet rwset;
        std::vector<ledger::Endorsement> endorsements;
        std::set<Org> orgs;
    };
    std::map<std::string, Group> groups;
    auto add = [&](ProposalResponse&& r) {
        if (!r.endorsement)
            return;
        auto& g = groups[r.endorsement->rwset_digest.hex()];
        if (g.endorsements.empty())
            g.rwset = std::move(r.rwset);
        g.orgs.insert(identity::parse_org(r.endorsement->org));
        g.endorsements.push_back(std::move(*r.endorsement));
    };
    const std::string local_digest = local.endorsement->rwset_digest.hex();
    add(std::move(local));
    auto satisfied = [&](const Group& g) { return policy_satisfied(policy->second.rule, g.orgs, channel->member_orgs); };

    for (const auto& node : dir->members(env.channel_id))
    {
        if (satisfied(groups[local_digest]))
            break;
        if (node.node_id == m_local.node_id() || groups[local_digest].orgs.contains(node.org))
            continue;
        Endorser* endorser = m_endorsers(node.node_id);
        if (!endorser)
            continue;
        try
        {
            add(endorser->endorse(env));
        }
        catch (const std::exception&)
        {
            // An unreachable or failing endorser only counts against the policy.
        }
    }

    const Group* chosen = satisfied(groups[local_digest]) ? &groups[local_digest] : nullptr;
    for (const auto& [_, g] : groups)
        if (!chosen && satisfied(g))
            chosen = &g;
    if (!chosen)
    {
        if (groups.size() > 1)
            fail(ErrorCode::EndorsementMismatch, "endorsers disagree on the read-write set of " + env.tx_id);
        fail(ErrorCode::PolicyNotMet, std::to_string(groups[local_digest].orgs.size()) + " of " +
                                          std::to_string(channel->member_orgs.size()) + " orgs endorsed " + env.tx_id);
    }
    m_orderer.submit({env, chosen->rwset, chosen->endorsements});
    return {env.tx_id, false, {}};
}

ledger::TransactionRecord Gateway::genesis_record(const std::string& admin, const std::string& channel_id,
    const contract::ContractDefinition& def, const contract::ContractCatalog& catalog) const
{
    auto key = m_keys.find(admin);
    if (key == m_keys.end())
        fail(ErrorCode::Unauthorized, m_local.node_id() + " holds no signing key for " + admin);
    auto [ident, role, acl] = m_local.with_governance([&](const identity::GovernanceView& view) {
        auto ident = view.identity(admin);
        auto who = view.participant(admin);
        if (!ident || !who)
            fail(ErrorCode::Unauthorized, admin + " is not a registered participant");
        return std::make_tuple(*ident, who->role, view.acl());
    });
    if (role != Role::admin)
        fail(ErrorCode::Unauthorized, "only admin may open a channel");

    ledger::TransactionEnvelope env;
    env.channel_id = channel_id;
    env.contract_id = std::string(contract::kLifecycleContract);
    env.operation = "deploy";
    env.args = contract::deploy_args(def);
    env.submitter = admin;
    env.timestamp = m_clock();
    env.tx_id = env.compute_tx_id().hex();
    env.signature = identity::sign_envelope(env, key->second, ident);

    ledger::WorldState empty;
    contract::Engine engine(catalog);
    auto rwset = engine.invoke(env.contract_id, env.operation, env.args,
        {env.tx_id, channel_id, admin, role, env.timestamp}, empty, acl);
    return {env, std::move(rwset), {}};
}

}  // namespace grainledger::network
