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
#include "grainledger/network/validator.hpp"
#include "grainledger/common/error.hpp"

#include <set>

namespace grainledger::network
{
std::optional<std::string> check_endorsements(const ledger::TransactionRecord& record,
    const ChannelConfig& channel, const EndorsementPolicy& policy, const NodeLookup& nodes)
{
    const ledger::Digest digest = record.rwset.digest();
    std::set<Org> orgs;
    for (const auto& e : record.endorsements)
    {
        if (e.rwset_digest != digest)
            return "EndorsementMismatch: " + e.node_id + " endorsed a different read-write set";
        auto node = nodes(e.node_id);
        if (!node || to_string(node->org) != e.org || !channel.has_member(node->org))
            continue;
        if (!identity::verify_signature(e.signature,
                ledger::Endorsement::signing_bytes(record.envelope.tx_id, digest), node->public_key))
            continue;
        orgs.insert(node->org);
    }
    if (!policy_satisfied(policy.rule, orgs, channel.member_orgs))
        return "PolicyNotMet: " + std::to_string(orgs.size()) + " of " +
               std::to_string(channel.member_orgs.size()) + " orgs endorsed under " +
               std::string(to_string(policy.rule));
    return std::nullopt;
}

identity::GovernanceView governance_for(const ledger::Block& block, const ledger::StateHistory& history)
{
    if (block.header.channel_id == identity::kGovernanceChannel && block.header.height == 0)
    {
        return identity::GovernanceView([&block](const std::string& key) -> std::optional<Document> {
            for (const auto& tx : block.transactions)
                for (const auto& w : tx.rwset.writes)
                    if (w.key == key)
                        return std::optional<Document>(std::in_place, w.value);
            return std::nullopt;
        });
    }
    return identity::GovernanceView::at(history, block.header.governance_height);
}

namespace
{
std::optional<std::string> submitter_reason(const identity::GovernanceView& view,
    const ledger::TransactionEnvelope& env, std::optional<identity::Participant>& participant)
{
    auto ident = view.identity(env.submitter);
    if (!ident)
        return "Unauthorized: " + env.submitter + " has no identity";
    if (ident->revoked)
        return std::string(to_string(revoked_submitter_error(env.contract_id))) + ": identity of " + env.submitter +
               " is revoked";
    if (!identity::verify_envelope(env, ident->public_key))
        return "Unauthorized: signature does not verify for " + env.submitter;
    participant = view.participant(env.submitter);
    if (!participant)
        return "UnknownParticipant: " + env.submitter;
    return std::nullopt;
}

}  // namespace

ledger::TxCheck make_tx_check(const ledger::StateHistory& governance_history)
{
    return [&governance_history](const ledger::Block& block, std::size_t i) -> std::optional<std::string> {
        try
        {
            identity::GovernanceView view = governance_for(block, governance_history);
            const auto& tx = block.transactions[i];
            std::optional<identity::Participant> who;
            if (auto reason = submitter_reason(view, tx.envelope, who))
                return reason;
            if (block.header.height == 0)
            {
                if (who->role != Role::admin)
                    return "Unauthorized: genesis transactions must come from an admin";
                return std::nullopt;
            }
            if (identity::check_acl(view.acl(), who->role, tx.envelope.contract_id, tx.envelope.operation) !=
                identity::Decision::allow)
                return "AclDenied: " + std::string(to_string(who->role)) + " may not call " +
                       tx.envelope.contract_id + "." + tx.envelope.operation;
            auto channel = channel_at(view, block.header.channel_id);
            if (!channel)
                return "UnknownChannel: " + block.header.channel_id;
            auto policy = policy_at(view, channel->endorsement_policy);
            if (!policy)
                return "PolicyNotMet: unknown policy " + channel->endorsement_policy;
            return check_endorsements(tx, *channel, *policy,
                [&view](const std::string& id) { return node_at(view, id); });
        }
        catch (const Error& e)
        {
            return std::string(e.what());
        }
        catch (const nlohmann::json::exception& e)
        {
            return std::string("BadRecord: ") + e.what();
        }
    };
}

ledger::SignatureCheck make_signature_check(const ledger::StateHistory& governance_history)
{
    return [&governance_history](const ledger::Block& block, const ledger::TransactionEnvelope& env) {
        try
        {
            auto ident = governance_for(block, governance_history).identity(env.submitter);
            return ident && identity::verify_envelope(env, ident->public_key);
        }
        catch (const std::exception&)
        {
            return false;
        }
    };
}

}  // namespace grainledger::network
