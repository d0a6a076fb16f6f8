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
#include "grainledger/network/topology.hpp"
#include "grainledger/common/error.hpp"
#include "grainledger/identity/registry.hpp"

#include <algorithm>
#include <map>

namespace grainledger::network
{
namespace
{
template <typename Fn>
auto config_guard(const std::string& what, Fn&& fn)
{
    try
    {
        return fn();
    }
    catch (const Error& e)
    {
        if (e.code() == ErrorCode::BadConfig)
            throw;
        fail(ErrorCode::BadConfig, what + ": " + e.message());
    }
    catch (const nlohmann::json::exception& e)
    {
        fail(ErrorCode::BadConfig, what + ": " + e.what());
    }
}

Document orgs_document(const std::set<Org>& orgs)
{
    Document out = Document::array();
    for (Org o : orgs)
        out.push_back(to_string(o));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::string_view to_string(PolicyRule rule)
{
    switch (rule)
    {
    case PolicyRule::any_one:
        return "ANY_ONE";
    case PolicyRule::majority_orgs:
        return "MAJORITY_ORGS";
    case PolicyRule::all_orgs:
        return "ALL_ORGS";
    }
    return "?";
}

PolicyRule parse_policy_rule(std::string_view text)
{
    if (text == "ANY_ONE")
        return PolicyRule::any_one;
    if (text == "MAJORITY_ORGS")
        return PolicyRule::majority_orgs;
    if (text == "ALL_ORGS")
        return PolicyRule::all_orgs;
    fail(ErrorCode::InvalidArgument, "unknown endorsement rule '" + std::string(text) + "'");
}

Document EndorsementPolicy::to_document() const
{
    return {{"policy_id", policy_id}, {"rule", to_string(rule)}};
}

EndorsementPolicy EndorsementPolicy::from_document(const Document& doc)
{
    return config_guard("policy", [&] {
        return EndorsementPolicy{doc.at("policy_id").get<std::string>(),
            parse_policy_rule(doc.at("rule").get<std::string>())};
    });
}

bool policy_satisfied(PolicyRule rule, const std::set<Org>& endorsing, const std::set<Org>& members)
{
    std::size_t count = 0;
    for (Org o : endorsing)
        if (members.contains(o))
            ++count;
    switch (rule)
    {
    case PolicyRule::any_one:
        return count >= 1;
    case PolicyRule::majority_orgs:
        return 2 * count > members.size();
    case PolicyRule::all_orgs:
        return !members.empty() && count == members.size();
    }
    return false;
}

Document ChannelConfig::to_document() const
{
    return {
        {"batch_max_tx", batch_max_tx},
        {"batch_timeout_ms", batch_timeout_ms},
        {"channel_id", channel_id},
        {"endorsement_policy", endorsement_policy},
        {"member_orgs", orgs_document(member_orgs)},
    };
}

ChannelConfig ChannelConfig::from_document(const Document& doc)
{
    return config_guard("channel", [&] {
        ChannelConfig c;
        c.channel_id = doc.at("channel_id").get<std::string>();
        for (const auto& o : doc.at("member_orgs"))
            c.member_orgs.insert(identity::parse_org(o.get<std::string>()));
        c.endorsement_policy = doc.value("endorsement_policy", std::string("majority"));
        c.batch_max_tx = doc.value("batch_max_tx", 10u);
        c.batch_timeout_ms = doc.value("batch_timeout_ms", 250u);
        return c;
    });
}

Document NodeConfig::to_document() const
{
    return {
        {"api_listen", api_listen},
        {"channels", channels},
        {"endpoint", endpoint},
        {"is_orderer", is_orderer},
        {"node_id", node_id},
        {"org", to_string(org)},
    };
}

NodeConfig NodeConfig::from_document(const Document& doc)
{
    return config_guard("node", [&] {
        NodeConfig n;
        n.node_id = doc.at("node_id").get<std::string>();
        n.org = identity::parse_org(doc.at("org").get<std::string>());
        n.endpoint = doc.value("endpoint", std::string());
        n.api_listen = doc.value("api_listen", std::string());
        n.channels = doc.at("channels").get<std::vector<std::string>>();
        n.is_orderer = doc.value("is_orderer", false);
        return n;
    });
}

Document ParticipantSpec::to_document() const
{
    Document doc = participant.to_document();
    doc["home_node"] = home_node;
    doc["password"] = password;
    return doc;
}

ParticipantSpec ParticipantSpec::from_document(const Document& doc)
{
    return config_guard("participant", [&] {
        ParticipantSpec p;
        Document core = doc;
        p.home_node = doc.at("home_node").get<std::string>();
        p.password = doc.value("password", std::string());
        core.erase("home_node");
        core.erase("password");
        p.participant = identity::Participant::from_document(core);
        return p;
    });
}

const NodeConfig& Topology::node(std::string_view id) const
{
    for (const auto& n : nodes)
        if (n.node_id == id)
            return n;
    fail(ErrorCode::BadConfig, "unknown node '" + std::string(id) + "'");
}

const NodeConfig& Topology::orderer() const
{
    for (const auto& n : nodes)
        if (n.is_orderer)
            return n;
    fail(ErrorCode::BadConfig, "topology has no orderer");
}

const ChannelConfig& Topology::channel(std::string_view id) const
{
    for (const auto& c : channels)
        if (c.channel_id == id)
            return c;
    fail(ErrorCode::BadConfig, "unknown channel '" + std::string(id) + "'");
}

const EndorsementPolicy& Topology::policy(std::string_view id) const
{
    for (const auto& p : policies)
        if (p.policy_id == id)
            return p;
    fail(ErrorCode::BadConfig, "unknown policy '" + std::string(id) + "'");
}

std::vector<std::string> Topology::member_nodes(std::string_view channel_id) const
{
    const ChannelConfig& c = channel(channel_id);
    std::vector<std::string> out;
    for (const auto& n : nodes)
        if (c.has_member(n.org))
            out.push_back(n.node_id);
    return out;
}

void Topology::validate() const
{
    auto bad = [](const std::string& msg) { fail(ErrorCode::BadConfig, msg); };
    if (nodes.empty())
        bad("topology has no nodes");

    std::set<std::string> policy_ids;
    for (const auto& p : policies)
        if (p.policy_id.empty() || !policy_ids.insert(p.policy_id).second)
            bad("policy ids must be unique and non-empty");

    std::set<std::string> channel_ids;
    for (const auto& c : channels)
    {
        if (c.channel_id.empty() || !channel_ids.insert(c.channel_id).second)
            bad("channel ids must be unique and non-empty");
        if (c.member_orgs.empty())
            bad("channel " + c.channel_id + " has no member orgs");
        if (c.batch_max_tx < 1)
            bad("channel " + c.channel_id + ": batch_max_tx must be >= 1");
        if (!policy_ids.contains(c.endorsement_policy))
            bad("channel " + c.channel_id + " references unknown policy " + c.endorsement_policy);
    }
    if (!channel_ids.contains(std::string(identity::kGovernanceChannel)))
        bad("topology must define the governance channel");

    std::set<std::string> node_ids;
    std::set<std::string> endpoints;
    std::set<Org> node_orgs;
    std::size_t orderers = 0;
    for (const auto& n : nodes)
    {
        if (n.node_id.empty() || !node_ids.insert(n.node_id).second)
            bad("node ids must be unique and non-empty");
        if (!n.endpoint.empty() && !endpoints.insert(n.endpoint).second)
            bad("endpoint " + n.endpoint + " is used twice");
        if (!n.api_listen.empty() && !endpoints.insert(n.api_listen).second)
            bad("address " + n.api_listen + " is used twice");
        node_orgs.insert(n.org);
        orderers += n.is_orderer ? 1 : 0;
        if (n.channels.empty())
            bad("node " + n.node_id + " belongs to no channel");
        for (const auto& c : n.channels)
        {
            if (!channel_ids.contains(c))
                bad("node " + n.node_id + " lists unknown channel " + c);
            if (!channel(c).has_member(n.org))
                bad("node " + n.node_id + " lists channel " + c + " but its org is not a member");
        }
        for (const auto& c : channels)
            if (c.has_member(n.org) &&
                std::find(n.channels.begin(), n.channels.end(), c.channel_id) == n.channels.end())
                bad("node " + n.node_id + " must list channel " + c.channel_id + " of its org");
    }
    if (orderers != 1)
        bad("exactly one node must be the orderer, found " + std::to_string(orderers));
    for (const auto& c : channels)
    {
        for (Org o : c.member_orgs)
            if (!node_orgs.contains(o))
                bad("channel " + c.channel_id + " member org " + std::string(to_string(o)) + " hosts no node");
        if (!c.has_member(orderer().org))
            bad("the orderer's org must be a member of channel " + c.channel_id);
    }
    for (Org o : node_orgs)
        if (!channel(identity::kGovernanceChannel).has_member(o))
            bad("org " + std::string(to_string(o)) + " must be a member of the governance channel");

    std::set<std::string> participant_ids;
    bool has_admin = false;
    for (const auto& p : participants)
    {
        const auto& id = p.participant.participant_id;
        if (id.empty() || !participant_ids.insert(id).second)
            bad("participant ids must be unique and non-empty");
        if (!node_ids.contains(p.home_node))
            bad("participant " + id + " is homed on unknown node " + p.home_node);
        if (node(p.home_node).org != p.participant.org)
            bad("participant " + id + " must be homed on a node of its own org");
        has_admin |= p.participant.role == Role::admin;
    }
    if (!has_admin)
        bad("topology needs at least one admin participant");
}

Document Topology::to_document() const
{
    Document doc = {
        {"channels", Document::array()},
        {"genesis_time_ms", genesis_time_ms},
        {"nodes", Document::array()},
        {"participants", Document::array()},
        {"policies", Document::array()},
        {"seed", seed ? Document(*seed) : Document()},
    };
    for (const auto& c : channels)
        doc["channels"].push_back(c.to_document());
    for (const auto& n : nodes)
        doc["nodes"].push_back(n.to_document());
    for (const auto& p : participants)
        doc["participants"].push_back(p.to_document());
    for (const auto& p : policies)
        doc["policies"].push_back(p.to_document());
    return doc;
}

Topology Topology::from_document(const Document& doc)
{
    Topology t = config_guard("topology", [&] {
        if (!doc.is_object())
            fail(ErrorCode::BadConfig, "topology must be a JSON object");
        Topology t;
        for (const auto& n : doc.at("nodes"))
            t.nodes.push_back(NodeConfig::from_document(n));
        for (const auto& c : doc.at("channels"))
            t.channels.push_back(ChannelConfig::from_document(c));
        for (const auto& p : doc.at("policies"))
            t.policies.push_back(EndorsementPolicy::from_document(p));
        if (doc.contains("seed") && !doc["seed"].is_null())
            t.seed = doc["seed"].get<std::uint64_t>();
        if (doc.contains("participants"))
            for (const auto& p : doc["participants"])
                t.participants.push_back(ParticipantSpec::from_document(p));
        else
            t.participants = default_topology().participants;
        t.genesis_time_ms = doc.value("genesis_time_ms", t.genesis_time_ms);
        return t;
    });
    t.validate();
    return t;
}

Topology default_topology()
{
    Topology t;
    t.policies = {{"majority", PolicyRule::majority_orgs}};
    t.channels = {
        {"gebn-main", {Org::cooperative, Org::warehouse, Org::bank}, "majority", 10, 250},
        {"credit", {Org::warehouse, Org::bank}, "majority", 10, 250},
        {std::string(identity::kGovernanceChannel), {Org::cooperative, Org::warehouse, Org::bank}, "majority",
            10, 250},
    };
    t.nodes = {
        {"coop-node", Org::cooperative, "127.0.0.1:7101", "127.0.0.1:8101", {"gebn-main", "governance"}, false},
        {"warehouse-node", Org::warehouse, "127.0.0.1:7102", "127.0.0.1:8102",
            {"gebn-main", "credit", "governance"}, true},
        {"bank-node", Org::bank, "127.0.0.1:7103", "127.0.0.1:8103", {"gebn-main", "credit", "governance"},
            false},
    };
    auto person = [](std::string id, Org org, Role role, std::string name, std::string node) {
        std::string password = id + "-password";
        return ParticipantSpec{{std::move(id), org, role, std::move(name)}, std::move(node), std::move(password)};
    };
    t.participants = {
        person("admin", Org::warehouse, Role::admin, "Consortium administrator", "warehouse-node"),
        person("p-001", Org::cooperative, Role::producer, "Producer 001", "coop-node"),
        person("p-002", Org::cooperative, Role::producer, "Producer 002", "coop-node"),
        person("p-qa-01", Org::warehouse, Role::qa_operator, "QA operator", "warehouse-node"),
        person("p-wh-01", Org::warehouse, Role::warehouse_operator, "Weighbridge operator", "warehouse-node"),
        person("p-bank-01", Org::bank, Role::bank_agent, "Credit analyst", "bank-node"),
    };
    return t;
}

}  // namespace grainledger::network
