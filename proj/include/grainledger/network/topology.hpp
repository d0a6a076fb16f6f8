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

#include "grainledger/identity/participant.hpp"
#include "grainledger/ledger/canonical.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace grainledger::network
{
using identity::Org;
using identity::Role;
using ledger::Document;

enum class PolicyRule
{
    any_one,
    majority_orgs,
    all_orgs,
};

std::string_view to_string(PolicyRule rule);
PolicyRule parse_policy_rule(std::string_view text);

struct EndorsementPolicy
{
    std::string policy_id;
    PolicyRule rule = PolicyRule::majority_orgs;

    Document to_document() const;
    static EndorsementPolicy from_document(const Document& doc);
};

/// Counts distinct endorsing orgs that are channel members.
bool policy_satisfied(PolicyRule rule, const std::set<Org>& endorsing, const std::set<Org>& members);

struct ChannelConfig
{
    std::string channel_id;
    std::set<Org> member_orgs;
    std::string endorsement_policy = "majority";
    std::uint32_t batch_max_tx = 10;
    std::uint32_t batch_timeout_ms = 250;

    bool has_member(Org org) const { return member_orgs.contains(org); }
    Document to_document() const;
    static ChannelConfig from_document(const Document& doc);
};

struct NodeConfig
{
    std::string node_id;
    Org org = Org::cooperative;
    std::string endpoint;    // host:port of the peer/orderer service
    std::string api_listen;  // host:port of the REST API
    std::vector<std::string> channels;
    bool is_orderer = false;

    Document to_document() const;
    static NodeConfig from_document(const Document& doc);
};

/// A consortium member created at bootstrap, with the node that holds its
/// signing key and a login password.
struct ParticipantSpec
{
    identity::Participant participant;
    std::string home_node;
    std::string password;

    Document to_document() const;
    static ParticipantSpec from_document(const Document& doc);
};

/// Network topology file: {nodes, channels, policies, seed} plus the founding
/// participants and the genesis timestamp.
struct Topology
{
    std::vector<NodeConfig> nodes;
    std::vector<ChannelConfig> channels;
    std::vector<EndorsementPolicy> policies;
    std::optional<std::uint64_t> seed;  // seeded keys: reproducible, insecure
    std::vector<ParticipantSpec> participants;
    std::int64_t genesis_time_ms = 1704067200000;

    /// Throws Error(BadConfig) describing the first violated rule.
    void validate() const;

    const NodeConfig& node(std::string_view id) const;
    const NodeConfig& orderer() const;
    const ChannelConfig& channel(std::string_view id) const;
    const EndorsementPolicy& policy(std::string_view id) const;
    std::vector<std::string> member_nodes(std::string_view channel_id) const;

    Document to_document() const;
    /// Throws Error(BadConfig).
    static Topology from_document(const Document& doc);
};

/// coop-node (cooperative), warehouse-node (warehouse, orderer), bank-node
/// (bank); channels gebn-main {all}, credit {warehouse, bank}, governance {all};
/// demo participants with insecure passwords "<id>-password".
Topology default_topology();

}  // namespace grainledger::network
