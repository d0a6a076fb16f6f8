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

#include "grainledger/contract/engine.hpp"
#include "grainledger/identity/credentials.hpp"
#include "grainledger/network/gateway.hpp"
#include "grainledger/network/topology.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace grainledger::network
{
/// Contracts every node can execute: grain v1 and governance v1.
const contract::ContractCatalog& standard_catalog();

struct NodeMaterial
{
    NodeConfig config;
    identity::KeyPair key;
};

struct ParticipantMaterial
{
    ParticipantSpec spec;
    identity::KeyPair key;
    identity::Identity identity;
};

/// Keys, identities and genesis blocks of a new network.
struct NetworkBundle
{
    Topology topology;
    std::vector<NodeMaterial> nodes;
    std::vector<ParticipantMaterial> participants;
    std::map<std::string, ledger::Block> genesis;  // by channel

    const NodeMaterial& node(std::string_view id) const;
    const ParticipantMaterial& participant(std::string_view id) const;
    /// Keys of the participants homed on `node_id`.
    Keystore keystore_for(std::string_view node_id) const;
    std::string admin() const;
};

/// Builds the network in memory. With a topology seed every key, and so
/// every genesis digest, is reproducible; without one keys are random.
/// Governance genesis: one admin-signed bootstrap transaction writing
/// participants, identities, nodes, policies, channels, the ACL and the
/// governance contract deployment. Every other channel: an admin-signed
/// deploy of the grain contract.
NetworkBundle bootstrap_network(const Topology& topology);

/// Per-node directory written by `gl init`.
///   node.json               NodeSettings
///   node.key                node signing key (hex seed)
///   participants/<id>.key   keys of participants homed here
///   participants/<id>.json  identity files
///   credentials.json        login password hashes
///   channels/<id>.blocks    committed blocks of member channels
///   orderer/<id>.blocks     (orderer node) ordered blocks of every channel
struct NodeSettings
{
    NodeConfig config;
    std::string orderer_node;
    std::string orderer_endpoint;
    std::map<std::string, std::string> peer_endpoints;  // node_id -> host:port
    ledger::Digest governance_genesis;

    Document to_document() const;
    static NodeSettings from_document(const Document& doc);
};

struct NodeDir
{
    std::filesystem::path path;
    NodeSettings settings;
    identity::KeyPair node_key;
    Keystore keystore;
    identity::CredentialStore credentials;
};

/// Writes `<dir>/network.json` and one directory per node. Throws
/// Error(BadConfig) when `dir` is not empty and `force` is false.
void write_network_dir(const NetworkBundle& bundle, const std::filesystem::path& dir, bool force);
/// Throws Error(BadConfig) or Error(Io).
NodeDir load_node_dir(const std::filesystem::path& dir);
/// Node directories listed in `<net-dir>/network.json`, in topology order.
std::vector<std::filesystem::path> network_node_dirs(const std::filesystem::path& net_dir);

}  // namespace grainledger::network
