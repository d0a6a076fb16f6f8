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
#include "grainledger/network/bootstrap.hpp"
#include "grainledger/common/error.hpp"
#include "grainledger/grain/contract.hpp"
#include "grainledger/network/governance.hpp"
#include "grainledger/network/orderer.hpp"

#include <fstream>
#include <sstream>

namespace grainledger::network
{
namespace fs = std::filesystem;

const contract::ContractCatalog& standard_catalog()
{
    static const contract::ContractCatalog catalog = [] {
        contract::ContractCatalog c;
        c.add(grain::grain_contract("majority"));
        c.add(governance_contract());
        return c;
    }();
    return catalog;
}

const NodeMaterial& NetworkBundle::node(std::string_view id) const
{
    for (const auto& n : nodes)
        if (n.config.node_id == id)
            return n;
    fail(ErrorCode::BadConfig, "unknown node '" + std::string(id) + "'");
}

const ParticipantMaterial& NetworkBundle::participant(std::string_view id) const
{
    for (const auto& p : participants)
        if (p.spec.participant.participant_id == id)
            return p;
    fail(ErrorCode::UnknownParticipant, std::string(id));
}

Keystore NetworkBundle::keystore_for(std::string_view node_id) const
{
    Keystore keys;
    for (const auto& p : participants)
        if (p.spec.home_node == node_id)
            keys.emplace(p.spec.participant.participant_id, p.key);
    return keys;
}

std::string NetworkBundle::admin() const
{
    for (const auto& p : participants)
        if (p.spec.participant.role == Role::admin)
            return p.spec.participant.participant_id;
    fail(ErrorCode::BadConfig, "network has no admin");
}

namespace
{
identity::KeyPair make_key(const std::optional<std::uint64_t>& seed, const std::string& label)
{
    return seed ? identity::KeyPair::insecure_from_seed(*seed, label) : identity::KeyPair::generate();
}

ledger::TransactionEnvelope signed_envelope(const ParticipantMaterial& admin, std::string channel_id,
    std::string contract_id, std::string operation, Document args, std::int64_t timestamp)
{
    ledger::TransactionEnvelope env;
    env.channel_id = std::move(channel_id);
    env.contract_id = std::move(contract_id);
    env.operation = std::move(operation);
    env.args = std::move(args);
    env.submitter = admin.spec.participant.participant_id;
    env.timestamp = timestamp;
    env.tx_id = env.compute_tx_id().hex();
    env.signature = identity::sign_envelope(env, admin.key, admin.identity);
    return env;
}

ledger::Block genesis_block(const std::string& channel_id, ledger::TransactionRecord record, std::int64_t at)
{
    ledger::Block block;
    block.header.height = 0;
    block.header.prev_hash = ledger::Digest::zero();
    block.header.channel_id = channel_id;
    block.header.created_at = at;
    block.header.governance_height = 0;
    block.transactions.push_back(std::move(record));
    block.seal();
    return block;
}

ledger::Block governance_genesis(const NetworkBundle& b, const ParticipantMaterial& admin)
{
    const Topology& t = b.topology;
    std::map<std::string, Document> writes;
    Document args = {
        {"acl", identity::default_acl().to_document()},
        {"channels", Document::array()},
        {"identities", Document::array()},
        {"nodes", Document::array()},
        {"orderer", {{"node_id", t.orderer().node_id}, {"org", to_string(t.orderer().org)}}},
        {"participants", Document::array()},
        {"policies", Document::array()},
    };
    for (const auto& p : b.participants)
    {
        args["participants"].push_back(p.spec.participant.to_document());
        args["identities"].push_back(p.identity.to_document());
        writes[identity::keys::participant(p.spec.participant.participant_id)] = p.spec.participant.to_document();
        writes[identity::keys::identity(p.spec.participant.participant_id)] = p.identity.to_document();
    }
    for (const auto& n : b.nodes)
    {
        NodeRecord rec{n.config.node_id, n.config.org, n.key.public_key(), std::string(identity::kEd25519)};
        args["nodes"].push_back(rec.to_document());
        writes[identity::keys::node(rec.node_id)] = rec.to_document();
    }
    for (const auto& p : t.policies)
    {
        args["policies"].push_back(p.to_document());
        writes[identity::keys::policy(p.policy_id)] = p.to_document();
    }
    for (const auto& c : t.channels)
    {
        args["channels"].push_back(c.to_document());
        writes[identity::keys::channel(c.channel_id)] = c.to_document();
    }
    writes[std::string(identity::keys::kAcl)] = args["acl"];
    writes[std::string(kOrdererKey)] = args["orderer"];
    const auto* gov = standard_catalog().find(kGovernanceContract, 1);
    writes[std::string(contract::kLifecycleRegistry) + "#" + std::string(kGovernanceContract)] = {
        {"manifest", gov->manifest()}, {"manifest_hash", gov->manifest_hash().hex()}};

    ledger::TransactionRecord record;
    record.envelope = signed_envelope(admin, std::string(identity::kGovernanceChannel),
        std::string(kGovernanceContract), "bootstrap", std::move(args), t.genesis_time_ms);
    for (auto& [key, value] : writes)
        record.rwset.writes.push_back({key, std::move(value)});
    record.rwset.events.push_back({"NetworkBootstrapped",
        {{"channels", t.channels.size()}, {"nodes", t.nodes.size()}, {"participants", b.participants.size()}},
        record.envelope.tx_id});
    return genesis_block(std::string(identity::kGovernanceChannel), std::move(record), t.genesis_time_ms);
}

ledger::Block channel_genesis(const NetworkBundle& b, const ParticipantMaterial& admin, const std::string& channel_id)
{
    const auto* grain = standard_catalog().find(grain::kContractId, 1);
    auto env = signed_envelope(admin, channel_id, std::string(contract::kLifecycleContract), "deploy",
        contract::deploy_args(*grain), b.topology.genesis_time_ms);
    ledger::WorldState empty;
    contract::Engine engine(standard_catalog());
    auto rwset = engine.invoke(env.contract_id, env.operation, env.args,
        {env.tx_id, channel_id, env.submitter, Role::admin, env.timestamp}, empty, identity::default_acl());
    return genesis_block(channel_id, {env, std::move(rwset), {}}, b.topology.genesis_time_ms);
}

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        fail(ErrorCode::Io, "cannot write " + path.string());
    out << text;
    if (!out)
        fail(ErrorCode::Io, "write failed for " + path.string());
}

Document read_json(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorCode::BadConfig, "cannot read " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    try
    {
        return ledger::parse_document(buf.str());
    }
    catch (const Error& e)
    {
        fail(ErrorCode::BadConfig, path.string() + ": " + e.message());
    }
}

}  // namespace

NetworkBundle bootstrap_network(const Topology& topology)
{
    topology.validate();
    NetworkBundle b{topology, {}, {}, {}};
    for (const auto& n : topology.nodes)
        b.nodes.push_back({n, make_key(topology.seed, "node:" + n.node_id)});
    for (const auto& p : topology.participants)
    {
        auto key = make_key(topology.seed, "participant:" + p.participant.participant_id);
        identity::Identity ident{
            p.participant.participant_id, key.public_key(), std::string(identity::kEd25519), topology.genesis_time_ms, false};
        b.participants.push_back({p, std::move(key), std::move(ident)});
    }
    const auto& admin = b.participant(b.admin());
    b.genesis.emplace(std::string(identity::kGovernanceChannel), governance_genesis(b, admin));
    for (const auto& c : topology.channels)
        if (c.channel_id != identity::kGovernanceChannel)
            b.genesis.emplace(c.channel_id, channel_genesis(b, admin, c.channel_id));
    return b;
}

Document NodeSettings::to_document() const
{
    Document peers = Document::object();
    for (const auto& [id, ep] : peer_endpoints)
        peers[id] = ep;
    return {
        {"governance_genesis", governance_genesis.hex()},
        {"node", config.to_document()},
        {"orderer_endpoint", orderer_endpoint},
        {"orderer_node", orderer_node},
        {"peers", std::move(peers)},
    };
}

NodeSettings NodeSettings::from_document(const Document& doc)
{
    try
    {
        NodeSettings s;
        s.config = NodeConfig::from_document(doc.at("node"));
        s.orderer_node = doc.at("orderer_node").get<std::string>();
        s.orderer_endpoint = doc.at("orderer_endpoint").get<std::string>();
        for (const auto& [id, ep] : doc.at("peers").items())
            s.peer_endpoints[id] = ep.get<std::string>();
        s.governance_genesis = ledger::Digest::from_hex(doc.at("governance_genesis").get<std::string>());
        return s;
    }
    catch (const nlohmann::json::exception& e)
    {
        fail(ErrorCode::BadConfig, std::string("node.json: ") + e.what());
    }
    catch (const Error& e)
    {
        if (e.code() == ErrorCode::BadConfig)
            throw;
        fail(ErrorCode::BadConfig, "node.json: " + e.message());
    }
}

void write_network_dir(const NetworkBundle& bundle, const fs::path& dir, bool force)
{
    const Topology& t = bundle.topology;
    if (fs::exists(dir) && !fs::is_directory(dir))
        fail(ErrorCode::BadConfig, dir.string() + " exists and is not a directory");
    if (fs::exists(dir) && !fs::is_empty(dir))
    {
        if (!force)
            fail(ErrorCode::BadConfig, dir.string() + " is not empty (use --force to overwrite)");
        fs::remove(dir / "network.json");
        for (const auto& n : t.nodes)
            fs::remove_all(dir / n.node_id);
    }
    fs::create_directories(dir);

    Topology public_topology = t;
    for (auto& p : public_topology.participants)
        p.password.clear();
    Document genesis = Document::object();
    for (const auto& [channel, block] : bundle.genesis)
        genesis[channel] = block.hash.hex();
    Document node_ids = Document::array();
    for (const auto& n : t.nodes)
        node_ids.push_back(n.node_id);
    write_text(dir / "network.json", ledger::canonicalize({
                                         {"genesis", genesis},
                                         {"insecure_seeded_keys", t.seed.has_value()},
                                         {"nodes", node_ids},
                                         {"topology", public_topology.to_document()},
                                     }) + "\n");

    const auto& orderer = t.orderer();
    const ledger::Block& gov_genesis = bundle.genesis.at(std::string(identity::kGovernanceChannel));
    for (const auto& material : bundle.nodes)
    {
        const NodeConfig& n = material.config;
        fs::path node_dir = dir / n.node_id;
        fs::create_directories(node_dir / "participants");

        NodeSettings settings{n, orderer.node_id, orderer.endpoint, {}, gov_genesis.hash};
        for (const auto& other : t.nodes)
            settings.peer_endpoints[other.node_id] = other.endpoint;
        write_text(node_dir / "node.json", ledger::canonicalize(settings.to_document()) + "\n");
        identity::write_key_file(node_dir / "node.key", material.key);

        identity::CredentialStore credentials;
        for (const auto& p : bundle.participants)
        {
            if (p.spec.home_node != n.node_id)
                continue;
            const auto& id = p.spec.participant.participant_id;
            identity::write_key_file(node_dir / "participants" / (id + ".key"), p.key);
            identity::write_identity_file(node_dir / "participants" / (id + ".json"), p.identity);
            if (!p.spec.password.empty())
                credentials.set(id, p.spec.password);
        }
        credentials.save(node_dir / "credentials.json");

        Peer peer({n.node_id, n.org, material.key, node_dir, gov_genesis.hash}, standard_catalog());
        peer.open();
        peer.deliver(gov_genesis);
        for (const auto& [channel, block] : bundle.genesis)
            if (channel != identity::kGovernanceChannel)
                peer.deliver(block);
        if (auto err = peer.last_error())
            fail(ErrorCode::BadRecord, "genesis commit failed on " + n.node_id + ": " + *err);

        if (n.is_orderer)
        {
            Orderer ord(n.node_id, node_dir, [&peer] { return peer.directory(); });
            ord.open();
            ord.install_genesis(gov_genesis);
            for (const auto& [channel, block] : bundle.genesis)
                if (channel != identity::kGovernanceChannel)
                    ord.install_genesis(block);
        }
    }
}

NodeDir load_node_dir(const fs::path& dir)
{
    if (!fs::is_directory(dir))
        fail(ErrorCode::BadConfig, dir.string() + " is not a node directory");
    NodeDir nd{dir, NodeSettings::from_document(read_json(dir / "node.json")),
        identity::read_key_file(dir / "node.key"), {}, {}};
    if (fs::is_directory(dir / "participants"))
        for (const auto& entry : fs::directory_iterator(dir / "participants"))
            if (entry.path().extension() == ".key")
                nd.keystore.emplace(entry.path().stem().string(), identity::read_key_file(entry.path()));
    if (fs::exists(dir / "credentials.json"))
        nd.credentials = identity::CredentialStore::load(dir / "credentials.json");
    return nd;
}

std::vector<fs::path> network_node_dirs(const fs::path& net_dir)
{
    Document doc = read_json(net_dir / "network.json");
    std::vector<fs::path> out;
    try
    {
        for (const auto& id : doc.at("nodes"))
            out.push_back(net_dir / id.get<std::string>());
    }
    catch (const nlohmann::json::exception& e)
    {
        fail(ErrorCode::BadConfig, std::string("network.json: ") + e.what());
    }
    return out;
}

}  // namespace grainledger::network
