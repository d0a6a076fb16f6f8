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
#include "grainledger/network/sim.hpp"
#include "grainledger/common/error.hpp"
#include "grainledger/grain/contract.hpp"
#include "grainledger/network/governance.hpp"

#include <algorithm>
#include <future>
#include <queue>

namespace grainledger::network
{
namespace
{
constexpr std::string_view kOrdererTarget = "@orderer";
constexpr std::size_t kPullBatch = 64;
}  // namespace

struct SimNetwork::Message
{
    enum class Kind
    {
        submit,
        open_channel,
        pull,
        blocks,
    };

    std::int64_t at = 0;
    std::uint64_t seq = 0;
    Kind kind = Kind::submit;
    std::string source;
    std::string target;
    ledger::TransactionRecord record;
    std::vector<ledger::Block> blocks;
    std::string channel_id;
    std::uint64_t from = 0;
};

/// Time-ordered message queue with one seeded generator per sender.
struct SimNetwork::Bus
{
    struct Later
    {
        bool operator()(const Message& a, const Message& b) const
        {
            return a.at != b.at ? a.at > b.at : a.seq > b.seq;
        }
    };

    Bus(std::uint64_t seed, LinkParams link, std::string orderer_node)
      : seed(seed), link(link), orderer_node(std::move(orderer_node))
    {}

    std::mt19937_64& rng(const std::string& source)
    {
        auto it = rngs.find(source);
        if (it == rngs.end())
        {
            std::vector<std::uint32_t> material{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
            material.insert(material.end(), source.begin(), source.end());
            std::seed_seq seq(material.begin(), material.end());
            it = rngs.emplace(source, std::mt19937_64(seq)).first;
        }
        return it->second;
    }

    bool local(const Message& m) const
    {
        const std::string& src = m.source == kOrdererTarget ? orderer_node : m.source;
        const std::string& dst = m.target == kOrdererTarget ? orderer_node : m.target;
        return src == dst;
    }

    /// Returns false when the message was dropped.
    bool send(Message m, std::int64_t now, bool droppable, SimStats& stats)
    {
        ++stats.messages_sent;
        auto& gen = rng(m.source);
        std::int64_t delay = 0;
        if (!local(m))
        {
            std::uniform_int_distribution<std::int64_t> d(link.min_delay_ms, std::max(link.min_delay_ms, link.max_delay_ms));
            delay = d(gen);
            if (droppable && link.drop_probability > 0.0 &&
                std::uniform_real_distribution<double>(0.0, 1.0)(gen) < link.drop_probability)
            {
                ++stats.messages_dropped;
                return false;
            }
        }
        m.at = now + delay;
        m.seq = next_seq++;
        queue.push(std::move(m));
        return true;
    }

    std::vector<Message> pop_at(std::int64_t t)
    {
        std::vector<Message> out;
        while (!queue.empty() && queue.top().at <= t)
        {
            out.push_back(std::move(const_cast<Message&>(queue.top())));
            queue.pop();
        }
        return out;
    }

    std::uint64_t seed;
    LinkParams link;
    std::string orderer_node;
    std::uint64_t next_seq = 0;
    std::map<std::string, std::mt19937_64> rngs;
    std::priority_queue<Message, std::vector<Message>, Later> queue;
};

class SimNetwork::BusOrdererClient : public OrdererClient
{
public:
    BusOrdererClient(SimNetwork& net, std::string node_id) : m_net(net), m_node_id(std::move(node_id)) {}

    void submit(const ledger::TransactionRecord& record) override { send(Message::Kind::submit, record); }
    void open_channel(const ledger::TransactionRecord& record) override { send(Message::Kind::open_channel, record); }

private:
    void send(Message::Kind kind, const ledger::TransactionRecord& record)
    {
        Message m;
        m.kind = kind;
        m.source = m_node_id;
        m.target = std::string(kOrdererTarget);
        m.record = record;
        // client submissions are retried by the transport, so never lost
        m_net.m_bus->send(std::move(m), m_net.m_now, false, m_net.m_stats);
    }

    SimNetwork& m_net;
    std::string m_node_id;
};

struct SimNetwork::Node
{
    NodeConfig config;
    std::unique_ptr<Peer> peer;
    Keystore keys;
    std::unique_ptr<LocalEndorser> endorser;
    std::unique_ptr<BusOrdererClient> orderer_client;
    std::unique_ptr<Gateway> gateway;
};

SimNetwork::SimNetwork(NetworkBundle bundle, SimOptions options, std::optional<std::filesystem::path> data_dir)
  : m_bundle(std::move(bundle)), m_options(options)
{
    const auto& topo = m_bundle.topology;
    m_now = topo.genesis_time_ms;
    m_next_pull = m_now + m_options.pull_interval_ms;
    m_bus = std::make_unique<Bus>(m_options.seed, m_options.link, topo.orderer().node_id);
    if (data_dir)
        write_network_dir(m_bundle, *data_dir, true);

    const auto& gov_genesis = m_bundle.genesis.at(std::string(identity::kGovernanceChannel));
    for (const auto& material : m_bundle.nodes)
    {
        auto n = std::make_unique<Node>();
        n->config = material.config;
        std::optional<std::filesystem::path> node_dir;
        if (data_dir)
            node_dir = *data_dir / material.config.node_id;
        n->peer = std::make_unique<Peer>(
            PeerOptions{material.config.node_id, material.config.org, material.key, node_dir, gov_genesis.hash},
            standard_catalog());
        n->peer->open();
        if (!data_dir)
        {
            n->peer->deliver(gov_genesis);
            for (const auto& [channel, block] : m_bundle.genesis)
                if (channel != identity::kGovernanceChannel)
                    n->peer->deliver(block);
        }
        n->keys = m_bundle.keystore_for(material.config.node_id);
        n->endorser = std::make_unique<LocalEndorser>(*n->peer);
        n->orderer_client = std::make_unique<BusOrdererClient>(*this, material.config.node_id);
        m_nodes.push_back(std::move(n));
    }
    for (auto& n : m_nodes)
    {
        n->gateway = std::make_unique<Gateway>(
            *n->peer, n->keys,
            [this](const std::string& id) -> Endorser* {
                for (auto& other : m_nodes)
                    if (other->config.node_id == id)
                        return other->endorser.get();
                return nullptr;
            },
            *n->orderer_client, [this] { return m_now; });
    }

    const auto& orderer_cfg = topo.orderer();
    Peer& host = peer(orderer_cfg.node_id);
    std::optional<std::filesystem::path> orderer_dir;
    if (data_dir)
        orderer_dir = *data_dir / orderer_cfg.node_id;
    m_orderer = std::make_unique<Orderer>(orderer_cfg.node_id, orderer_dir, [&host] { return host.directory(); });
    m_orderer->open();
    if (!data_dir)
        for (const auto& [channel, block] : m_bundle.genesis)
            m_orderer->install_genesis(block);
}

SimNetwork::~SimNetwork() = default;

SimNetwork::Node& SimNetwork::node(std::string_view node_id)
{
    for (auto& n : m_nodes)
        if (n->config.node_id == node_id)
            return *n;
    fail(ErrorCode::InvalidArgument, "unknown node '" + std::string(node_id) + "'");
}

const SimNetwork::Node& SimNetwork::node(std::string_view node_id) const
{
    return const_cast<SimNetwork*>(this)->node(node_id);
}

Peer& SimNetwork::peer(std::string_view node_id)
{
    return *node(node_id).peer;
}

Gateway& SimNetwork::gateway(std::string_view node_id)
{
    return *node(node_id).gateway;
}

std::vector<std::string> SimNetwork::node_ids() const
{
    std::vector<std::string> ids;
    for (const auto& n : m_nodes)
        ids.push_back(n->config.node_id);
    return ids;
}

SubmitOutcome SimNetwork::submit(const std::string& participant, const std::string& channel_id,
    const std::string& contract_id, const std::string& operation, const Document& args)
{
    const auto& home = m_bundle.participant(participant).spec.home_node;
    return gateway(home).submit(participant, channel_id, contract_id, operation, args);
}

void SimNetwork::broadcast(const std::vector<ledger::Block>& blocks, std::int64_t t, std::vector<Message>&)
{
    auto dir = peer(m_bundle.topology.orderer().node_id).directory();
    for (const auto& block : blocks)
    {
        ++m_stats.blocks_cut;
        for (const auto& member : dir->members(block.header.channel_id))
        {
            Message m;
            m.kind = Message::Kind::blocks;
            m.source = std::string(kOrdererTarget);
            m.target = member.node_id;
            m.blocks.push_back(block);
            m_bus->send(std::move(m), t, true, m_stats);
        }
    }
}

void SimNetwork::schedule_pulls(std::int64_t t)
{
    const auto heights = m_orderer->heights();
    for (auto& n : m_nodes)
    {
        for (const auto& [channel, next] : n->peer->next_heights())
        {
            auto it = heights.find(channel);
            if (it == heights.end() || next >= it->second)
                continue;
            Message m;
            m.kind = Message::Kind::pull;
            m.source = n->config.node_id;
            m.target = std::string(kOrdererTarget);
            m.channel_id = channel;
            m.from = next;
            ++m_stats.pull_requests;
            m_bus->send(std::move(m), t, true, m_stats);
        }
    }
}

void SimNetwork::step(std::int64_t t)
{
    m_now = t;
    std::vector<Message> unused;
    bool ticked = false;
    for (;;)
    {
        auto batch = m_bus->pop_at(t);
        if (batch.empty())
        {
            if (ticked)
                break;
            ticked = true;
            broadcast(m_orderer->tick(t), t, unused);
            continue;
        }

        // Orderer work first and serially, so its view of the host directory
        // never races with peer commits of the same instant.
        std::map<std::string, std::vector<const Message*>> per_node;
        for (const auto& m : batch)
        {
            if (m.target != kOrdererTarget)
            {
                per_node[m.target].push_back(&m);
                continue;
            }
            try
            {
                switch (m.kind)
                {
                case Message::Kind::submit:
                    broadcast(m_orderer->submit(m.record, t), t, unused);
                    break;
                case Message::Kind::open_channel:
                    broadcast({m_orderer->open_channel(m.record, t)}, t, unused);
                    break;
                case Message::Kind::pull: {
                    Message reply;
                    reply.kind = Message::Kind::blocks;
                    reply.source = std::string(kOrdererTarget);
                    reply.target = m.source;
                    reply.blocks = m_orderer->blocks(m.channel_id, m.from, kPullBatch, m.source);
                    if (!reply.blocks.empty())
                        m_bus->send(std::move(reply), t, true, m_stats);
                    break;
                }
                case Message::Kind::blocks:
                    break;
                }
            }
            catch (const Error&)
            {
                // refused submissions never commit; the client sees them as not ordered
            }
        }

        auto work = [this](const std::string& id, const std::vector<const Message*>& msgs) {
            Peer& p = peer(id);
            for (const auto* m : msgs)
                for (const auto& block : m->blocks)
                    p.deliver(block);
        };
        if (m_options.threaded && per_node.size() > 1)
        {
            std::vector<std::future<void>> jobs;
            for (const auto& [id, msgs] : per_node)
                jobs.push_back(std::async(std::launch::async, work, std::cref(id), std::cref(msgs)));
            for (auto& job : jobs)
                job.get();
        }
        else
        {
            for (const auto& [id, msgs] : per_node)
                work(id, msgs);
        }
    }
    if (t >= m_next_pull)
    {
        schedule_pulls(t);
        m_next_pull = t + m_options.pull_interval_ms;
    }
}

void SimNetwork::run_until(std::int64_t until)
{
    for (;;)
    {
        std::int64_t next = m_next_pull;
        if (!m_bus->queue.empty())
            next = std::min(next, m_bus->queue.top().at);
        if (auto deadline = m_orderer->next_deadline())
            next = std::min(next, *deadline);
        next = std::max(next, m_now);
        if (next > until)
            break;
        step(next);
    }
    m_now = std::max(m_now, until);
}

void SimNetwork::advance(std::int64_t ms)
{
    run_until(m_now + ms);
}

bool SimNetwork::settled() const
{
    if (!m_bus->queue.empty() || m_orderer->pending() > 0)
        return false;
    return convergence().converged();
}

void SimNetwork::settle()
{
    const std::int64_t limit = m_now + m_options.settle_limit_ms;
    while (!settled())
    {
        if (m_now >= limit)
        {
            std::string detail;
            for (const auto& n : m_nodes)
                if (auto err = n->peer->last_error())
                    detail += " " + n->config.node_id + ": " + *err;
            fail(ErrorCode::Timeout, "network did not settle within " + std::to_string(m_options.settle_limit_ms) +
                                         " ms of simulated time" + detail);
        }
        std::int64_t next = m_next_pull;
        if (!m_bus->queue.empty())
            next = std::min(next, m_bus->queue.top().at);
        if (auto deadline = m_orderer->next_deadline())
            next = std::min(next, *deadline);
        step(std::max(next, m_now));
    }
}

void SimNetwork::create_channel(const std::string& admin, const ChannelConfig& channel)
{
    auto outcome = submit(admin, std::string(identity::kGovernanceChannel), std::string(kGovernanceContract),
        "create_channel", channel.to_document());
    settle();
    const auto& home = m_bundle.participant(admin).spec.home_node;
    auto status = peer(home).find_tx(outcome.tx_id);
    if (!status)
        fail(ErrorCode::Timeout, "create_channel was not committed");
    if (!status->committed.validity.valid)
    {
        const std::string& reason = status->committed.validity.reason;
        // Abort reasons arrive wrapped as "ContractAbort: <Code>: message".
        std::string_view rest = reason;
        const std::string wrapper = std::string(to_string(ErrorCode::ContractAbort)) + ": ";
        while (rest.starts_with(wrapper))
            rest.remove_prefix(wrapper.size());
        auto code = parse_error_code(rest.substr(0, rest.find(':')));
        fail(code.value_or(ErrorCode::ContractAbort), reason);
    }
    const auto* grain = standard_catalog().find(grain::kContractId, 1);
    auto record = gateway(home).genesis_record(admin, channel.channel_id, *grain, standard_catalog());
    node(home).orderer_client->open_channel(record);
    settle();
}

ConvergenceReport SimNetwork::convergence() const
{
    ConvergenceReport report;
    auto dir = const_cast<SimNetwork*>(this)->peer(m_bundle.topology.orderer().node_id).directory();
    for (const auto& [channel, height] : m_orderer->heights())
    {
        ChannelConvergence c;
        c.channel_id = channel;
        c.orderer_height = height;
        const auto members = dir->members(channel);
        for (const auto& n : m_nodes)
        {
            const bool member = std::any_of(members.begin(), members.end(),
                [&](const NodeRecord& r) { return r.node_id == n->config.node_id; });
            const auto* ledger = n->peer->ledger(channel);
            if (!member)
            {
                if (ledger)
                    c.outsiders_holding.push_back(n->config.node_id);
                continue;
            }
            NodeChannelState s;
            s.node_id = n->config.node_id;
            if (ledger)
            {
                s.height = ledger->height();
                s.tip = ledger->tip_hash();
                s.state_hash = ledger->state_hash();
            }
            c.members.push_back(std::move(s));
        }
        report.channels.push_back(std::move(c));
    }
    return report;
}

bool ChannelConvergence::converged() const
{
    if (!outsiders_holding.empty())
        return false;
    for (const auto& m : members)
    {
        if (m.height != orderer_height || m.tip != members.front().tip || m.state_hash != members.front().state_hash)
            return false;
    }
    return true;
}

bool ConvergenceReport::converged() const
{
    return std::all_of(channels.begin(), channels.end(), [](const auto& c) { return c.converged(); });
}

Document ConvergenceReport::to_document() const
{
    Document out = Document::array();
    for (const auto& c : channels)
    {
        Document members = Document::array();
        for (const auto& m : c.members)
            members.push_back({{"height", m.height}, {"node_id", m.node_id}, {"state_hash", m.state_hash.hex()},
                {"tip", m.tip.hex()}});
        out.push_back({{"channel_id", c.channel_id}, {"converged", c.converged()}, {"members", members},
            {"orderer_height", c.orderer_height}, {"outsiders_holding", c.outsiders_holding}});
    }
    return {{"channels", out}, {"converged", converged()}};
}

std::vector<grain::SubmitResult> SimScenarioClient::submit_batch(const std::vector<grain::Submission>& batch)
{
    std::vector<grain::SubmitResult> results(batch.size());
    std::vector<std::string> homes(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i)
    {
        const auto& s = batch[i];
        try
        {
            homes[i] = m_network.bundle().participant(s.participant).spec.home_node;
            auto outcome = m_network.submit(s.participant, s.channel, s.contract_id, s.operation, s.args);
            results[i].tx_id = outcome.tx_id;
        }
        catch (const Error& e)
        {
            results[i].status = grain::TxStatus::rejected;
            results[i].error = e.what();
        }
    }
    m_network.settle();
    for (std::size_t i = 0; i < batch.size(); ++i)
    {
        auto& r = results[i];
        if (r.tx_id.empty())
            continue;
        auto status = m_network.peer(homes[i]).find_tx(r.tx_id);
        if (!status)
        {
            r.status = grain::TxStatus::rejected;
            r.error = "not ordered";
        }
        else if (status->committed.validity.valid)
        {
            r.status = grain::TxStatus::valid;
        }
        else
        {
            r.status = grain::TxStatus::invalid;
            r.error = status->committed.validity.reason;
        }
    }
    return results;
}

}  // namespace grainledger::network
