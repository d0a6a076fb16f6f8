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

#include "grainledger/grain/scenario.hpp"
#include "grainledger/network/bootstrap.hpp"
#include "grainledger/network/orderer.hpp"
#include "grainledger/network/peer.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace grainledger::network
{
struct LinkParams
{
    std::int64_t min_delay_ms = 1;
    std::int64_t max_delay_ms = 20;
    double drop_probability = 0.0;  // block deliveries and pull responses only
};

struct SimOptions
{
    std::uint64_t seed = 1;
    LinkParams link;
    std::int64_t pull_interval_ms = 100;
    /// Process each time step's per-node work on worker threads.
    bool threaded = false;
    /// Upper bound on simulated time spent in one settle().
    std::int64_t settle_limit_ms = 600000;
};

struct NodeChannelState
{
    std::string node_id;
    std::uint64_t height = 0;  // blocks committed
    ledger::Digest tip;
    ledger::Digest state_hash;
};

struct ChannelConvergence
{
    std::string channel_id;
    std::uint64_t orderer_height = 0;
    std::vector<NodeChannelState> members;
    std::vector<std::string> outsiders_holding;  // non-members with local data

    bool converged() const;
};

struct ConvergenceReport
{
    std::vector<ChannelConvergence> channels;

    bool converged() const;
    Document to_document() const;
};

struct SimStats
{
    std::uint64_t messages_sent = 0;
    std::uint64_t messages_dropped = 0;
    std::uint64_t pull_requests = 0;
    std::uint64_t blocks_cut = 0;
};

/// In-process network: one Peer per node, the Orderer on the orderer node, and
/// a message bus with seeded per-link delay and loss. Endorsement calls are
/// direct; transaction submission, block broadcast and pull catch-up travel
/// over the bus in simulated time. Same seed and inputs give the same ledgers
/// in both single-threaded and threaded mode.
class SimNetwork
{
public:
    /// With `data_dir` the network is written there (overwriting) and every
    /// node persists its ledgers; otherwise everything stays in memory.
    SimNetwork(NetworkBundle bundle, SimOptions options,
        std::optional<std::filesystem::path> data_dir = std::nullopt);
    ~SimNetwork();
    SimNetwork(const SimNetwork&) = delete;
    SimNetwork& operator=(const SimNetwork&) = delete;

    const NetworkBundle& bundle() const { return m_bundle; }
    std::int64_t now() const { return m_now; }
    Peer& peer(std::string_view node_id);
    Orderer& orderer() { return *m_orderer; }
    Gateway& gateway(std::string_view node_id);
    std::vector<std::string> node_ids() const;
    const SimStats& stats() const { return m_stats; }

    /// Submits through the participant's home node gateway at the current time.
    SubmitOutcome submit(const std::string& participant, const std::string& channel_id,
        const std::string& contract_id, const std::string& operation, const Document& args);

    /// Runs events up to now + ms.
    void advance(std::int64_t ms);
    /// Runs until nothing is queued or in flight and every member node holds
    /// every ordered block. Throws Error(Timeout) after settle_limit_ms.
    void settle();
    bool settled() const;

    /// Governance create_channel followed by the channel's grain genesis.
    /// Throws the governance rejection (DuplicateChannel, Unauthorized, ...).
    void create_channel(const std::string& admin, const ChannelConfig& channel);

    ConvergenceReport convergence() const;

private:
    struct Message;
    struct Node;
    struct Bus;
    class BusOrdererClient;

    void run_until(std::int64_t until);
    void step(std::int64_t t);
    void broadcast(const std::vector<ledger::Block>& blocks, std::int64_t t, std::vector<Message>& out);
    void schedule_pulls(std::int64_t t);
    Node& node(std::string_view node_id);
    const Node& node(std::string_view node_id) const;

    NetworkBundle m_bundle;
    SimOptions m_options;
    std::int64_t m_now = 0;
    std::int64_t m_next_pull = 0;
    std::vector<std::unique_ptr<Node>> m_nodes;
    std::unique_ptr<Orderer> m_orderer;
    std::unique_ptr<Bus> m_bus;
    SimStats m_stats;
};

/// ScenarioClient over a SimNetwork: submits the batch, settles, and reads
/// each status from the submitter's home peer.
class SimScenarioClient : public grain::ScenarioClient
{
public:
    explicit SimScenarioClient(SimNetwork& network) : m_network(network) {}
    std::vector<grain::SubmitResult> submit_batch(const std::vector<grain::Submission>& batch) override;

private:
    SimNetwork& m_network;
};

}  // namespace grainledger::network
