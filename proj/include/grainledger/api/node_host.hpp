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

#include "grainledger/api/http.hpp"
#include "grainledger/network/bootstrap.hpp"
#include "grainledger/network/gateway.hpp"
#include "grainledger/network/orderer.hpp"
#include "grainledger/network/peer.hpp"

#include <atomic>
#include <memory>
#include <optional>
#include <string>
#include <thread>

namespace httplib
{
class Server;
}

namespace grainledger::api
{
struct HostOptions
{
    /// Overrides the node's peer endpoint (host:port) for the internal server.
    std::optional<std::string> peer_listen;
    std::chrono::milliseconds sync_interval{20};
    std::chrono::milliseconds tick_interval{5};
    /// How long an endorser waits to catch up with the requesting gateway.
    std::chrono::milliseconds endorse_catch_up{3000};
};

/// Live runtime of one node: its peer, the orderer when the node hosts it, a
/// gateway whose remote endorsers and orderer are reached over HTTP, and the
/// internal server other nodes call. A sync thread pulls ordered blocks.
class NodeHost
{
public:
    NodeHost(network::NodeDir dir, HostOptions options = {});
    ~NodeHost();
    NodeHost(const NodeHost&) = delete;
    NodeHost& operator=(const NodeHost&) = delete;

    /// Opens the ledgers and binds the internal server. Throws Error(Io) when
    /// the address is in use, Error(BadRecord) on damaged ledgers.
    void start();
    void stop();

    const network::NodeDir& dir() const { return m_dir; }
    const std::string& node_id() const { return m_dir.settings.config.node_id; }
    network::Peer& peer() { return *m_peer; }
    const network::Peer& peer() const { return *m_peer; }
    network::Orderer* orderer() { return m_orderer.get(); }
    network::Gateway& gateway() { return *m_gateway; }
    /// First non-governance channel the node belongs to ("gebn-main" when held).
    std::string default_channel() const;
    int peer_port() const { return m_peer_port; }

    /// Waits until every channel held locally has caught up with the orderer.
    bool wait_synced(std::chrono::milliseconds timeout);

private:
    class HttpEndorser;
    class HttpOrdererClient;
    class LocalOrdererClient;

    void install_routes();
    void sync_loop();
    void tick_loop();
    std::vector<ledger::Block> fetch(const std::string& channel, std::uint64_t from);
    std::map<std::string, std::uint64_t> orderer_heights();
    JsonClient orderer_client() const;

    network::NodeDir m_dir;
    HostOptions m_options;
    std::unique_ptr<network::Peer> m_peer;
    std::unique_ptr<network::Orderer> m_orderer;
    std::unique_ptr<network::OrdererClient> m_orderer_link;
    std::map<std::string, std::unique_ptr<network::Endorser>> m_endorsers;
    std::unique_ptr<network::Gateway> m_gateway;
    std::unique_ptr<httplib::Server> m_server;
    std::thread m_server_thread;
    std::thread m_sync_thread;
    std::thread m_tick_thread;
    std::atomic<bool> m_running{false};
    int m_peer_port = 0;
};

}  // namespace grainledger::api
