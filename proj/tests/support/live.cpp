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
#include "support/live.hpp"
#include "support/bench.hpp"

#include <algorithm>

#include <unistd.h>

namespace grainledger::test
{
int free_port_base()
{
    return 20000 + static_cast<int>(::getpid() % 2000) * 10;
}

network::Topology local_topology(int base)
{
    network::Topology t = seeded_topology();
    for (std::size_t i = 0; i < t.nodes.size(); ++i)
    {
        t.nodes[i].endpoint = "127.0.0.1:" + std::to_string(base + static_cast<int>(i));
        t.nodes[i].api_listen = "127.0.0.1:" + std::to_string(base + 5 + static_cast<int>(i));
    }
    return t;
}

LiveNetwork::LiveNetwork(const std::string& name) : m_dir(scratch_dir(name))
{
    network::write_network_dir(network::bootstrap_network(local_topology(free_port_base())), m_dir, true);
    std::vector<network::NodeDir> dirs;
    for (const auto& path : network::network_node_dirs(m_dir))
        dirs.push_back(network::load_node_dir(path));
    // Orderer first, so the others find it on their first sync.
    std::stable_partition(dirs.begin(), dirs.end(), [](const auto& d) { return d.settings.config.is_orderer; });
    for (auto& dir : dirs)
    {
        Node n;
        const std::string listen = dir.settings.config.api_listen;
        n.host = std::make_unique<api::NodeHost>(std::move(dir));
        n.host->start();
        n.server = std::make_unique<api::ApiServer>(*n.host, api::ApiOptions{listen});
        n.server->start();
        m_nodes.push_back(std::move(n));
    }
}

LiveNetwork::~LiveNetwork()
{
    stop();
}

void LiveNetwork::stop()
{
    for (auto& n : m_nodes)
        if (n.server)
            n.server->stop();
    // Orderer last, so the other nodes do not lose it mid-sync.
    for (bool orderer : {false, true})
        for (auto& n : m_nodes)
            if (n.host && (n.host->orderer() != nullptr) == orderer)
                n.host->stop();
}

std::string LiveNetwork::api_url(const std::string& node_id) const
{
    for (const auto& n : m_nodes)
        if (n.host->node_id() == node_id)
            return "http://" + n.host->dir().settings.config.api_listen;
    throw Error(ErrorCode::InvalidArgument, "no node " + node_id);
}

api::NodeHost& LiveNetwork::host(const std::string& node_id)
{
    for (auto& n : m_nodes)
        if (n.host->node_id() == node_id)
            return *n.host;
    throw Error(ErrorCode::InvalidArgument, "no node " + node_id);
}

bool LiveNetwork::wait_synced(std::chrono::milliseconds timeout)
{
    for (auto& n : m_nodes)
        if (!n.host->wait_synced(timeout))
            return false;
    return true;
}

}  // namespace grainledger::test
