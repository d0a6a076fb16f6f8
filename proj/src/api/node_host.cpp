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
#include "grainledger/api/node_host.hpp"

#include <httplib.h>

#include <iostream>

namespace grainledger::api
{
namespace
{
constexpr std::size_t kFetchBatch = 64;

Document read_body(const httplib::Request& req)
{
    try
    {
        return ledger::parse_document(req.body);
    }
    catch (const Error& e)
    {
        fail(ErrorCode::InvalidArgument, "request body is not JSON: " + e.message());
    }
}

std::uint64_t query_uint(const httplib::Request& req, const char* name, std::uint64_t fallback)
{
    if (!req.has_param(name))
        return fallback;
    try
    {
        return std::stoull(req.get_param_value(name));
    }
    catch (const std::exception&)
    {
        fail(ErrorCode::InvalidArgument, std::string("bad query parameter ") + name);
    }
}
}  // namespace

class NodeHost::LocalOrdererClient : public network::OrdererClient
{
public:
    explicit LocalOrdererClient(network::Orderer& orderer) : m_orderer(orderer) {}
    void submit(const ledger::TransactionRecord& record) override { m_orderer.submit(record, now_ms()); }
    void open_channel(const ledger::TransactionRecord& record) override { m_orderer.open_channel(record, now_ms()); }

private:
    network::Orderer& m_orderer;
};

class NodeHost::HttpOrdererClient : public network::OrdererClient
{
public:
    explicit HttpOrdererClient(const NodeHost& host) : m_host(host) {}
    void submit(const ledger::TransactionRecord& record) override { post("/orderer/submit", record); }
    void open_channel(const ledger::TransactionRecord& record) override { post("/orderer/open_channel", record); }

private:
    void post(const std::string& path, const ledger::TransactionRecord& record)
    {
        Document body = {{"record", record.to_document()}};
        auto headers = sign_node_request(m_host.node_id(), m_host.m_dir.node_key, "POST", path,
            JsonClient::encode(body), now_ms());
        auto res = m_host.orderer_client().post(path, body, headers);
        if (!res.ok())
            res.raise();
    }

    const NodeHost& m_host;
};

class NodeHost::HttpEndorser : public network::Endorser
{
public:
    HttpEndorser(const NodeHost& host, std::string endpoint) : m_host(host), m_client(std::move(endpoint)) {}

    network::ProposalResponse endorse(const ledger::TransactionEnvelope& envelope) override
    {
        const auto* local = m_host.peer().ledger(envelope.channel_id);
        Document body = {{"envelope", envelope.to_document()}, {"min_height", local ? local->height() : 0}};
        const std::string path = "/peer/endorse";
        auto headers =
            sign_node_request(m_host.node_id(), m_host.m_dir.node_key, "POST", path, JsonClient::encode(body), now_ms());
        auto res = m_client.post(path, body, headers);
        if (!res.ok())
            res.raise();
        return network::ProposalResponse::from_document(res.body);
    }

private:
    const NodeHost& m_host;
    JsonClient m_client;
};

NodeHost::NodeHost(network::NodeDir dir, HostOptions options) : m_dir(std::move(dir)), m_options(std::move(options)) {}

NodeHost::~NodeHost()
{
    stop();
}

JsonClient NodeHost::orderer_client() const
{
    return JsonClient(m_dir.settings.orderer_endpoint);
}

std::string NodeHost::default_channel() const
{
    auto channels = m_peer->channels();
    for (const auto& c : channels)
        if (c == "gebn-main")
            return c;
    for (const auto& c : channels)
        if (c != identity::kGovernanceChannel)
            return c;
    return std::string(identity::kGovernanceChannel);
}

void NodeHost::start()
{
    const auto& cfg = m_dir.settings.config;
    m_peer = std::make_unique<network::Peer>(
        network::PeerOptions{cfg.node_id, cfg.org, m_dir.node_key, m_dir.path, m_dir.settings.governance_genesis},
        network::standard_catalog());
    m_peer->open();
    if (cfg.is_orderer)
    {
        network::Peer* host = m_peer.get();
        m_orderer = std::make_unique<network::Orderer>(cfg.node_id, m_dir.path, [host] { return host->directory(); });
        m_orderer->open();
        m_orderer_link = std::make_unique<LocalOrdererClient>(*m_orderer);
    }
    else
    {
        m_orderer_link = std::make_unique<HttpOrdererClient>(*this);
    }
    for (const auto& [id, endpoint] : m_dir.settings.peer_endpoints)
    {
        if (id == cfg.node_id)
            m_endorsers[id] = std::make_unique<network::LocalEndorser>(*m_peer);
        else
            m_endorsers[id] = std::make_unique<HttpEndorser>(*this, endpoint);
    }
    m_gateway = std::make_unique<network::Gateway>(
        *m_peer, m_dir.keystore,
        [this](const std::string& id) -> network::Endorser* {
            auto it = m_endorsers.find(id);
            return it == m_endorsers.end() ? nullptr : it->second.get();
        },
        *m_orderer_link, [] { return now_ms(); });

    m_server = std::make_unique<httplib::Server>();
    install_routes();
    use_exclusive_bind(*m_server);
    Endpoint listen = Endpoint::parse(m_options.peer_listen.value_or(cfg.endpoint));
    if (listen.port == 0)
        m_peer_port = m_server->bind_to_any_port(listen.host);
    else
        m_peer_port = m_server->bind_to_port(listen.host, listen.port) ? listen.port : -1;
    if (m_peer_port < 0)
        fail(ErrorCode::Io, "cannot bind node endpoint " + listen.str());

    m_running = true;
    m_server_thread = std::thread([this] { m_server->listen_after_bind(); });
    m_sync_thread = std::thread([this] { sync_loop(); });
    if (m_orderer)
        m_tick_thread = std::thread([this] { tick_loop(); });
}

void NodeHost::stop()
{
    if (!m_running.exchange(false))
        return;
    if (m_server)
        m_server->stop();
    for (auto* t : {&m_server_thread, &m_sync_thread, &m_tick_thread})
        if (t->joinable())
            t->join();
}

void NodeHost::install_routes()
{
    auto guarded = [this](auto handler) {
        return [this, handler](const httplib::Request& req, httplib::Response& res) {
            try
            {
                std::string caller = verify_node_request(req, *m_peer->directory(), now_ms());
                handler(caller, req, res);
            }
            catch (const Error& e)
            {
                send_error(res, e);
            }
            catch (const std::exception& e)
            {
                send_error(res, Error(ErrorCode::InvalidArgument, e.what()));
            }
        };
    };

    m_server->Post("/peer/endorse", guarded([this](const std::string&, const httplib::Request& req, httplib::Response& res) {
        Document body = read_body(req);
        auto env = ledger::TransactionEnvelope::from_document(body.at("envelope"));
        const std::uint64_t min_height = body.value("min_height", std::uint64_t{0});
        const auto deadline = std::chrono::steady_clock::now() + m_options.endorse_catch_up;
        for (;;)
        {
            const auto* ledger = m_peer->ledger(env.channel_id);
            if (!ledger || ledger->height() >= min_height || std::chrono::steady_clock::now() >= deadline)
                break;
            std::this_thread::sleep_for(std::chrono::milliseconds(2));
        }
        send_json(res, 200, m_peer->endorse(env).to_document());
    }));

    m_server->Get("/orderer/heights", guarded([this](const std::string&, const httplib::Request&, httplib::Response& res) {
        if (!m_orderer)
            fail(ErrorCode::UnknownChannel, node_id() + " does not host the orderer");
        Document heights = Document::object();
        for (const auto& [ch, h] : m_orderer->heights())
            heights[ch] = h;
        send_json(res, 200, {{"heights", heights}});
    }));

    m_server->Get("/orderer/blocks", guarded([this](const std::string& caller, const httplib::Request& req, httplib::Response& res) {
        if (!m_orderer)
            fail(ErrorCode::UnknownChannel, node_id() + " does not host the orderer");
        const std::string channel = req.get_param_value("channel");
        const std::uint64_t from = query_uint(req, "from", 0);
        const std::size_t max = std::min<std::uint64_t>(query_uint(req, "max", kFetchBatch), 256);
        Document blocks = Document::array();
        for (const auto& b : m_orderer->blocks(channel, from, max, caller))
            blocks.push_back(b.to_document());
        send_json(res, 200, {{"blocks", blocks}});
    }));

    auto orderer_post = [this](bool open) {
        return [this, open](const std::string&, const httplib::Request& req, httplib::Response& res) {
            if (!m_orderer)
                fail(ErrorCode::UnknownChannel, node_id() + " does not host the orderer");
            auto record = ledger::TransactionRecord::from_document(read_body(req).at("record"));
            if (open)
                m_orderer->open_channel(std::move(record), now_ms());
            else
                m_orderer->submit(std::move(record), now_ms());
            send_json(res, 202, {{"accepted", true}});
        };
    };
    m_server->Post("/orderer/submit", guarded(orderer_post(false)));
    m_server->Post("/orderer/open_channel", guarded(orderer_post(true)));
    m_server->Get("/healthz", [this](const httplib::Request&, httplib::Response& res) {
        send_json(res, 200, {{"node_id", node_id()}, {"status", "ok"}});
    });
}

std::vector<ledger::Block> NodeHost::fetch(const std::string& channel, std::uint64_t from)
{
    if (m_orderer)
        return m_orderer->blocks(channel, from, kFetchBatch, node_id());
    const std::string path = "/orderer/blocks?channel=" + channel + "&from=" + std::to_string(from) +
                             "&max=" + std::to_string(kFetchBatch);
    auto headers = sign_node_request(node_id(), m_dir.node_key, "GET", path, "", now_ms());
    auto res = orderer_client().get(path, headers);
    if (!res.ok())
        res.raise();
    std::vector<ledger::Block> blocks;
    for (const auto& b : res.body.at("blocks"))
        blocks.push_back(ledger::Block::from_document(b));
    return blocks;
}

std::map<std::string, std::uint64_t> NodeHost::orderer_heights()
{
    if (m_orderer)
        return m_orderer->heights();
    const std::string path = "/orderer/heights";
    auto res = orderer_client().get(path, sign_node_request(node_id(), m_dir.node_key, "GET", path, "", now_ms()));
    if (!res.ok())
        res.raise();
    std::map<std::string, std::uint64_t> out;
    for (const auto& [ch, h] : res.body.at("heights").items())
        out[ch] = h.get<std::uint64_t>();
    return out;
}

void NodeHost::sync_loop()
{
    std::string last_problem;
    while (m_running)
    {
        bool progress = false;
        for (const auto& [channel, next] : m_peer->next_heights())
        {
            if (!m_running)
                break;
            try
            {
                auto blocks = fetch(channel, next);
                for (auto& b : blocks)
                    m_peer->deliver(std::move(b));
                progress = progress || !blocks.empty();
            }
            catch (const Error& e)
            {
                if (e.code() == ErrorCode::UnknownChannel)
                    continue;
                std::string problem = node_id() + ": sync of " + channel + " failed: " + e.what();
                if (problem != last_problem)
                    std::cerr << problem << "\n";
                last_problem = problem;
            }
        }
        if (!progress)
            std::this_thread::sleep_for(m_options.sync_interval);
    }
}

void NodeHost::tick_loop()
{
    while (m_running)
    {
        m_orderer->tick(now_ms());
        std::this_thread::sleep_for(m_options.tick_interval);
    }
}

bool NodeHost::wait_synced(std::chrono::milliseconds timeout)
{
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    while (std::chrono::steady_clock::now() < deadline)
    {
        try
        {
            auto target = orderer_heights();
            bool synced = true;
            for (const auto& [channel, next] : m_peer->next_heights())
            {
                auto it = target.find(channel);
                if (it != target.end() && next < it->second)
                    synced = false;
            }
            if (synced && (!m_orderer || m_orderer->pending() == 0))
                return true;
        }
        catch (const Error&)
        {
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
    return false;
}

}  // namespace grainledger::api
