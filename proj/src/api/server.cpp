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
#include "grainledger/api/server.hpp"
#include "grainledger/common/bytes.hpp"
#include "grainledger/grain/provenance.hpp"
#include "grainledger/identity/registry.hpp"

#include <httplib.h>
#include <sodium.h>

namespace grainledger::api
{
namespace
{
constexpr std::size_t kDefaultLimit = 1000;
constexpr std::size_t kServerThreads = 32;

/// An error answered with a specific status instead of the code's default.
struct Rejection
{
    int status;
    Error error;
};

[[noreturn]] void reject(int status, ErrorCode code, const std::string& message)
{
    throw Rejection{status, Error(code, message)};
}

Document read_body(const httplib::Request& req)
{
    try
    {
        Document doc = ledger::parse_document(req.body);
        if (!doc.is_object())
            fail(ErrorCode::InvalidArgument, "request body must be a JSON object");
        return doc;
    }
    catch (const Error& e)
    {
        fail(ErrorCode::InvalidArgument, "request body is not JSON: " + e.message());
    }
}

std::string required_string(const Document& body, const char* field)
{
    auto it = body.find(field);
    if (it == body.end() || !it->is_string() || it->get<std::string>().empty())
        fail(ErrorCode::InvalidArgument, std::string("missing string field '") + field + "'");
    return it->get<std::string>();
}

std::size_t limit_param(const httplib::Request& req)
{
    if (!req.has_param("limit"))
        return kDefaultLimit;
    try
    {
        return std::stoul(req.get_param_value("limit"));
    }
    catch (const std::exception&)
    {
        fail(ErrorCode::InvalidArgument, "bad limit");
    }
}

bool field_matches(const Document& value, const std::string& field, const std::string& expected)
{
    if (!value.is_object())
        return false;
    auto it = value.find(field);
    if (it == value.end())
        return false;
    if (it->is_string())
        return it->get<std::string>() == expected;
    return it->dump() == expected;
}

std::string random_token()
{
    identity::ensure_sodium();
    Bytes raw(32);
    randombytes_buf(raw.data(), raw.size());
    return to_hex(raw);
}

Document asset_document(const std::string& channel, const std::string& registry, const std::string& id,
    const ledger::StateReader::Entry& entry)
{
    return {
        {"channel_id", channel},
        {"id", id},
        {"registry", registry},
        {"value", entry.value},
        {"version", ledger::to_document(entry.version)},
    };
}

const char* kPlaceholder =
    "<!doctype html><html><head><meta charset=\"utf-8\"><title>GrainLedger</title></head>"
    "<body><p>The operator console bundle is not installed on this node. "
    "Place the built assets in the node's ui/ directory.</p></body></html>";
}  // namespace

Document Session::to_document() const
{
    return {{"expires_at", expires_at}, {"participant_id", participant_id}, {"role", std::string(to_string(role))}};
}

Session SessionStore::issue(const std::string& participant_id, Role role, std::int64_t now)
{
    Session s{random_token(), participant_id, role, now + m_ttl_ms};
    std::lock_guard lock(m_mutex);
    m_sessions[s.token] = s;
    return s;
}

std::optional<Session> SessionStore::find(const std::string& token, std::int64_t now)
{
    std::lock_guard lock(m_mutex);
    auto it = m_sessions.find(token);
    if (it == m_sessions.end())
        return std::nullopt;
    if (now >= it->second.expires_at)
    {
        m_sessions.erase(it);
        return std::nullopt;
    }
    return it->second;
}

void SessionStore::revoke(const std::string& token)
{
    std::lock_guard lock(m_mutex);
    m_sessions.erase(token);
}

ApiServer::ApiServer(NodeHost& host, ApiOptions options)
  : m_host(host), m_options(std::move(options)), m_sessions(m_options.session_ttl_ms)
{}

ApiServer::~ApiServer()
{
    stop();
}

void ApiServer::start()
{
    m_server = std::make_unique<httplib::Server>();
    m_server->new_task_queue = [] { return new httplib::ThreadPool(kServerThreads); };
    use_exclusive_bind(*m_server);
    install_routes();
    Endpoint listen = Endpoint::parse(m_options.listen);
    if (listen.port == 0)
        m_port = m_server->bind_to_any_port(listen.host);
    else
        m_port = m_server->bind_to_port(listen.host, listen.port) ? listen.port : -1;
    if (m_port < 0)
        fail(ErrorCode::Io, "cannot bind API address " + listen.str());
    m_running = true;
    m_thread = std::thread([this] { m_server->listen_after_bind(); });
}

void ApiServer::stop()
{
    if (!m_running.exchange(false))
        return;
    m_server->stop();
    if (m_thread.joinable())
        m_thread.join();
}

Session ApiServer::authenticate(const httplib::Request& req, bool allow_query_token)
{
    std::string token;
    const std::string header = req.get_header_value("Authorization");
    if (header.starts_with("Bearer "))
        token = header.substr(7);
    else if (allow_query_token && req.has_param("token"))
        token = req.get_param_value("token");
    if (token.empty())
        reject(401, ErrorCode::Unauthorized, "missing bearer token");
    auto session = m_sessions.find(token, now_ms());
    if (!session)
        reject(401, ErrorCode::Unauthorized, "invalid or expired token");
    const bool active = m_host.peer().with_governance([&](const identity::GovernanceView& view) {
        return view.active_identity(session->participant_id).has_value();
    });
    if (!active)
    {
        m_sessions.revoke(token);
        reject(423, ErrorCode::RevokedIdentity, session->participant_id + " has been revoked");
    }
    return *session;
}

std::string ApiServer::channel_for(const httplib::Request& req) const
{
    std::string channel = req.has_param("channel") ? req.get_param_value("channel") : m_host.default_channel();
    if (!m_host.peer().holds(channel))
        fail(ErrorCode::NotChannelMember, m_host.node_id() + " is not a member of channel " + channel);
    return channel;
}

Document ApiServer::tx_status(const std::string& tx_id) const
{
    if (auto status = m_host.peer().find_tx(tx_id))
        return status->to_document(tx_id);
    std::lock_guard lock(m_pending_mutex);
    auto it = m_pending.find(tx_id);
    if (it == m_pending.end())
        fail(ErrorCode::AssetNotFound, "unknown transaction " + tx_id);
    return {{"channel_id", it->second}, {"status", "PENDING"}, {"tx_id", tx_id}};
}

void ApiServer::install_routes()
{
    auto handle = [](auto fn) {
        return [fn](const httplib::Request& req, httplib::Response& res) {
            try
            {
                fn(req, res);
            }
            catch (const Rejection& r)
            {
                send_json(res, r.status, error_body(r.error));
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

    m_server->set_default_headers({{"Access-Control-Allow-Origin", "*"}});
    m_server->Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Authorization, Content-Type, Last-Event-ID");
        res.status = 204;
    });

    m_server->Get("/healthz", [this](const httplib::Request&, httplib::Response& res) {
        send_json(res, 200, {{"node_id", m_host.node_id()}, {"status", "ok"}});
    });

    m_server->Post("/auth/login", handle([this](const httplib::Request& req, httplib::Response& res) {
        Document body = read_body(req);
        const std::string user = required_string(body, "username");
        const std::string password = body.value("password", std::string());
        if (!m_host.dir().credentials.verify(user, password) || !m_host.dir().keystore.contains(user))
            reject(401, ErrorCode::Unauthorized, "bad credentials");
        auto [participant, identity] = m_host.peer().with_governance([&](const identity::GovernanceView& view) {
            return std::make_pair(view.participant(user), view.identity(user));
        });
        if (!participant || !identity)
            reject(401, ErrorCode::Unauthorized, "bad credentials");
        if (identity->revoked)
            reject(423, ErrorCode::RevokedIdentity, user + " has been revoked");
        Session s = m_sessions.issue(user, participant->role, now_ms());
        Document out = s.to_document();
        out["token"] = s.token;
        send_json(res, 200, out);
    }));

    m_server->Post("/auth/logout", handle([this](const httplib::Request& req, httplib::Response& res) {
        authenticate(req);
        m_sessions.revoke(req.get_header_value("Authorization").substr(7));
        send_json(res, 200, {{"logged_out", true}});
    }));

    m_server->Get("/session", handle([this](const httplib::Request& req, httplib::Response& res) {
        send_json(res, 200, authenticate(req).to_document());
    }));

    m_server->Post("/transactions", handle([this](const httplib::Request& req, httplib::Response& res) {
        Session session = authenticate(req);
        Document body = read_body(req);
        const std::string contract_id = required_string(body, "contract_id");
        const std::string operation = required_string(body, "operation");
        Document args = body.contains("args") ? body["args"] : Document::object();
        if (!args.is_object())
            fail(ErrorCode::InvalidArgument, "args must be an object");
        std::string channel = body.contains("channel") ? required_string(body, "channel") : m_host.default_channel();
        if (!m_host.peer().holds(channel))
            fail(ErrorCode::NotChannelMember, m_host.node_id() + " is not a member of channel " + channel);

        auto outcome = m_host.gateway().submit(session.participant_id, channel, contract_id, operation, args);
        {
            std::lock_guard lock(m_pending_mutex);
            m_pending[outcome.tx_id] = channel;
        }
        if (outcome.aborted)
        {
            send_json(res, 422, {{"error", "ContractAbort"}, {"message", outcome.abort_reason},
                                    {"status", "PENDING"}, {"tx_id", outcome.tx_id}});
            return;
        }
        send_json(res, 202, {{"channel_id", channel}, {"status", "PENDING"}, {"tx_id", outcome.tx_id}});
    }));

    m_server->Get(R"(/transactions/([0-9a-fA-F]+))", handle([this](const httplib::Request& req, httplib::Response& res) {
        authenticate(req);
        send_json(res, 200, tx_status(req.matches[1]));
    }));

    m_server->Get("/channels", handle([this](const httplib::Request& req, httplib::Response& res) {
        authenticate(req);
        Document out = Document::array();
        auto dir = m_host.peer().directory();
        for (const auto& id : m_host.peer().channels())
        {
            const auto* ledger = m_host.peer().ledger(id);
            Document entry = {{"channel_id", id}, {"height", ledger->height()}, {"state_hash", ledger->state_hash().hex()},
                {"tip", ledger->tip_hash().hex()}};
            if (const auto* cfg = dir->channel(id))
                entry["config"] = cfg->to_document();
            out.push_back(std::move(entry));
        }
        send_json(res, 200, {{"channels", out}, {"default_channel", m_host.default_channel()}});
    }));

    m_server->Get(R"(/assets/([^/]+)/(.+))", handle([this](const httplib::Request& req, httplib::Response& res) {
        authenticate(req);
        const std::string channel = channel_for(req);
        const std::string registry = req.matches[1];
        const std::string id = req.matches[2];
        auto doc = m_host.peer().ledger(channel)->read([&](const ledger::StateReader& state) -> std::optional<Document> {
            const auto* entry = state.find(registry + "#" + id);
            if (!entry)
                return std::nullopt;
            return asset_document(channel, registry, id, *entry);
        });
        if (!doc)
            fail(ErrorCode::AssetNotFound, "asset not found: " + registry + "#" + id);
        send_json(res, 200, *doc);
    }));

    m_server->Get(R"(/assets/([^/]+))", handle([this](const httplib::Request& req, httplib::Response& res) {
        authenticate(req);
        const std::string channel = channel_for(req);
        const std::string registry = req.matches[1];
        const std::size_t limit = limit_param(req);
        std::vector<std::pair<std::string, std::string>> filters;
        for (const auto& [k, v] : req.params)
            if (k != "channel" && k != "limit" && k != "token")
                filters.emplace_back(k, v);
        Document assets = Document::array();
        const std::string prefix = registry + "#";
        m_host.peer().ledger(channel)->read([&](const ledger::StateReader& state) {
            state.scan(prefix, [&](const std::string& key, const ledger::StateReader::Entry& entry) {
                if (assets.size() >= limit)
                    return;
                for (const auto& [field, expected] : filters)
                    if (!field_matches(entry.value, field, expected))
                        return;
                assets.push_back(asset_document(channel, registry, key.substr(prefix.size()), entry));
            });
            return 0;
        });
        const std::size_t count = assets.size();
        send_json(res, 200, {{"assets", std::move(assets)}, {"count", count}});
    }));

    m_server->Get(R"(/provenance/lots/(.+))", handle([this](const httplib::Request& req, httplib::Response& res) {
        authenticate(req);
        const std::string channel = channel_for(req);
        const std::string lot = req.matches[1];
        send_json(res, 200, m_host.peer().ledger(channel)->read([&](const ledger::StateReader& state) {
            return grain::trace_lot_provenance(state, lot);
        }));
    }));

    m_server->Get(R"(/receipts/(.+))", handle([this](const httplib::Request& req, httplib::Response& res) {
        authenticate(req);
        const std::string channel = channel_for(req);
        const std::string invoice = req.matches[1];
        auto receipt = m_host.peer().ledger(channel)->read([&](const ledger::StateReader& state) {
            return grain::issue_ingest_receipt(state, invoice, m_host.dir().node_key, m_host.node_id(), now_ms());
        });
        send_json(res, 200, receipt.to_document());
    }));

    m_server->Get(R"(/blocks/([^/]+)/([0-9]+))", handle([this](const httplib::Request& req, httplib::Response& res) {
        authenticate(req);
        const std::string channel = req.matches[1];
        if (!m_host.peer().holds(channel))
            fail(ErrorCode::NotChannelMember, m_host.node_id() + " is not a member of channel " + channel);
        auto blocks = m_host.peer().ledger(channel)->blocks_from(std::stoull(req.matches[2]), 1);
        if (blocks.empty())
            fail(ErrorCode::AssetNotFound, "no block at that height");
        send_json(res, 200, blocks.front().to_document());
    }));

    m_server->Get("/events", handle([this](const httplib::Request& req, httplib::Response& res) {
        authenticate(req);
        std::uint64_t after = req.has_param("after") ? std::stoull(req.get_param_value("after")) : 0;
        const std::string channel = req.has_param("channel") ? req.get_param_value("channel") : std::string();
        Document out = Document::array();
        for (const auto& e : m_host.peer().events().since(after, limit_param(req)))
            if (channel.empty() || e.event.channel_id == channel)
                out.push_back(e.to_document());
        send_json(res, 200, {{"events", out}, {"last", m_host.peer().events().last()}});
    }));

    m_server->Get("/events/stream", handle([this](const httplib::Request& req, httplib::Response& res) {
        Session session = authenticate(req, true);
        std::uint64_t after = m_host.peer().events().last();
        if (req.has_header("Last-Event-ID"))
            after = std::stoull(req.get_header_value("Last-Event-ID"));
        else if (req.has_param("after"))
            after = std::stoull(req.get_param_value("after"));
        const std::string channel = req.has_param("channel") ? req.get_param_value("channel") : std::string();
        auto cursor = std::make_shared<std::uint64_t>(after);
        res.set_header("Cache-Control", "no-cache");
        res.set_chunked_content_provider("text/event-stream",
            [this, session, channel, cursor](std::size_t, httplib::DataSink& sink) {
                if (!m_running || now_ms() >= session.expires_at || !m_sessions.find(session.token, now_ms()))
                {
                    sink.done();
                    return true;
                }
                auto& log = m_host.peer().events();
                auto events = log.since(*cursor, 256);
                if (events.empty())
                {
                    if (!log.wait(*cursor, m_options.stream_keepalive))
                    {
                        const std::string ping = ": keepalive\n\n";
                        return sink.write(ping.data(), ping.size());
                    }
                    return true;
                }
                for (const auto& e : events)
                {
                    *cursor = e.sequence;
                    if (!channel.empty() && e.event.channel_id != channel)
                        continue;
                    std::string frame = "id: " + std::to_string(e.sequence) + "\nevent: " + e.event.event.event_name +
                                        "\ndata: " + ledger::canonicalize(e.to_document()) + "\n\n";
                    if (!sink.write(frame.data(), frame.size()))
                        return false;
                }
                return true;
            });
    }));

    m_server->Get("/ui/config.json", [](const httplib::Request& req, httplib::Response& res) {
        send_json(res, 200, {{"api_base_url", "http://" + req.get_header_value("Host")}});
    });
    if (m_options.ui_dir && std::filesystem::is_directory(*m_options.ui_dir))
    {
        m_server->set_mount_point("/ui", m_options.ui_dir->string());
    }
    else
    {
        m_server->Get(R"(/ui/?)", [](const httplib::Request&, httplib::Response& res) {
            res.set_content(kPlaceholder, "text/html");
        });
    }
}

}  // namespace grainledger::api
