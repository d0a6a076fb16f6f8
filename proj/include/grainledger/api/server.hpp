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

#include "grainledger/api/node_host.hpp"
#include "grainledger/identity/participant.hpp"

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>

namespace grainledger::api
{
using identity::Role;

struct Session
{
    std::string token;
    std::string participant_id;
    Role role = Role::producer;
    std::int64_t expires_at = 0;  // UTC ms

    Document to_document() const;
};

class SessionStore
{
public:
    explicit SessionStore(std::int64_t ttl_ms) : m_ttl_ms(ttl_ms) {}

    Session issue(const std::string& participant_id, Role role, std::int64_t now);
    /// Expired sessions are removed and not returned.
    std::optional<Session> find(const std::string& token, std::int64_t now);
    void revoke(const std::string& token);

private:
    std::int64_t m_ttl_ms;
    std::mutex m_mutex;
    std::map<std::string, Session> m_sessions;
};

struct ApiOptions
{
    std::string listen;  // host:port; port 0 picks a free port
    std::optional<std::filesystem::path> ui_dir;
    std::int64_t session_ttl_ms = 3600000;
    std::chrono::milliseconds stream_keepalive{1000};
};

/// Client-facing REST service of one node. Every route except /healthz,
/// /auth/login and /ui needs `Authorization: Bearer <token>`; the event
/// stream also accepts `?token=` for browser EventSource clients.
class ApiServer
{
public:
    ApiServer(NodeHost& host, ApiOptions options);
    ~ApiServer();
    ApiServer(const ApiServer&) = delete;
    ApiServer& operator=(const ApiServer&) = delete;

    /// Throws Error(Io) when the address cannot be bound.
    void start();
    void stop();
    int port() const { return m_port; }

private:
    void install_routes();
    Session authenticate(const httplib::Request& req, bool allow_query_token = false);
    std::string channel_for(const httplib::Request& req) const;
    Document tx_status(const std::string& tx_id) const;

    NodeHost& m_host;
    ApiOptions m_options;
    SessionStore m_sessions;
    std::unique_ptr<httplib::Server> m_server;
    std::thread m_thread;
    std::atomic<bool> m_running{false};
    int m_port = 0;

    mutable std::mutex m_pending_mutex;
    std::map<std::string, std::string> m_pending;  // tx_id -> channel
};

}  // namespace grainledger::api
