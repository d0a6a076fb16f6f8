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

#include "grainledger/common/error.hpp"
#include "grainledger/identity/keys.hpp"
#include "grainledger/ledger/canonical.hpp"
#include "grainledger/network/governance.hpp"

#include <chrono>
#include <map>
#include <string>
#include <string_view>

namespace httplib
{
struct Request;
struct Response;
class Server;
}  // namespace httplib

namespace grainledger::api
{
using ledger::Document;

/// HTTP status for an error code.
int http_status(ErrorCode code);

/// {"error": "<Code>", "message": "..."}
Document error_body(const Error& e);
void send_json(httplib::Response& res, int status, const Document& body);
void send_error(httplib::Response& res, const Error& e);

/// "host:port", optionally prefixed by "http://".
struct Endpoint
{
    std::string host;
    int port = 0;

    static Endpoint parse(std::string_view text);
    std::string str() const { return host + ":" + std::to_string(port); }
};

std::int64_t now_ms();

/// Listening sockets take SO_REUSEADDR only, so a second process cannot share
/// a bound port.
void use_exclusive_bind(httplib::Server& server);

// Node-to-node requests carry the sender id, a timestamp and an Ed25519
// signature over "<METHOD> <path>\n<timestamp>\n<sha256(body) hex>".
inline constexpr const char* kNodeHeader = "X-GL-Node";
inline constexpr const char* kTimestampHeader = "X-GL-Timestamp";
inline constexpr const char* kSignatureHeader = "X-GL-Signature";
inline constexpr std::int64_t kNodeRequestWindowMs = 300000;

std::string node_request_bytes(
    std::string_view method, std::string_view path, std::int64_t timestamp, std::string_view body);

using HeaderMap = std::multimap<std::string, std::string>;

HeaderMap sign_node_request(const std::string& node_id, const identity::KeyPair& key, std::string_view method,
    std::string_view path, std::string_view body, std::int64_t timestamp);

/// Returns the calling node. Throws Unauthorized when the headers are
/// missing, stale, or do not verify against the node's registered key.
std::string verify_node_request(const httplib::Request& req, const network::Directory& directory, std::int64_t now);

/// Small blocking JSON client. Throws Error(Io) when the server is unreachable.
class JsonClient
{
public:
    struct Response
    {
        int status = 0;
        Document body;

        bool ok() const { return status >= 200 && status < 300; }
        /// Rebuilds the server-side Error from an error body.
        [[noreturn]] void raise() const;
    };

    explicit JsonClient(std::string base, std::chrono::milliseconds timeout = std::chrono::seconds(10));

    Response get(const std::string& path, const HeaderMap& headers = {}) const;
    Response post(const std::string& path, const Document& body, const HeaderMap& headers = {}) const;
    /// Serialized body of post(), for signing.
    static std::string encode(const Document& body);

    const Endpoint& endpoint() const { return m_endpoint; }

private:
    Endpoint m_endpoint;
    std::chrono::milliseconds m_timeout;
};

}  // namespace grainledger::api
