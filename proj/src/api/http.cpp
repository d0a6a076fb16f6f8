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
#include "grainledger/api/http.hpp"
#include "grainledger/common/bytes.hpp"
#include "grainledger/ledger/digest.hpp"

#include <httplib.h>

#include <charconv>

namespace grainledger::api
{
int http_status(ErrorCode code)
{
    switch (code)
    {
    case ErrorCode::Unauthorized:
    case ErrorCode::AclDenied:
    case ErrorCode::NotChannelMember:
        return 403;
    case ErrorCode::RevokedIdentity:
        return 423;
    case ErrorCode::EndorsementMismatch:
    case ErrorCode::DuplicateChannel:
    case ErrorCode::DuplicateId:
        return 409;
    case ErrorCode::ContractAbort:
    case ErrorCode::SimulationFailed:
        return 422;
    case ErrorCode::AssetNotFound:
    case ErrorCode::LotNotFound:
    case ErrorCode::UnknownChannel:
    case ErrorCode::UnknownParticipant:
        return 404;
    case ErrorCode::PolicyNotMet:
    case ErrorCode::Timeout:
        return 503;
    case ErrorCode::Io:
    case ErrorCode::BadRecord:
        return 500;
    default:
        return 400;
    }
}

void use_exclusive_bind(httplib::Server& server)
{
    server.set_socket_options([](socket_t sock) {
        int yes = 1;
        ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });
}

Document error_body(const Error& e)
{
    return {{"error", std::string(to_string(e.code()))}, {"message", e.message()}};
}

void send_json(httplib::Response& res, int status, const Document& body)
{
    res.status = status;
    res.set_content(ledger::canonicalize(body), "application/json");
}

void send_error(httplib::Response& res, const Error& e)
{
    send_json(res, http_status(e.code()), error_body(e));
}

Endpoint Endpoint::parse(std::string_view text)
{
    if (text.starts_with("http://"))
        text.remove_prefix(7);
    while (text.ends_with("/"))
        text.remove_suffix(1);
    auto colon = text.rfind(':');
    if (colon == std::string_view::npos || colon == 0)
        fail(ErrorCode::BadConfig, "endpoint must be host:port, got '" + std::string(text) + "'");
    Endpoint ep;
    ep.host = std::string(text.substr(0, colon));
    auto port = text.substr(colon + 1);
    auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), ep.port);
    if (ec != std::errc{} || ptr != port.data() + port.size() || ep.port < 0 || ep.port > 65535)
        fail(ErrorCode::BadConfig, "bad port in endpoint '" + std::string(text) + "'");
    return ep;
}

std::int64_t now_ms()
{
    return std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::system_clock::now().time_since_epoch())
        .count();
}

std::string node_request_bytes(
    std::string_view method, std::string_view path, std::int64_t timestamp, std::string_view body)
{
    return std::string(method) + " " + std::string(path) + "\n" + std::to_string(timestamp) + "\n" +
           ledger::hash_bytes(body).hex();
}

HeaderMap sign_node_request(const std::string& node_id, const identity::KeyPair& key, std::string_view method,
    std::string_view path, std::string_view body, std::int64_t timestamp)
{
    auto sig = key.sign(node_request_bytes(method, path, timestamp, body));
    return {
        {kNodeHeader, node_id},
        {kTimestampHeader, std::to_string(timestamp)},
        {kSignatureHeader, to_hex(sig.bytes)},
    };
}

std::string verify_node_request(const httplib::Request& req, const network::Directory& directory, std::int64_t now)
{
    const std::string node_id = req.get_header_value(kNodeHeader);
    const std::string ts_text = req.get_header_value(kTimestampHeader);
    const std::string sig_hex = req.get_header_value(kSignatureHeader);
    if (node_id.empty() || ts_text.empty() || sig_hex.empty())
        fail(ErrorCode::Unauthorized, "node request headers missing");
    auto node = directory.nodes.find(node_id);
    if (node == directory.nodes.end())
        fail(ErrorCode::Unauthorized, "unknown node " + node_id);
    std::int64_t ts = 0;
    auto [ptr, ec] = std::from_chars(ts_text.data(), ts_text.data() + ts_text.size(), ts);
    if (ec != std::errc{} || ptr != ts_text.data() + ts_text.size())
        fail(ErrorCode::Unauthorized, "bad timestamp");
    if (ts < now - kNodeRequestWindowMs || ts > now + kNodeRequestWindowMs)
        fail(ErrorCode::Unauthorized, "stale node request");
    ledger::Signature sig;
    sig.scheme = std::string(identity::kEd25519);
    try
    {
        sig.bytes = from_hex(sig_hex);
    }
    catch (const Error&)
    {
        fail(ErrorCode::Unauthorized, "bad signature encoding");
    }
    if (!identity::verify_signature(sig, node_request_bytes(req.method, req.target, ts, req.body), node->second.public_key))
        fail(ErrorCode::Unauthorized, "node signature does not verify");
    return node_id;
}

void JsonClient::Response::raise() const
{
    std::string code = body.is_object() && body.contains("error") && body["error"].is_string()
                           ? body["error"].get<std::string>()
                           : std::string();
    std::string message = body.is_object() && body.contains("message") && body["message"].is_string()
                              ? body["message"].get<std::string>()
                              : "HTTP " + std::to_string(status);
    if (auto parsed = parse_error_code(code))
        throw Error(*parsed, message);
    throw Error(ErrorCode::Io, message);
}

JsonClient::JsonClient(std::string base, std::chrono::milliseconds timeout)
  : m_endpoint(Endpoint::parse(base)), m_timeout(timeout)
{}

namespace
{
JsonClient::Response convert(const httplib::Result& result, const Endpoint& ep)
{
    if (!result)
        fail(ErrorCode::Io, "cannot reach " + ep.str() + ": " + httplib::to_string(result.error()));
    JsonClient::Response out;
    out.status = result->status;
    if (!result->body.empty())
    {
        try
        {
            out.body = ledger::parse_document(result->body);
        }
        catch (const Error&)
        {
            out.body = {{"error", "Io"}, {"message", result->body}};
        }
    }
    return out;
}

httplib::Headers to_headers(const HeaderMap& headers)
{
    return httplib::Headers(headers.begin(), headers.end());
}

void configure(httplib::Client& client, std::chrono::milliseconds timeout)
{
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
}
}  // namespace

JsonClient::Response JsonClient::get(const std::string& path, const HeaderMap& headers) const
{
    httplib::Client client(m_endpoint.host, m_endpoint.port);
    configure(client, m_timeout);
    return convert(client.Get(path, to_headers(headers)), m_endpoint);
}

std::string JsonClient::encode(const Document& body)
{
    return ledger::canonicalize(body);
}

JsonClient::Response JsonClient::post(const std::string& path, const Document& body, const HeaderMap& headers) const
{
    httplib::Client client(m_endpoint.host, m_endpoint.port);
    configure(client, m_timeout);
    return convert(client.Post(path, to_headers(headers), encode(body), "application/json"), m_endpoint);
}

}  // namespace grainledger::api
