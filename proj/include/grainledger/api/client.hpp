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
#include "grainledger/grain/scenario.hpp"

#include <map>
#include <string>

namespace grainledger::api
{
/// Logged-in client of one node's API.
class ApiSession
{
public:
    /// Throws Unauthorized (bad credentials), RevokedIdentity or Io.
    ApiSession(std::string base_url, const std::string& username, const std::string& password);

    const std::string& participant() const { return m_participant; }
    const std::string& token() const { return m_token; }
    HeaderMap auth() const { return {{"Authorization", "Bearer " + m_token}}; }
    const JsonClient& client() const { return m_client; }

    /// POST /transactions; the raw response (202, 422 or an error).
    JsonClient::Response submit(const std::string& channel, const std::string& contract_id,
        const std::string& operation, const Document& args) const;
    /// GET /transactions/{tx_id}; throws on errors.
    Document status(const std::string& tx_id) const;
    /// Polls until VALID or INVALID; throws Error(Timeout).
    Document wait_terminal(const std::string& tx_id, std::chrono::milliseconds timeout) const;
    /// GET with the session token; throws on error statuses.
    Document get(const std::string& path) const;

private:
    JsonClient m_client;
    std::string m_participant;
    std::string m_token;
};

/// ScenarioClient against a running node: one session per participant,
/// submissions in order, then polling until every transaction is terminal.
class HttpScenarioClient : public grain::ScenarioClient
{
public:
    HttpScenarioClient(std::string base_url, std::map<std::string, std::string> passwords,
        std::chrono::milliseconds timeout = std::chrono::seconds(60));
    std::vector<grain::SubmitResult> submit_batch(const std::vector<grain::Submission>& batch) override;

private:
    ApiSession& session(const std::string& participant);

    std::string m_base_url;
    std::map<std::string, std::string> m_passwords;
    std::chrono::milliseconds m_timeout;
    std::map<std::string, std::unique_ptr<ApiSession>> m_sessions;
};

}  // namespace grainledger::api
