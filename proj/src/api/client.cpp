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
#include "grainledger/api/client.hpp"

#include <thread>

namespace grainledger::api
{
ApiSession::ApiSession(std::string base_url, const std::string& username, const std::string& password)
  : m_client(std::move(base_url)), m_participant(username)
{
    auto res = m_client.post("/auth/login", {{"password", password}, {"username", username}});
    if (!res.ok())
        res.raise();
    m_token = res.body.at("token").get<std::string>();
}

JsonClient::Response ApiSession::submit(const std::string& channel, const std::string& contract_id,
    const std::string& operation, const Document& args) const
{
    Document body = {{"args", args}, {"contract_id", contract_id}, {"operation", operation}};
    if (!channel.empty())
        body["channel"] = channel;
    return m_client.post("/transactions", body, auth());
}

Document ApiSession::get(const std::string& path) const
{
    auto res = m_client.get(path, auth());
    if (!res.ok())
        res.raise();
    return res.body;
}

Document ApiSession::status(const std::string& tx_id) const
{
    return get("/transactions/" + tx_id);
}

Document ApiSession::wait_terminal(const std::string& tx_id, std::chrono::milliseconds timeout) const
{
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    for (;;)
    {
        Document s = status(tx_id);
        if (s.value("status", "") != "PENDING")
            return s;
        if (std::chrono::steady_clock::now() >= deadline)
            fail(ErrorCode::Timeout, "transaction " + tx_id + " still pending");
        std::this_thread::sleep_for(std::chrono::milliseconds(20));
    }
}

HttpScenarioClient::HttpScenarioClient(
    std::string base_url, std::map<std::string, std::string> passwords, std::chrono::milliseconds timeout)
  : m_base_url(std::move(base_url)), m_passwords(std::move(passwords)), m_timeout(timeout)
{}

ApiSession& HttpScenarioClient::session(const std::string& participant)
{
    auto it = m_sessions.find(participant);
    if (it != m_sessions.end())
        return *it->second;
    auto pw = m_passwords.find(participant);
    if (pw == m_passwords.end())
        fail(ErrorCode::Unauthorized, "no password configured for " + participant);
    auto s = std::make_unique<ApiSession>(m_base_url, participant, pw->second);
    return *m_sessions.emplace(participant, std::move(s)).first->second;
}

std::vector<grain::SubmitResult> HttpScenarioClient::submit_batch(const std::vector<grain::Submission>& batch)
{
    std::vector<grain::SubmitResult> results(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i)
    {
        const auto& s = batch[i];
        auto& r = results[i];
        try
        {
            auto res = session(s.participant).submit(s.channel, s.contract_id, s.operation, s.args);
            if (res.body.is_object() && res.body.contains("tx_id"))
                r.tx_id = res.body["tx_id"].get<std::string>();
            if (r.tx_id.empty())
            {
                r.status = grain::TxStatus::rejected;
                r.error = res.body.value("error", std::string("Io")) + ": " + res.body.value("message", std::string());
            }
        }
        catch (const Error& e)
        {
            r.status = grain::TxStatus::rejected;
            r.error = e.what();
        }
    }
    for (std::size_t i = 0; i < batch.size(); ++i)
    {
        auto& r = results[i];
        if (r.tx_id.empty())
            continue;
        try
        {
            Document s = session(batch[i].participant).wait_terminal(r.tx_id, m_timeout);
            if (s.value("status", "") == "VALID")
            {
                r.status = grain::TxStatus::valid;
            }
            else
            {
                r.status = grain::TxStatus::invalid;
                r.error = s.value("reason", std::string());
            }
        }
        catch (const Error& e)
        {
            r.status = grain::TxStatus::rejected;
            r.error = e.what();
        }
    }
    return results;
}

}  // namespace grainledger::api
