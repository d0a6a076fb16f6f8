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
#include "bench.hpp"

#include "grainledger/grain/contract.hpp"

#include <fstream>
#include <sstream>

namespace grainledger::test
{
namespace fs = std::filesystem;

fs::path fixture(const std::string& name)
{
    return fs::path(GL_TEST_FIXTURES) / name;
}

std::string read_text(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorCode::Io, "cannot read " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path scratch_dir(const std::string& name)
{
    auto dir = fs::temp_directory_path() / ("gl-test-" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

network::Topology seeded_topology(std::uint64_t seed)
{
    auto t = network::default_topology();
    t.seed = seed;
    return t;
}

namespace
{
Role role_of(const std::string& participant)
{
    if (participant.rfind("p-qa-", 0) == 0)
        return Role::qa_operator;
    if (participant.rfind("p-wh-", 0) == 0)
        return Role::warehouse_operator;
    if (participant.rfind("p-admin", 0) == 0)
        return Role::admin;
    return Role::producer;
}
}  // namespace

ContractBench::ContractBench()
  : m_engine(m_catalog), m_acl(identity::default_acl()), m_ledger("gebn-main")
{
    auto grain = grain::grain_contract("majority");
    m_catalog.add(grain);
    commit({record("p-admin", Role::admin, "deploy", contract::deploy_args(grain))});
}

ledger::ReadWriteSet ContractBench::simulate(
    const std::string& submitter, Role role, const std::string& op, const Document& args) const
{
    const bool lifecycle = op == "deploy";
    contract::Invocation inv{"", m_ledger.channel_id(), submitter, role, m_clock};
    return m_ledger.read([&](const ledger::StateReader& state) {
        return m_engine.invoke(lifecycle ? contract::kLifecycleContract : grain::kContractId, op, args, inv, state,
            m_acl);
    });
}

ledger::TransactionRecord ContractBench::record(
    const std::string& submitter, Role role, const std::string& op, const Document& args)
{
    ledger::TransactionEnvelope env;
    env.channel_id = m_ledger.channel_id();
    env.contract_id = op == "deploy" ? std::string(contract::kLifecycleContract) : std::string(grain::kContractId);
    env.operation = op;
    env.args = args;
    env.submitter = submitter;
    env.timestamp = ++m_clock;
    env.tx_id = env.compute_tx_id().hex();
    contract::Invocation inv{env.tx_id, env.channel_id, submitter, role, env.timestamp};
    ledger::ReadWriteSet rwset;
    try
    {
        rwset = m_ledger.read([&](const ledger::StateReader& state) {
            return m_engine.invoke(env.contract_id, op, args, inv, state, m_acl);
        });
    }
    catch (const Error& e)
    {
        if (e.code() != ErrorCode::ContractAbort)
            throw;
        rwset.abort_reason = e.message();
    }
    return {std::move(env), std::move(rwset), {}};
}

ledger::CommitOutcome ContractBench::commit(std::vector<ledger::TransactionRecord> records)
{
    ledger::Block block;
    block.header.height = m_ledger.height();
    block.header.prev_hash = m_ledger.tip_hash();
    block.header.channel_id = m_ledger.channel_id();
    block.header.created_at = ++m_clock;
    block.transactions = std::move(records);
    block.seal();
    auto outcome = m_ledger.commit(block, {});
    block.validity = outcome.validity;
    m_blocks.push_back(std::move(block));
    return outcome;
}

ledger::CommitOutcome ContractBench::run(
    const std::string& submitter, Role role, const std::string& op, const Document& args)
{
    auto rec = record(submitter, role, op, args);
    if (rec.rwset.aborted())
    {
        auto code = parse_error_code(rec.rwset.abort_reason.substr(0, rec.rwset.abort_reason.find(':')));
        throw Error(code.value_or(ErrorCode::ContractAbort), rec.rwset.abort_reason);
    }
    return commit({std::move(rec)});
}

std::optional<Document> ContractBench::get(std::string_view registry, std::string_view id) const
{
    return m_ledger.read([&](const ledger::StateReader& state) -> std::optional<Document> {
        const auto* e = state.find(grain::state_key(registry, id));
        if (!e)
            return std::nullopt;
        return std::optional<Document>(std::in_place, e->value);
    });
}

std::vector<grain::SubmitResult> BenchScenarioClient::submit_batch(const std::vector<grain::Submission>& batch)
{
    std::vector<ledger::TransactionRecord> records;
    std::vector<grain::SubmitResult> results(batch.size());
    for (const auto& s : batch)
        records.push_back(m_bench.record(s.participant, role_of(s.participant), s.operation, s.args));
    for (std::size_t i = 0; i < records.size(); ++i)
    {
        results[i].tx_id = records[i].envelope.tx_id;
        results[i].error = records[i].rwset.abort_reason;
    }
    auto outcome = m_bench.commit(std::move(records));
    for (std::size_t i = 0; i < results.size(); ++i)
    {
        results[i].status = outcome.validity[i].valid ? grain::TxStatus::valid : grain::TxStatus::invalid;
        if (!outcome.validity[i].valid && results[i].error.empty())
            results[i].error = outcome.validity[i].reason;
    }
    return results;
}

}  // namespace grainledger::test
