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

#include "grainledger/contract/engine.hpp"
#include "grainledger/grain/scenario.hpp"
#include "grainledger/identity/acl.hpp"
#include "grainledger/ledger/channel_ledger.hpp"
#include "grainledger/network/bootstrap.hpp"

#include <filesystem>
#include <string>

namespace grainledger::test
{
using ledger::Document;
using identity::Role;

/// Absolute path of a file under tests/fixtures.
std::filesystem::path fixture(const std::string& name);
std::string read_text(const std::filesystem::path& path);

/// Fresh, empty scratch directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

network::Topology seeded_topology(std::uint64_t seed = 7);

/// One channel with the grain contract deployed, driven without consensus:
/// each call simulates against committed state and commits a block.
class ContractBench
{
public:
    ContractBench();

    /// Simulation only. Throws what the engine throws.
    ledger::ReadWriteSet simulate(const std::string& submitter, Role role, const std::string& op,
        const Document& args) const;
    /// Signed-less record of a simulated call, ready to be put in a block.
    ledger::TransactionRecord record(const std::string& submitter, Role role, const std::string& op,
        const Document& args);
    /// Builds the next block from `records` and commits it.
    ledger::CommitOutcome commit(std::vector<ledger::TransactionRecord> records);
    /// Simulates and commits in a block of its own; throws on contract errors.
    ledger::CommitOutcome run(const std::string& submitter, Role role, const std::string& op, const Document& args);

    /// Committed value, or nullopt.
    std::optional<Document> get(std::string_view registry, std::string_view id) const;
    ledger::ChannelLedger& ledger() { return m_ledger; }
    const ledger::ChannelLedger& ledger() const { return m_ledger; }
    const std::vector<ledger::Block>& blocks() const { return m_blocks; }

private:
    contract::ContractCatalog m_catalog;
    contract::Engine m_engine;
    identity::AccessControlList m_acl;
    ledger::ChannelLedger m_ledger;
    std::vector<ledger::Block> m_blocks;
    std::int64_t m_clock = 1704067200000;
};

/// Runs scenarios on a ContractBench: each batch becomes one block, submitters
/// take the role of the scenario participant they stand for.
class BenchScenarioClient : public grain::ScenarioClient
{
public:
    explicit BenchScenarioClient(ContractBench& bench) : m_bench(bench) {}
    std::vector<grain::SubmitResult> submit_batch(const std::vector<grain::Submission>& batch) override;

private:
    ContractBench& m_bench;
};

}  // namespace grainledger::test
