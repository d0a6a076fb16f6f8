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
#include "grainledger/network/audit.hpp"
#include "grainledger/common/error.hpp"
#include "grainledger/ledger/block_store.hpp"
#include "grainledger/ledger/channel_ledger.hpp"
#include "grainledger/ledger/state_history.hpp"
#include "grainledger/network/bootstrap.hpp"
#include "grainledger/network/governance.hpp"
#include "grainledger/network/validator.hpp"

#include <algorithm>

namespace grainledger::network
{
namespace fs = std::filesystem;

namespace
{
struct Loaded
{
    FileAudit audit;
    std::vector<ledger::Block> blocks;  // verified prefix
    std::vector<ledger::Digest> hashes;
};

void set_failure(FileAudit& audit, std::uint64_t height, std::string reason, std::string tx_id = {})
{
    if (audit.failure && audit.failure->height <= height)
        return;
    audit.failure = ledger::AuditFailure{audit.channel_id, height, std::move(tx_id), std::move(reason)};
}

Loaded read_chain(const std::string& node_id, const std::string& channel_id, std::string kind, const fs::path& path)
{
    Loaded out;
    out.audit.node_id = node_id;
    out.audit.channel_id = channel_id;
    out.audit.kind = std::move(kind);
    out.audit.file = path;

    auto contents = ledger::read_block_file(path);
    out.blocks = std::move(contents.blocks);
    if (contents.error)
        set_failure(out.audit, contents.error->first, contents.error->second);

    auto chain = ledger::verify_chain(out.blocks);
    if (chain.failure)
        set_failure(out.audit, chain.failure->height, chain.failure->reason, chain.failure->tx_id);
    out.blocks.resize(chain.blocks_checked);
    for (std::size_t i = 0; i < out.blocks.size(); ++i)
    {
        if (out.blocks[i].header.channel_id != channel_id)
        {
            set_failure(out.audit, i, "block belongs to channel " + out.blocks[i].header.channel_id);
            out.blocks.resize(i);
            break;
        }
    }
    for (const auto& b : out.blocks)
        out.hashes.push_back(b.hash);
    out.audit.blocks = out.blocks.size();
    out.audit.tip = out.blocks.empty() ? ledger::Digest::zero() : out.blocks.back().hash;
    return out;
}

std::string describe(const ledger::TxValidity& v)
{
    return v.valid ? std::string("VALID") : "INVALID(" + v.reason + ")";
}

/// Re-validates the verified prefix and compares validity with the stored
/// flags. Returns the directory held by a governance ledger.
std::optional<Directory> replay(
    Loaded& file, ledger::StateHistory& history, bool governance, Document* snapshot = nullptr)
{
    ledger::ChannelLedger ledger(file.audit.channel_id, std::nullopt);
    const auto check = make_tx_check(history);
    for (const auto& block : file.blocks)
    {
        const std::uint64_t h = block.header.height;
        ledger::CommitOutcome outcome;
        try
        {
            outcome = ledger.commit(block, check);
        }
        catch (const Error& e)
        {
            set_failure(file.audit, h, std::string("replay failed: ") + e.what());
            break;
        }
        if (outcome.validity.size() != block.validity.size())
        {
            set_failure(file.audit, h, "stored validity has " + std::to_string(block.validity.size()) +
                                           " entries for " + std::to_string(outcome.validity.size()) + " transactions");
            break;
        }
        bool same = true;
        for (std::size_t i = 0; i < outcome.validity.size(); ++i)
        {
            if (outcome.validity[i] != block.validity[i])
            {
                set_failure(file.audit, h,
                    "stored " + describe(block.validity[i]) + ", replay " + describe(outcome.validity[i]),
                    block.transactions[i].envelope.tx_id);
                same = false;
                break;
            }
        }
        if (!same)
            break;
        if (governance)
            history.record(block, outcome.validity);
    }
    file.audit.state_hash = ledger.state_hash();
    if (snapshot)
        *snapshot = ledger.snapshot();
    if (!governance)
        return std::nullopt;
    return ledger.read([](const ledger::StateReader& state) { return Directory::from_state(state); });
}

struct NodeFiles
{
    std::vector<Loaded> files;
    std::vector<std::string> problems;
};

NodeFiles audit_node(const fs::path& node_dir)
{
    NodeFiles out;
    NodeSettings settings = load_node_dir(node_dir).settings;
    const std::string& node_id = settings.config.node_id;
    const std::string gov(identity::kGovernanceChannel);

    std::vector<std::string> channels;
    if (fs::is_directory(node_dir / "channels"))
        for (const auto& entry : fs::directory_iterator(node_dir / "channels"))
            if (entry.path().extension() == ".blocks")
                channels.push_back(entry.path().stem().string());
    std::sort(channels.begin(), channels.end());
    std::stable_partition(channels.begin(), channels.end(), [&](const std::string& c) { return c == gov; });
    if (channels.empty() || channels.front() != gov)
    {
        out.problems.push_back(node_id + ": governance ledger is missing");
        return out;
    }

    ledger::StateHistory history;
    std::optional<Directory> directory;
    for (const auto& channel : channels)
    {
        Loaded file = read_chain(node_id, channel, "channel", node_dir / "channels" / (channel + ".blocks"));
        const bool governance = channel == gov;
        if (governance && !file.blocks.empty() && file.blocks.front().hash != settings.governance_genesis)
        {
            set_failure(file.audit, 0, "governance genesis does not match node.json");
            file.blocks.clear();
        }
        if (auto dir = replay(file, history, governance))
            directory = std::move(dir);
        else if (directory && !directory->is_member(settings.config.org, channel))
            out.problems.push_back(node_id + " stores channel " + channel + " but its org is not a member");
        out.files.push_back(std::move(file));
    }

    if (fs::is_directory(node_dir / "orderer"))
    {
        std::vector<fs::path> paths;
        for (const auto& entry : fs::directory_iterator(node_dir / "orderer"))
            if (entry.path().extension() == ".blocks")
                paths.push_back(entry.path());
        std::sort(paths.begin(), paths.end());
        for (const auto& path : paths)
        {
            Loaded file = read_chain(node_id, path.stem().string(), "orderer", path);
            out.files.push_back(std::move(file));
        }
    }
    return out;
}

void cross_check(std::vector<Loaded>& files, std::vector<std::string>& problems)
{
    std::map<std::string, std::vector<Loaded*>> by_channel;
    for (auto& f : files)
        by_channel[f.audit.channel_id].push_back(&f);
    for (auto& [channel, holders] : by_channel)
    {
        for (std::size_t a = 0; a < holders.size(); ++a)
        {
            for (std::size_t b = a + 1; b < holders.size(); ++b)
            {
                const auto& x = holders[a]->hashes;
                const auto& y = holders[b]->hashes;
                const std::size_t common = std::min(x.size(), y.size());
                for (std::size_t h = 0; h < common; ++h)
                {
                    if (x[h] == y[h])
                        continue;
                    problems.push_back(channel + " height " + std::to_string(h) + ": " + holders[a]->audit.node_id +
                                       "/" + holders[a]->audit.kind + " and " + holders[b]->audit.node_id + "/" +
                                       holders[b]->audit.kind + " disagree");
                    set_failure(holders[a]->audit, h, "block differs from another copy");
                    set_failure(holders[b]->audit, h, "block differs from another copy");
                    break;
                }
            }
        }
    }
}

AuditReport finish(std::vector<Loaded> files, std::vector<std::string> problems)
{
    cross_check(files, problems);
    AuditReport report;
    report.problems = std::move(problems);
    for (auto& f : files)
        report.files.push_back(std::move(f.audit));
    return report;
}

}  // namespace

Document FileAudit::to_document() const
{
    Document doc = {
        {"blocks", blocks},
        {"channel_id", channel_id},
        {"file", file.string()},
        {"kind", kind},
        {"node_id", node_id},
        {"ok", !failure.has_value()},
        {"tip", tip.hex()},
    };
    if (kind == "channel")
        doc["state_hash"] = state_hash.hex();
    if (failure)
        doc["failure"] = {{"height", failure->height}, {"reason", failure->reason}, {"tx_id", failure->tx_id}};
    return doc;
}

bool AuditReport::ok() const
{
    return problems.empty() &&
           std::none_of(files.begin(), files.end(), [](const FileAudit& f) { return f.failure.has_value(); });
}

Document AuditReport::to_document() const
{
    Document list = Document::array();
    for (const auto& f : files)
        list.push_back(f.to_document());
    return {{"files", list}, {"ok", ok()}, {"problems", problems}};
}

AuditReport audit_node_dir(const fs::path& node_dir)
{
    auto node = audit_node(node_dir);
    return finish(std::move(node.files), std::move(node.problems));
}

AuditReport audit_network_dir(const fs::path& net_dir)
{
    std::vector<Loaded> files;
    std::vector<std::string> problems;
    for (const auto& dir : network_node_dirs(net_dir))
    {
        auto node = audit_node(dir);
        std::move(node.files.begin(), node.files.end(), std::back_inserter(files));
        problems.insert(problems.end(), node.problems.begin(), node.problems.end());
    }
    return finish(std::move(files), std::move(problems));
}

Document export_state(const fs::path& node_dir, const std::string& channel_id)
{
    NodeSettings settings = load_node_dir(node_dir).settings;
    const std::string& node_id = settings.config.node_id;
    const std::string gov(identity::kGovernanceChannel);
    const fs::path file = node_dir / "channels" / (channel_id + ".blocks");
    if (!fs::exists(file))
        fail(ErrorCode::UnknownChannel, node_id + " holds no ledger for channel " + channel_id);

    ledger::StateHistory history;
    Document snapshot;
    Loaded governance = read_chain(node_id, gov, "channel", node_dir / "channels" / (gov + ".blocks"));
    replay(governance, history, true, channel_id == gov ? &snapshot : nullptr);
    Loaded* target = &governance;
    Loaded other;
    if (channel_id != gov)
    {
        other = read_chain(node_id, channel_id, "channel", file);
        replay(other, history, false, &snapshot);
        target = &other;
    }
    for (const auto* f : {&governance, target})
        if (f->audit.failure)
            fail(ErrorCode::BadRecord, f->audit.channel_id + " fails audit at height " +
                                           std::to_string(f->audit.failure->height) + ": " + f->audit.failure->reason);
    return {
        {"channel_id", channel_id},
        {"height", target->audit.blocks},
        {"state", std::move(snapshot)},
        {"state_hash", target->audit.state_hash.hex()},
        {"tip", target->audit.tip.hex()},
    };
}

}  // namespace grainledger::network
