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

#include "grainledger/ledger/audit.hpp"
#include "grainledger/ledger/canonical.hpp"
#include "grainledger/ledger/digest.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace grainledger::network
{
using ledger::Document;

/// Result of auditing one block file.
struct FileAudit
{
    std::string node_id;
    std::string channel_id;
    std::string kind;  // "channel" or "orderer"
    std::filesystem::path file;
    std::uint64_t blocks = 0;
    std::optional<ledger::AuditFailure> failure;
    ledger::Digest tip;
    ledger::Digest state_hash;  // channel files only

    Document to_document() const;
};

struct AuditReport
{
    std::vector<FileAudit> files;
    std::vector<std::string> problems;  // cross-file findings

    bool ok() const;
    Document to_document() const;
};

/// Read-only audit of a node directory. Every channel file is framed and
/// parsed, hash-linked, merkle-checked, and replayed from genesis under the
/// governance records of each block; the re-derived validity flags and
/// reasons must equal the stored ones. Orderer files are chain-checked and
/// must agree with the node's committed copy. Channel files of channels the
/// node's org does not belong to are reported.
AuditReport audit_node_dir(const std::filesystem::path& node_dir);

/// Audits every node of `<net-dir>/network.json` and checks that all holders
/// of a channel agree block for block on their common prefix.
AuditReport audit_network_dir(const std::filesystem::path& net_dir);

/// Read-only replay of one channel of a node directory:
/// {channel_id, height, tip, state_hash, state: {key: {value, version}}}.
/// Throws UnknownChannel when the node holds no such channel, BadRecord when
/// its files do not audit clean.
Document export_state(const std::filesystem::path& node_dir, const std::string& channel_id);

}  // namespace grainledger::network
