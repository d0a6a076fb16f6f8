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

#include "grainledger/ledger/types.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>

namespace grainledger::ledger
{
struct AuditFailure
{
    std::string channel_id;
    std::uint64_t height = 0;
    std::string tx_id;  // empty for block-level failures
    std::string reason;
};

struct ChainReport
{
    std::uint64_t blocks_checked = 0;
    std::optional<AuditFailure> failure;

    bool intact() const { return !failure.has_value(); }
    std::string summary() const;
};

/// Returns false when the envelope signature does not verify for its submitter.
using SignatureCheck = std::function<bool(const Block&, const TransactionEnvelope&)>;

/// Recomputes every block digest, prev_hash link, merkle root and tx_id, and
/// runs `signatures` over every envelope. Reports the first failing height.
ChainReport verify_chain(std::span<const Block> chain, const SignatureCheck& signatures = {});

}  // namespace grainledger::ledger
