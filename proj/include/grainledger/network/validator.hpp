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
#include "grainledger/ledger/state_history.hpp"
#include "grainledger/ledger/validation.hpp"
#include "grainledger/network/governance.hpp"

#include <functional>
#include <optional>
#include <string>

namespace grainledger::network
{
using NodeLookup = std::function<std::optional<NodeRecord>(const std::string& node_id)>;

/// Endorsements count once per registered member org whose node signature
/// verifies. Returns "EndorsementMismatch: ..." when an endorsement covers a
/// different rwset, "PolicyNotMet: ..." when too few orgs endorsed.
std::optional<std::string> check_endorsements(const ledger::TransactionRecord& record,
    const ChannelConfig& channel, const EndorsementPolicy& policy, const NodeLookup& nodes);

/// Governance records that apply to `block`: the history as of the block's
/// governance_height, or for the governance genesis block its own writes.
identity::GovernanceView governance_for(const ledger::Block& block, const ledger::StateHistory& history);

/// Commit-time checks beyond MVCC: submitter identity active and signature
/// valid, ACL, and the channel's endorsement policy. Genesis blocks need an
/// admin submitter instead of endorsements.
ledger::TxCheck make_tx_check(const ledger::StateHistory& governance_history);

/// Envelope signature check for chain audits.
ledger::SignatureCheck make_signature_check(const ledger::StateHistory& governance_history);

}  // namespace grainledger::network
