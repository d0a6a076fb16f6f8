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
#include "grainledger/ledger/world_state.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace grainledger::ledger
{
/// Per-transaction policy hook (signatures, endorsements, duplicates).
/// Returns a rejection reason, or nullopt when the transaction passes.
using TxCheck = std::function<std::optional<std::string>(const Block&, std::size_t tx_index)>;

/// Applies `block` to `state` in transaction order.
///
/// A transaction is VALID iff it did not abort, its tx_id matches its
/// envelope, `check` accepts it, and every read still matches the current
/// version of its key. INVALID transactions apply no writes. Written keys
/// take version (block height, tx index).
std::vector<TxValidity> validate_and_commit(
    WorldState& state, const Block& block, const TxCheck& check = {});

}  // namespace grainledger::ledger
