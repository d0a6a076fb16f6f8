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

#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace grainledger::ledger
{
/// Every VALID write of a channel, indexed by key and commit height, so a
/// value can be read "as of" any earlier height.
class StateHistory
{
public:
    void record(const Block& block, const std::vector<TxValidity>& validity);
    /// Latest value written at or below `height`.
    std::optional<Document> get(const std::string& key, std::uint64_t height) const;
    /// Height of the latest recorded block, if any.
    std::optional<std::uint64_t> tip() const;

private:
    mutable std::shared_mutex m_mutex;
    std::map<std::string, std::vector<std::pair<std::uint64_t, Document>>> m_writes;
    std::optional<std::uint64_t> m_tip;
};

}  // namespace grainledger::ledger
