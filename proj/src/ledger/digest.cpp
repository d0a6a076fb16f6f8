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
#include "grainledger/ledger/digest.hpp"
#include "grainledger/common/error.hpp"

#include <sodium.h>

#include <algorithm>
#include <vector>

namespace grainledger::ledger
{
Digest Digest::from_hex(std::string_view hex)
{
    Bytes raw = grainledger::from_hex(hex);
    if (raw.size() != 32)
        fail(ErrorCode::BadFormat, "digest must be 32 bytes");
    Digest d;
    std::copy(raw.begin(), raw.end(), d.bytes.begin());
    return d;
}

bool Digest::is_zero() const
{
    return std::all_of(bytes.begin(), bytes.end(), [](auto b) { return b == 0; });
}

Digest hash_bytes(std::span<const std::uint8_t> data)
{
    Digest d;
    crypto_hash_sha256(d.bytes.data(), data.data(), data.size());
    return d;
}

Digest hash_bytes(std::string_view data)
{
    return hash_bytes(as_bytes(data));
}

Digest merkle_root(std::span<const Digest> leaves)
{
    if (leaves.empty())
        fail(ErrorCode::EmptyBatch, "merkle root of an empty batch");
    std::vector<Digest> level(leaves.begin(), leaves.end());
    std::array<std::uint8_t, 64> pair{};
    while (level.size() > 1)
    {
        std::vector<Digest> parents;
        parents.reserve((level.size() + 1) / 2);
        for (std::size_t i = 0; i < level.size(); i += 2)
        {
            const Digest& left = level[i];
            const Digest& right = i + 1 < level.size() ? level[i + 1] : level[i];
            std::copy(left.bytes.begin(), left.bytes.end(), pair.begin());
            std::copy(right.bytes.begin(), right.bytes.end(), pair.begin() + 32);
            parents.push_back(hash_bytes(pair));
        }
        level = std::move(parents);
    }
    return level.front();
}

}  // namespace grainledger::ledger
