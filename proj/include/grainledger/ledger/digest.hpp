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

#include "grainledger/common/bytes.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace grainledger::ledger
{
/// SHA-256 output.
struct Digest
{
    std::array<std::uint8_t, 32> bytes{};

    static Digest zero() { return {}; }
    static Digest from_hex(std::string_view hex);
    std::string hex() const { return to_hex(bytes); }
    bool is_zero() const;

    auto operator<=>(const Digest&) const = default;
};

Digest hash_bytes(std::span<const std::uint8_t> data);
Digest hash_bytes(std::string_view data);

/// Binary Merkle tree; an odd node at any level is paired with itself and
/// parent = hash_bytes(left || right). Throws Error(EmptyBatch) on empty input.
Digest merkle_root(std::span<const Digest> leaves);

}  // namespace grainledger::ledger
