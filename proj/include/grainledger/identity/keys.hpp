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
#include "grainledger/ledger/types.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace grainledger::identity
{
inline constexpr std::string_view kEd25519 = "ed25519";

/// Initialises libsodium once; throws Error(Io) on failure.
void ensure_sodium();

/// Ed25519 signing key. Signatures are deterministic.
class KeyPair
{
public:
    static KeyPair generate();
    static KeyPair from_seed(std::span<const std::uint8_t> seed32);
    /// Reproducible key derived from (seed, label). Test fixtures only: the
    /// secret is predictable by anyone who knows the seed.
    static KeyPair insecure_from_seed(std::uint64_t seed, std::string_view label);

    const Bytes& public_key() const { return m_public; }
    /// 32-byte seed, the on-disk key file content.
    Bytes seed() const;

    ledger::Signature sign(std::string_view message) const;

private:
    KeyPair() = default;
    Bytes m_public;
    Bytes m_secret;
};

bool verify_signature(
    const ledger::Signature& sig, std::string_view message, std::span<const std::uint8_t> public_key);

}  // namespace grainledger::identity
