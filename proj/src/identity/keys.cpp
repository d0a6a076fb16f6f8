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
#include "grainledger/identity/keys.hpp"
#include "grainledger/common/error.hpp"
#include "grainledger/ledger/digest.hpp"

#include <sodium.h>

namespace grainledger::identity
{
void ensure_sodium()
{
    static const int status = sodium_init();
    if (status < 0)
        fail(ErrorCode::Io, "libsodium initialisation failed");
}

KeyPair KeyPair::generate()
{
    ensure_sodium();
    Bytes seed(crypto_sign_SEEDBYTES);
    randombytes_buf(seed.data(), seed.size());
    return from_seed(seed);
}

KeyPair KeyPair::from_seed(std::span<const std::uint8_t> seed32)
{
    ensure_sodium();
    if (seed32.size() != crypto_sign_SEEDBYTES)
        fail(ErrorCode::InvalidArgument, "ed25519 seed must be 32 bytes");
    KeyPair kp;
    kp.m_public.resize(crypto_sign_PUBLICKEYBYTES);
    kp.m_secret.resize(crypto_sign_SECRETKEYBYTES);
    crypto_sign_seed_keypair(kp.m_public.data(), kp.m_secret.data(), seed32.data());
    return kp;
}

KeyPair KeyPair::insecure_from_seed(std::uint64_t seed, std::string_view label)
{
    auto digest = ledger::hash_bytes(
        "grainledger-insecure-key:" + std::to_string(seed) + ":" + std::string(label));
    return from_seed(digest.bytes);
}

Bytes KeyPair::seed() const
{
    Bytes out(crypto_sign_SEEDBYTES);
    crypto_sign_ed25519_sk_to_seed(out.data(), m_secret.data());
    return out;
}

ledger::Signature KeyPair::sign(std::string_view message) const
{
    ledger::Signature sig{std::string(kEd25519), Bytes(crypto_sign_BYTES)};
    crypto_sign_detached(sig.bytes.data(), nullptr,
        reinterpret_cast<const unsigned char*>(message.data()), message.size(), m_secret.data());
    return sig;
}

bool verify_signature(
    const ledger::Signature& sig, std::string_view message, std::span<const std::uint8_t> public_key)
{
    ensure_sodium();
    if (sig.scheme != kEd25519 || sig.bytes.size() != crypto_sign_BYTES ||
        public_key.size() != crypto_sign_PUBLICKEYBYTES)
        return false;
    return crypto_sign_verify_detached(sig.bytes.data(),
               reinterpret_cast<const unsigned char*>(message.data()), message.size(),
               public_key.data()) == 0;
}

}  // namespace grainledger::identity
