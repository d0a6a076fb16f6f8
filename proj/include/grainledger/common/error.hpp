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

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace grainledger
{
enum class ErrorCode
{
    // ledger-core
    NonCanonicalizable,
    EmptyBatch,
    BadHeight,
    BadPrevHash,
    BadRecord,
    // identity-access
    DuplicateId,
    Unauthorized,
    RevokedIdentity,
    UnknownParticipant,
    // contract-engine
    StaleVersion,
    UnknownContract,
    UnknownOperation,
    ContractAbort,
    AclDenied,
    DuplicateAsset,
    AssetNotFound,
    // consensus-network
    NotChannelMember,
    SimulationFailed,
    PolicyNotMet,
    EndorsementMismatch,
    DuplicateChannel,
    UnknownChannel,
    // grain-network
    DuplicateInvoice,
    BadWeights,
    NoWeighTicket,
    UnknownAnalyte,
    IncompleteIntake,
    GrainMismatch,
    EmptySilo,
    UncommittedTicket,
    LotNotFound,
    // qa-devices
    DegenerateCurve,
    BadChecksum,
    BadFormat,
    BadCurve,
    OutOfRange,
    // general
    InvalidArgument,
    BadConfig,
    Io,
    Timeout,
};

std::string_view to_string(ErrorCode code) noexcept;
/// Inverse of to_string.
std::optional<ErrorCode> parse_error_code(std::string_view name) noexcept;

class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        m_code(code),
        m_message(message)
    {}

    ErrorCode code() const noexcept { return m_code; }
    /// Message without the code prefix.
    const std::string& message() const noexcept { return m_message; }

private:
    ErrorCode m_code;
    std::string m_message;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message)
{
    throw Error(code, message);
}

}  // namespace grainledger
