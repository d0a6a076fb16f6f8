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
#include "grainledger/common/error.hpp"

namespace grainledger
{
std::string_view to_string(ErrorCode code) noexcept
{
    switch (code)
    {
    case ErrorCode::NonCanonicalizable: return "NonCanonicalizable";
    case ErrorCode::EmptyBatch: return "EmptyBatch";
    case ErrorCode::BadHeight: return "BadHeight";
    case ErrorCode::BadPrevHash: return "BadPrevHash";
    case ErrorCode::BadRecord: return "BadRecord";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::Unauthorized: return "Unauthorized";
    case ErrorCode::RevokedIdentity: return "RevokedIdentity";
    case ErrorCode::UnknownParticipant: return "UnknownParticipant";
    case ErrorCode::StaleVersion: return "StaleVersion";
    case ErrorCode::UnknownContract: return "UnknownContract";
    case ErrorCode::UnknownOperation: return "UnknownOperation";
    case ErrorCode::ContractAbort: return "ContractAbort";
    case ErrorCode::AclDenied: return "AclDenied";
    case ErrorCode::DuplicateAsset: return "DuplicateAsset";
    case ErrorCode::AssetNotFound: return "AssetNotFound";
    case ErrorCode::NotChannelMember: return "NotChannelMember";
    case ErrorCode::SimulationFailed: return "SimulationFailed";
    case ErrorCode::PolicyNotMet: return "PolicyNotMet";
    case ErrorCode::EndorsementMismatch: return "EndorsementMismatch";
    case ErrorCode::DuplicateChannel: return "DuplicateChannel";
    case ErrorCode::UnknownChannel: return "UnknownChannel";
    case ErrorCode::DuplicateInvoice: return "DuplicateInvoice";
    case ErrorCode::BadWeights: return "BadWeights";
    case ErrorCode::NoWeighTicket: return "NoWeighTicket";
    case ErrorCode::UnknownAnalyte: return "UnknownAnalyte";
    case ErrorCode::IncompleteIntake: return "IncompleteIntake";
    case ErrorCode::GrainMismatch: return "GrainMismatch";
    case ErrorCode::EmptySilo: return "EmptySilo";
    case ErrorCode::UncommittedTicket: return "UncommittedTicket";
    case ErrorCode::LotNotFound: return "LotNotFound";
    case ErrorCode::DegenerateCurve: return "DegenerateCurve";
    case ErrorCode::BadChecksum: return "BadChecksum";
    case ErrorCode::BadFormat: return "BadFormat";
    case ErrorCode::BadCurve: return "BadCurve";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Timeout: return "Timeout";
    }
    return "Unknown";
}

std::optional<ErrorCode> parse_error_code(std::string_view name) noexcept
{
    for (int i = 0; i <= static_cast<int>(ErrorCode::Timeout); ++i)
    {
        auto code = static_cast<ErrorCode>(i);
        if (to_string(code) == name)
            return code;
    }
    return std::nullopt;
}

}  // namespace grainledger
