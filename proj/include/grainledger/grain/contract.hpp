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

#include "grainledger/contract/engine.hpp"
#include "grainledger/grain/assets.hpp"

namespace grainledger::grain
{
inline constexpr std::string_view kContractId = "grain";
inline constexpr std::string_view kConfigId = "grain";

/// The business contract deployed on trade channels.
///
/// Operations (args are JSON objects):
///   record_weigh_in        WeighTicket fields (net_kg derived)
///   record_extrinsic       Invoice_Number, Sample_Number, *_Percent measures
///   DiscountsTransaction   Invoice_Number [, mode]   (alias compute_discounts)
///   record_intrinsic       Invoice_Number, Sample_Number, analyte, and either
///                          concentration + strip_lot_id or barcode + raw_response
///   register_silo          silo_id, grain
///   assign_silo            Invoice_Number, silo_id
///   create_outgoing_lot    lot_id, silo_id, outgoing_tickets, base_price_per_kg
///   configure              GrainConfig document
contract::ContractDefinition grain_contract(std::string policy_ref = "default");

/// Config visible in `state`, or the defaults when none was written.
GrainConfig load_config(const ledger::StateReader& state);

}  // namespace grainledger::grain
